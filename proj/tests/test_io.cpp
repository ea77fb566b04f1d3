#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "ssapx/instance_io.hpp"

using namespace ssapx;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "ssapx_io_test_" + std::to_string(counter++) + ".tmp";
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("instance parsing: both headers") {
    TempFile ss("3 10\n3 5 8\n");
    InstanceFile a = read_instance(ss.path);
    CHECK(a.items == std::vector<Value>{3, 5, 8});
    REQUIRE(a.target.has_value());
    CHECK(*a.target == 10);

    TempFile part("4\n1 2 3 4\n");
    InstanceFile b = read_instance(part.path);
    CHECK_FALSE(b.target.has_value());
    CHECK(b.items.size() == 4);
}

TEST_CASE("instance parsing: malformed inputs name the line") {
    TempFile bad_header("x 10\n1\n");
    CHECK_THROWS_WITH_AS(read_instance(bad_header.path),
                         doctest::Contains(":1:"), std::runtime_error);

    TempFile bad_item("2 10\n3 frog\n");
    CHECK_THROWS_WITH_AS(read_instance(bad_item.path),
                         doctest::Contains(":2:"), std::runtime_error);

    TempFile missing("3 10\n1 2\n");
    CHECK_THROWS(read_instance(missing.path));

    TempFile zero_item("1 10\n0\n");
    CHECK_THROWS(read_instance(zero_item.path));
}

TEST_CASE("instance write/read round trip") {
    TempFile t("");
    write_instance(t.path, {7, 9, 21}, Value{30});
    InstanceFile f = read_instance(t.path);
    CHECK(f.items == std::vector<Value>{7, 9, 21});
    CHECK(*f.target == 30);

    write_instance(t.path, {5, 5}, std::nullopt);
    InstanceFile p = read_instance(t.path);
    CHECK_FALSE(p.target.has_value());
}

TEST_CASE("result document round trip, text and json") {
    ResultDocument d;
    d.mode = "partition";
    d.n = 4;
    d.target = 5;
    d.eps = 0.1;
    d.seed = 42;
    d.value = 5;
    d.witness = {0, 3};
    d.delta_cert = 2;
    d.guarantee_upper = 5;
    d.guarantee_lower_coeff = 0.9;
    d.certified = true;
    d.complement_sum = 5;

    {
        TempFile t(d.to_text());
        ResultDocument back = ResultDocument::parse(t.path);
        CHECK(back.mode == d.mode);
        CHECK(back.value == d.value);
        CHECK(back.witness == d.witness);
        CHECK(back.target == d.target);
        CHECK(back.certified == d.certified);
        CHECK(back.complement_sum == d.complement_sum);
    }
    {
        TempFile t(d.to_json());
        ResultDocument back = ResultDocument::parse(t.path);
        CHECK(back.mode == d.mode);
        CHECK(back.value == d.value);
        CHECK(back.witness == d.witness);
        CHECK(back.eps == doctest::Approx(d.eps));
    }
}
