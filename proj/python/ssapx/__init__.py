"""Near-linear weak approximation for Subset Sum and an FPTAS for Partition.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (
    __version__,
    approx_sumset_many,
    approx_sumset_pair,
    dense_sumset,
    exact_subset_sums,
    generate_instance,
    grid_approximation,
    mod_reduce,
    solve_partition,
    solve_subset_sum,
    sparse_sumset,
    sumset_size_at_least,
)

__all__ = [
    "__version__",
    "approx_sumset_many",
    "approx_sumset_pair",
    "dense_sumset",
    "exact_subset_sums",
    "generate_instance",
    "grid_approximation",
    "mod_reduce",
    "solve_partition",
    "solve_subset_sum",
    "sparse_sumset",
    "sumset_size_at_least",
]
