"""Exact enumeration and extension bounds for Latin squares and MOLS."""

from ._core import (
    Error,
    c_beta,
    cayley_table,
    closed_form_estimate,
    count_mates,
    count_mols,
    count_partitions,
    count_sudoku,
    count_systems,
    count_transversals,
    extension_bound_mols,
    integral_I,
    is_latin,
    kronecker,
    mols_count_bound,
    orthogonal,
    run_cli,
    sudoku_extension_bound,
)

__all__ = [
    "Error",
    "c_beta",
    "cayley_table",
    "closed_form_estimate",
    "count_mates",
    "count_mols",
    "count_partitions",
    "count_sudoku",
    "count_systems",
    "count_transversals",
    "extension_bound_mols",
    "integral_I",
    "is_latin",
    "kronecker",
    "mols_count_bound",
    "orthogonal",
    "run_cli",
    "sudoku_extension_bound",
]
