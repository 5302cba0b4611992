import math

import pytest

import molscope


def test_counts():
    assert molscope.count_mols(4)["value"] == 576
    assert molscope.count_mols(3, 2) == {"value": 72, "exact": True}
    assert molscope.count_sudoku(4)["value"] == 288
    z3 = molscope.cayley_table([3])
    assert molscope.count_mates(z3)["value"] == 6
    assert molscope.count_transversals(z3)["value"] == 3


def test_threshold_and_threads():
    r = molscope.count_mols(5, threshold=1000, threads=2)
    assert r == {"value": 1000, "exact": False}
    assert molscope.count_mols(5, threads=3)["value"] == 161280


def test_kronecker_product():
    z3 = molscope.cayley_table([3])
    assert molscope.kronecker(z3, z3) == molscope.cayley_table([3, 3])
    assert molscope.count_partitions(molscope.kronecker(z3, z3), threshold=46656)["value"] == 46656


def test_validation():
    assert molscope.is_latin([[0, 1], [1, 0]])
    assert not molscope.is_latin([[0, 1], [0, 1]])
    assert molscope.orthogonal([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [[0, 1, 2], [2, 0, 1], [1, 2, 0]])
    with pytest.raises(molscope.Error):
        molscope.count_mates([[0, 0], [1, 1]])


def test_bounds():
    assert molscope.extension_bound_mols(3, 1) >= math.log(6)
    assert molscope.integral_I(10, 3) <= molscope.closed_form_estimate(10, 3)
    assert 0 <= molscope.c_beta(2.0) <= 1
    rep = molscope.mols_count_bound(5, 1)
    assert rep["values"]["summed_quadrature"] >= math.log(161280)
    assert all(rep["checks"].values())
    assert molscope.sudoku_extension_bound(4)["values"]["general_bound"] >= math.log(288)
    with pytest.raises(molscope.Error):
        molscope.integral_I(1, 2)


def test_cli():
    code, out, _ = molscope.run_cli(["count", "mols", "--n", "3", "--format", "structured"])
    assert code == 0
    assert '"value": "12"' in out
    assert molscope.run_cli(["count", "mols", "--n", "9"])[0] == 3
