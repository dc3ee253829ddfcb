import numpy as np
import pytest

from opmeans.functions import FIXED_NAMES, get_function
from opmeans.kwong import (
    check_audenaert_equivalence,
    check_theorem31,
    check_theorem32,
    classify_kwong,
    classify_operator_convex,
    classify_operator_monotone,
    kwong_matrix,
    loewner_matrix,
    reverify_witness,
    richardson_at_zero,
    trial_points,
)


def test_kwong_matrix_examples():
    assert np.allclose(kwong_matrix("identity", [1.0, 2.0]), np.ones((2, 2)))
    K = kwong_matrix("square", [1.0, 2.0])
    assert np.allclose(K, [[1.0, 5 / 3], [5 / 3, 2.0]])
    assert np.linalg.det(K) == pytest.approx(-7 / 9)
    x = np.array([0.5, 1.5, 4.0])
    assert np.allclose(kwong_matrix("inverse", x), np.outer(1 / x, 1 / x))


def test_loewner_matrix_examples():
    assert np.allclose(loewner_matrix("square", [1.0, 2.0]), [[2.0, 3.0], [3.0, 4.0]])
    L = loewner_matrix("sqrt", [1.0, 4.0])
    assert np.allclose(L, [[0.5, 1 / 3], [1 / 3, 0.25]])
    assert np.linalg.det(L) == pytest.approx(1 / 72)


def test_loewner_without_closed_derivative():
    f = get_function("sqrt")
    bare = type(f)("bare_sqrt", f.func)
    x = [0.3, 1.0, 2.5]
    assert np.allclose(loewner_matrix(bare, x), loewner_matrix(f, x), rtol=1e-8)


def test_duplicate_points_rejected():
    with pytest.raises(ValueError):
        kwong_matrix("sqrt", [1.0, 1.0])
    with pytest.raises(ValueError):
        kwong_matrix("sqrt", [-1.0, 1.0])


def test_trial_points_deterministic():
    assert np.array_equal(trial_points(3, 5), trial_points(3, 5))
    assert not np.array_equal(trial_points(3, 5), trial_points(4, 5))


@pytest.mark.parametrize("name", ["identity", "sqrt", "inverse", "sinh_inv", "log1p", "const1"])
def test_kwong_consistent(name):
    assert classify_kwong(name).verdict == "consistent"


@pytest.mark.parametrize("p", np.linspace(-1, 1, 9).tolist())
def test_kwong_powers_consistent(p):
    assert classify_kwong(f"power:{p!r}").verdict == "consistent"


@pytest.mark.parametrize("name", ["square", "exp", "power:1.5"])
def test_kwong_refuted_with_reproducible_witness(name):
    v = classify_kwong(name)
    assert v.refuted
    assert reverify_witness(name, v) == v.witness.min_eigenvalue


@pytest.mark.parametrize("name,expected", [
    ("sqrt", "consistent"), ("identity", "consistent"), ("power:0.3", "consistent"),
    ("log1p", "consistent"), ("square", "refuted"), ("exp", "refuted"),
])
def test_operator_monotone(name, expected):
    assert classify_operator_monotone(name).verdict == expected


def test_operator_monotone_decreasing():
    assert classify_operator_monotone("inverse", decreasing=True).verdict == "consistent"
    assert classify_operator_monotone("sqrt", decreasing=True).refuted


def test_verdict_dict_shape():
    d = classify_kwong("square").as_dict()
    assert d["verdict"] == "refuted" and "witness" in d
    assert set(d["witness"]) == {"trial", "points", "matrix", "min_eigenvalue"}


@pytest.mark.parametrize("name", list(FIXED_NAMES) + ["power:1.5", "power:-0.5", "power:2"])
def test_audenaert_coherent(name):
    assert check_audenaert_equivalence(name).coherent


def test_audenaert_inverse_transform_is_constant():
    r = check_audenaert_equivalence("inverse")
    assert not r.kwong.refuted and not r.transform_refuted


def test_theorem31_sinh_inv():
    r = check_theorem31("sinh_inv", 0.5)
    assert r["failures"] == []
    assert r["parts"]["ii"]["status"] == "ok" and r["parts"]["iii"]["status"] == "ok"


def test_theorem31_identity_quarter():
    r = check_theorem31("identity", 0.25)
    assert r["parts"]["ii"]["conclusion"]["verdict"] == "consistent"


def test_theorem32_square():
    for p in (1.0, 0.5, -0.5):
        assert check_theorem32("square", p)["status"] == "ok"


def test_theorem32_inverse_diagnosis():
    # 1/x is non-negative and operator convex but has no finite value at 0,
    # and 1/x^2 is not a Kwong function
    r = check_theorem32("inverse", 1.0)
    assert r["premise"] and not r["g0_finite"]
    assert r["verdict"].refuted and r["status"] == "FAILURE"


def test_richardson():
    g0, finite = richardson_at_zero(get_function("square"))
    assert finite and abs(g0) < 1e-12
    assert not richardson_at_zero(get_function("inverse"))[1]


@pytest.mark.parametrize("name,expected", [
    ("square", "consistent"), ("identity", "consistent"), ("inverse", "consistent"),
    ("representing:arith:0.3", "consistent"), ("power:3", "refuted"),
])
def test_operator_convexity(name, expected):
    assert classify_operator_convex(name, dim=2).verdict == expected
