import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opmeans.linalg import PositivityError, loewner_leq, matrix_inv, matrix_power, random_hpd
from opmeans.means import (
    RepresentingFunctionError,
    SandwichInterval,
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    kubo_ando_mean,
    power_mean_function,
    sandwich_interval,
)
from opmeans.functions import ScalarFunction

seeds = st.integers(0, 2**32 - 1)
weights = st.floats(0.0, 1.0)


def _pair(dim, seed, m=0.5, M=5.0):
    rng = np.random.default_rng(seed)
    return random_hpd(dim, m, M, rng), random_hpd(dim, m, M, rng)


def test_scalar_values():
    assert arithmetic_mean(1.0, 3.0, 0.5).item() == 2.0
    assert harmonic_mean(1.0, 3.0, 0.5).item() == pytest.approx(1.5)
    assert geometric_mean(1.0, 3.0, 0.5).item() == pytest.approx(np.sqrt(3.0))


def test_endpoint_weights():
    A, B = _pair(3, 0)
    for mean in (arithmetic_mean, geometric_mean, harmonic_mean):
        assert np.allclose(mean(A, B, 0.0), A, atol=1e-12)
        assert np.allclose(mean(A, B, 1.0), B, atol=1e-12)
        assert np.allclose(mean(A, A, 0.37), A, atol=1e-12)


def test_geometric_commuting_case():
    G = geometric_mean(np.diag([1.0, 4.0]), np.diag([4.0, 16.0]), 0.5)
    assert np.allclose(G, np.diag([2.0, 8.0]))
    assert np.allclose(geometric_mean(np.eye(2), np.diag([4.0, 16.0])), np.diag([2.0, 4.0]))


def test_geometric_with_identity_is_power():
    _, B = _pair(4, 1)
    assert np.allclose(geometric_mean(np.eye(4), B, 0.3), matrix_power(B, 0.3), atol=1e-12)


def test_geometric_riccati_characterization():
    # A # B is the unique positive solution of X A^{-1} X = B
    A, B = _pair(4, 2)
    G = geometric_mean(A, B)
    assert np.allclose(G @ matrix_inv(A) @ G, B, atol=1e-10)


def test_kubo_ando_reproduces_closed_forms():
    A, B = _pair(3, 3)
    a = 0.4
    assert np.allclose(kubo_ando_mean(A, B, power_mean_function("arith", a)), arithmetic_mean(A, B, a))
    assert np.allclose(kubo_ando_mean(A, B, power_mean_function("geom", a)), geometric_mean(A, B, a))
    assert np.allclose(kubo_ando_mean(A, B, power_mean_function("harm", a)), harmonic_mean(A, B, a))


def test_kubo_ando_rejects_unnormalized():
    f = ScalarFunction("two_x", lambda x: 2 * x)
    with pytest.raises(RepresentingFunctionError):
        kubo_ando_mean(np.eye(2), np.eye(2), f)


def test_non_positive_operand():
    with pytest.raises(PositivityError):
        geometric_mean(np.eye(2), np.diag([1.0, -1.0]))
    with pytest.raises(PositivityError):
        harmonic_mean(np.diag([0.0, 1.0]), np.eye(2), 0.5)


def test_sandwich_examples():
    iv = sandwich_interval(np.eye(2), np.diag([2.0, 3.0]))
    assert (iv.s, iv.t) == pytest.approx((2.0, 3.0))
    A, _ = _pair(3, 4)
    iv = sandwich_interval(A, 2.5 * A)
    assert (iv.s, iv.t) == pytest.approx((2.5, 2.5))
    assert SandwichInterval.from_spectrum(2.0, 8.0) == SandwichInterval(0.25, 4.0)
    with pytest.raises(ValueError):
        SandwichInterval(2.0, 1.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), seeds, weights)
def test_young_chain_property(dim, seed, a):
    A, B = _pair(dim, seed)
    ar, ge, ha = arithmetic_mean(A, B, a), geometric_mean(A, B, a), harmonic_mean(A, B, a)
    assert loewner_leq(ge, ar).ok and loewner_leq(ha, ge).ok


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), seeds, weights)
def test_geometric_symmetry_and_inverse_property(dim, seed, a):
    A, B = _pair(dim, seed)
    G = geometric_mean(A, B, a)
    assert np.allclose(G, geometric_mean(B, A, 1 - a), atol=1e-9 * np.linalg.norm(G))
    # (A #_a B)^{-1} = A^{-1} #_a B^{-1}
    Gi = geometric_mean(matrix_inv(A), matrix_inv(B), a)
    assert np.allclose(matrix_inv(G), Gi, atol=1e-9 * max(1, np.linalg.norm(Gi)))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), seeds)
def test_sandwich_holds_property(dim, seed):
    A, B = _pair(dim, seed)
    iv = sandwich_interval(A, B)
    assert loewner_leq(iv.s * A, B).ok and loewner_leq(B, iv.t * A).ok
