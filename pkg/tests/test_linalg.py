import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opmeans.linalg import (
    DimensionError,
    DomainError,
    PositivityError,
    ToleranceConfig,
    apply_scalar_function,
    as_hermitian,
    eig_hermitian,
    fro,
    is_positive_semidefinite,
    ky_fan_norm,
    ky_fan_norms,
    loewner_leq,
    matrix_from_json,
    matrix_inv,
    matrix_power,
    matrix_sqrt,
    matrix_to_json,
    random_hermitian,
    random_hpd,
    random_unitary,
    schatten_norm,
    singular_values,
)
from opmeans.functions import get_function

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 8)


def _recon_err(A, dec):
    return fro(dec.reconstruct() - A) / max(1.0, fro(A))


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
@pytest.mark.parametrize("dim", [1, 2, 5, 8])
def test_eig_reconstructs(method, dim):
    A = random_hermitian(dim, seed=dim)
    dec = eig_hermitian(A, method=method)
    assert _recon_err(A, dec) <= 1e-10
    U = dec.unitary
    assert np.linalg.norm(U.conj().T @ U - np.eye(dim)) <= 1e-10
    assert np.all(np.diff(dec.eigenvalues) >= 0)


def test_jacobi_agrees_with_lapack():
    # independent route: cyclic Jacobi rotations vs LAPACK
    for seed in range(20):
        A = random_hermitian(6, seed=seed)
        a = eig_hermitian(A, method="jacobi").eigenvalues
        b = eig_hermitian(A, method="lapack").eigenvalues
        assert np.allclose(a, b, atol=1e-11 * max(1, fro(A)))


def test_real_symmetric_stays_real():
    A = np.array([[2.0, 1.0], [1.0, 3.0]])
    for method in ("lapack", "jacobi"):
        dec = eig_hermitian(A, method=method)
        assert not np.iscomplexobj(dec.unitary)


def test_scalar_promoted_to_1x1():
    dec = eig_hermitian(3.0)
    assert dec.eigenvalues.tolist() == [3.0]


def test_non_hermitian_rejected():
    with pytest.raises(ValueError):
        as_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DimensionError):
        as_hermitian(np.ones((2, 3)))


def test_nan_rejected():
    with pytest.raises(ValueError):
        as_hermitian(np.array([[np.nan]]))


def test_functional_calculus_commuting_case():
    A = np.diag([1.0, 4.0, 9.0])
    assert np.allclose(matrix_sqrt(A), np.diag([1.0, 2.0, 3.0]))
    assert np.allclose(apply_scalar_function(A, get_function("log1p")), np.diag(np.log1p([1, 4, 9])))


def test_positive_domain_enforced():
    A = np.diag([-1.0, 2.0])
    with pytest.raises(DomainError):
        apply_scalar_function(A, get_function("sqrt"))
    with pytest.raises(PositivityError):
        matrix_sqrt(A)


def test_inverse_and_power():
    A = random_hpd(4, 0.5, 3.0, seed=1)
    assert np.allclose(matrix_inv(A) @ A, np.eye(4), atol=1e-12)
    assert np.allclose(matrix_power(A, 2), A @ A, atol=1e-12)


def test_psd_tolerance_is_relative():
    tol = ToleranceConfig(eps_psd=1e-9)
    big = np.diag([1e6, -1e-5])
    assert is_positive_semidefinite(big, tol).ok
    assert not is_positive_semidefinite(np.diag([1.0, -1e-5]), tol).ok


def test_loewner_leq_slack():
    r = loewner_leq(np.eye(2), 2 * np.eye(2))
    assert r.ok and r.slack == pytest.approx(1.0)
    assert not loewner_leq(2 * np.eye(2), np.eye(2)).ok


def test_tolerance_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(eps_psd=0)


def test_random_hpd_pins_spectrum():
    A = random_hpd(5, 0.25, 7.0, seed=3)
    lam = np.linalg.eigvalsh(A)
    assert lam[0] == pytest.approx(0.25) and lam[-1] == pytest.approx(7.0)
    assert random_hpd(1, 2.0, 2.0, seed=0).tolist() == [[2.0]]


def test_norms_on_diagonal():
    A = np.diag([3.0, -1.0, 2.0])
    assert ky_fan_norms(A).tolist() == [3.0, 5.0, 6.0]
    assert ky_fan_norm(A, 2) == 5.0
    assert schatten_norm(A, 1) == 6.0
    assert schatten_norm(A, 2) == pytest.approx(np.sqrt(14))
    assert schatten_norm(A, np.inf) == 3.0


def test_singular_values_match_numpy():
    A = random_hermitian(5, seed=4)
    assert np.allclose(np.sort(singular_values(A))[::-1], np.linalg.svd(A, compute_uv=False))


def test_json_round_trip_is_exact():
    A = random_hermitian(3, seed=2)
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(A))))
    assert np.array_equal(A, back)
    real = matrix_to_json(np.eye(2))
    assert "im" not in real


def test_json_shape_mismatch():
    with pytest.raises(ValueError):
        matrix_from_json({"dim": 3, "re": [[1.0]]})


@settings(max_examples=60, deadline=None)
@given(dims, seeds)
def test_reconstruction_property(dim, seed):
    A = random_hermitian(dim, seed=seed, scale=10.0)
    assert _recon_err(A, eig_hermitian(A)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(dims, seeds, st.floats(0.01, 1.0), st.floats(1.0, 100.0))
def test_sqrt_round_trip_property(dim, seed, m, M):
    A = random_hpd(dim, m, M, seed=seed)
    R = matrix_sqrt(A)
    assert fro(R @ R - A) <= 1e-10 * max(1.0, fro(A))


@settings(max_examples=60, deadline=None)
@given(dims, seeds)
def test_ky_fan_unitary_invariance_property(dim, seed):
    rng = np.random.default_rng(seed)
    A = random_hermitian(dim, seed=rng)
    U = random_unitary(dim, seed=rng)
    B = U @ A @ U.conj().T
    assert np.allclose(ky_fan_norms(A), ky_fan_norms(B), atol=1e-10 * max(1.0, fro(A)))


@settings(max_examples=60, deadline=None)
@given(dims, seeds)
def test_congruence_preserves_order_property(dim, seed):
    rng = np.random.default_rng(seed)
    A = random_hpd(dim, 1.0, 2.0, seed=rng)
    B = A + random_hpd(dim, 0.1, 1.0, seed=rng)
    X = random_hermitian(dim, seed=rng)
    assert loewner_leq(X.conj().T @ A @ X, X.conj().T @ B @ X).ok
