"""
Finite-dimensional Hermitian linear algebra.

Everything downstream (means, bounds, Kwong matrices, the verification
harness) goes through this module: spectral decomposition, functional
calculus f(A) = U diag(f(lambda)) U*, Loewner-order tests with a relative
tolerance, norms of Hermitian operands, and seeded random ensembles.

Matrices are plain ``numpy.ndarray`` objects. Functions that produce a
Hermitian result symmetrize it exactly, so ``A == A.conj().T`` holds bitwise
on every returned matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np


class LinalgError(ValueError):
    """Base class for errors raised by the spectral core."""


class DimensionError(LinalgError):
    pass


class DomainError(LinalgError):
    """An eigenvalue falls outside the domain of the applied function."""

    def __init__(self, message, eigenvalue):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class PositivityError(LinalgError):
    """A matrix required to be strictly positive is not."""

    def __init__(self, message, min_eigenvalue):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class ConvergenceError(RuntimeError):
    """The Jacobi eigensolver exhausted its sweep budget."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances used by positivity tests and decomposition checks.

    ``eps_psd`` is relative: a matrix passes the PSD test when its smallest
    eigenvalue is at least ``-eps_psd * max(1, ||A||_F)``.
    """

    eps_psd: float = 1e-9
    eps_recon: float = 1e-10
    eps_orth: float = 1e-10

    def __post_init__(self):
        for name in ("eps_psd", "eps_recon", "eps_orth"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    unitary: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self, values=None):
        """Return ``U diag(values) U*``; ``values`` defaults to the eigenvalues."""
        lam = self.eigenvalues if values is None else np.asarray(values)
        U = self.unitary
        return hermitize((U * lam) @ U.conj().T)


class PSDResult(NamedTuple):
    ok: bool
    min_eigenvalue: float


class LoewnerResult(NamedTuple):
    ok: bool
    slack: float


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def hermitize(A):
    """Exact Hermitian part ``(A + A*) / 2``; real input stays real."""
    A = np.asarray(A)
    return 0.5 * (A + A.conj().T)


def as_hermitian(A, atol=1e-12):
    """Validate a square, numerically Hermitian matrix and symmetrize it.

    Scalars and 1-d single values are promoted to 1x1 matrices. The
    Hermitian check is relative to ``max(1, ||A||_F)``.
    """
    A = np.asarray(A)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.issubdtype(A.dtype, np.number):
        raise TypeError(f"matrix entries must be numeric, got dtype {A.dtype}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    if np.iscomplexobj(A):
        A = A.astype(np.complex128)
        if not np.any(A.imag):
            A = A.real.copy()
    else:
        A = A.astype(np.float64)
    asym = np.linalg.norm(A - A.conj().T)
    if asym > atol * max(1.0, np.linalg.norm(A)):
        raise LinalgError(f"matrix is not Hermitian (||A - A*||_F = {asym:.3e})")
    return hermitize(A)


def _same_dim(A, B):
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch: {A.shape} vs {B.shape}")


def fro(A):
    return float(np.linalg.norm(A))


# ---------------------------------------------------------------------------
# eigensolvers
# ---------------------------------------------------------------------------

def _jacobi_eigh(A, max_sweeps=100):
    """Cyclic Jacobi rotations for a complex Hermitian matrix.

    Each rotation first removes the phase of the pivot ``a_pq`` and then
    applies the classical real Jacobi rotation, so it works unchanged for
    real symmetric input.
    """
    A = np.array(A, dtype=np.complex128)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    scale = max(np.linalg.norm(A), np.finfo(float).tiny)
    target = 1e-15 * scale

    def off(M):
        return np.linalg.norm(M - np.diag(np.diag(M)))

    residual = off(A)
    for _ in range(max_sweeps):
        if residual <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                theta = (A[q, q].real - A[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(theta) + np.hypot(theta, 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                G = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ G
        residual = off(A)
    else:
        if residual > target:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal residual {residual:.3e})",
                residual,
            )
    return np.diag(A).real.copy(), V


def eig_hermitian(A, method="lapack"):
    """Spectral decomposition of a Hermitian matrix, eigenvalues ascending.

    Parameters
    ----------
    A : array_like
        Hermitian matrix (validated with :func:`as_hermitian`).
    method : {"lapack", "jacobi"}
        ``"lapack"`` uses ``numpy.linalg.eigh``; ``"jacobi"`` uses the
        built-in cyclic Jacobi solver, which raises
        :class:`ConvergenceError` carrying the off-diagonal residual if its
        sweep budget runs out.

    Returns
    -------
    SpectralDecomposition
    """
    A = as_hermitian(A)
    if method == "lapack":
        try:
            lam, U = np.linalg.eigh(A)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"eigh failed: {exc}", float("nan")) from exc
    elif method == "jacobi":
        lam, U = _jacobi_eigh(A)
        order = np.argsort(lam, kind="stable")
        lam, U = lam[order], U[:, order]
        if not np.iscomplexobj(A):
            # phases of real symmetric eigenvectors can be removed column-wise
            piv = U[np.argmax(np.abs(U), axis=0), np.arange(U.shape[1])]
            U = (U * (np.abs(piv) / piv)).real
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return SpectralDecomposition(np.asarray(lam, dtype=float), U)


def eigvalsh(A):
    return np.linalg.eigvalsh(as_hermitian(A))


# ---------------------------------------------------------------------------
# functional calculus
# ---------------------------------------------------------------------------

def _domain_of(f):
    return getattr(f, "domain", None)


def apply_scalar_function(A, f: Callable, decomposition=None):
    """Evaluate ``f(A) = U diag(f(lambda_i)) U*``.

    ``f`` is any vectorized callable. Objects with a ``domain`` attribute
    equal to ``"positive"`` (catalog functions) are checked first: every
    eigenvalue must be strictly positive, otherwise :class:`DomainError`
    names the offending eigenvalue.
    """
    dec = decomposition if decomposition is not None else eig_hermitian(A)
    lam = dec.eigenvalues
    if _domain_of(f) == "positive" and lam[0] <= 0:
        raise DomainError(
            f"eigenvalue {lam[0]!r} outside the domain (0, inf) of {getattr(f, 'name', f)}",
            float(lam[0]),
        )
    values = np.asarray(f(lam), dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise DomainError(f"f is not finite at eigenvalue {lam[i]!r}", float(lam[i]))
    return dec.reconstruct(values)


def _positive_decomposition(A, what="matrix"):
    dec = eig_hermitian(A)
    if dec.eigenvalues[0] <= 0:
        lo = float(dec.eigenvalues[0])
        raise PositivityError(f"{what} is not strictly positive (min eigenvalue {lo!r})", lo)
    return dec


def matrix_power(A, p):
    """``A**p`` for strictly positive ``A`` and real ``p``."""
    dec = _positive_decomposition(A)
    return dec.reconstruct(dec.eigenvalues ** p)


def matrix_sqrt(A):
    dec = _positive_decomposition(A)
    return dec.reconstruct(np.sqrt(dec.eigenvalues))


def matrix_inv_sqrt(A):
    dec = _positive_decomposition(A)
    return dec.reconstruct(1.0 / np.sqrt(dec.eigenvalues))


def matrix_inv(A):
    dec = _positive_decomposition(A)
    return dec.reconstruct(1.0 / dec.eigenvalues)


def sqrt_pair(A):
    """``(A^{1/2}, A^{-1/2})`` from a single decomposition."""
    dec = _positive_decomposition(A)
    r = np.sqrt(dec.eigenvalues)
    return dec.reconstruct(r), dec.reconstruct(1.0 / r)


# ---------------------------------------------------------------------------
# Loewner order
# ---------------------------------------------------------------------------

def is_positive_semidefinite(A, tol: ToleranceConfig = DEFAULT_TOL) -> PSDResult:
    """PSD test relative to ``max(1, ||A||_F)``; always returns the witness."""
    A = as_hermitian(A)
    lo = float(np.linalg.eigvalsh(A)[0])
    return PSDResult(lo >= -tol.eps_psd * max(1.0, fro(A)), lo)


def loewner_leq(A, B, tol: ToleranceConfig = DEFAULT_TOL) -> LoewnerResult:
    """Test ``A <= B``; the slack is the smallest eigenvalue of ``B - A``."""
    A, B = as_hermitian(A), as_hermitian(B)
    _same_dim(A, B)
    ok, lo = is_positive_semidefinite(B - A, tol)
    return LoewnerResult(ok, lo)


def congruence(A, X):
    """``X* A X``, Hermitian by construction."""
    A = as_hermitian(A)
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != A.shape[0]:
        raise DimensionError(f"cannot form X* A X with A {A.shape} and X {X.shape}")
    return hermitize(X.conj().T @ A @ X)


# ---------------------------------------------------------------------------
# norms (Hermitian operands: singular values are |eigenvalues|)
# ---------------------------------------------------------------------------

def singular_values(A):
    return np.sort(np.abs(eigvalsh(A)))[::-1]


def ky_fan_norm(A, k):
    sv = singular_values(A)
    if not 1 <= k <= sv.shape[0]:
        raise ValueError(f"Ky Fan index k must be in [1, {sv.shape[0]}], got {k}")
    return float(sv[:k].sum())


def ky_fan_norms(A):
    """All Ky Fan norms k = 1..dim at once."""
    return np.cumsum(singular_values(A))


def schatten_norm(A, p):
    sv = singular_values(A)
    if p == np.inf:
        return float(sv[0])
    if not p >= 1:
        raise ValueError(f"Schatten exponent must be >= 1, got {p}")
    return float(np.sum(sv ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# random ensembles
# ---------------------------------------------------------------------------

def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(dim, seed=None):
    """Haar-distributed unitary from the QR factorization of a complex
    Gaussian matrix, with the phases of ``R``'s diagonal absorbed into Q."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = _rng(seed)
    Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_hpd(dim, m, M, seed=None):
    """Random Hermitian positive definite matrix with spectrum in ``[m, M]``.

    For ``dim >= 2`` one eigenvalue equals ``m`` and another equals ``M``
    exactly, so ``mI <= A <= MI`` is attained on both sides.
    """
    if not (0 < m <= M) or not np.isfinite(M):
        raise ValueError(f"need 0 < m <= M, got m={m!r}, M={M!r}")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = _rng(seed)
    if dim == 1:
        lam = np.array([m if m == M else rng.uniform(m, M)])
        return lam.reshape(1, 1).astype(float)
    lam = rng.uniform(m, M, size=dim)
    lam[0], lam[1] = m, M
    U = random_unitary(dim, rng)
    return hermitize((U * lam) @ U.conj().T)


def random_hermitian(dim, seed=None, scale=1.0):
    """GUE-style random Hermitian matrix (indefinite in general)."""
    rng = _rng(seed)
    Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitize(scale * (Z + Z.conj().T) / 2.0)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def matrix_to_json(A):
    """``{"dim": n, "re": [[...]], "im": [[...]]}``; ``im`` dropped when zero."""
    A = np.asarray(A)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    out = {"dim": int(A.shape[0]), "re": np.real(A).astype(float).tolist()}
    if np.iscomplexobj(A) and np.any(A.imag):
        out["im"] = A.imag.astype(float).tolist()
    return out


def matrix_from_json(obj):
    try:
        n = int(obj["dim"])
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float) if "im" in obj else None
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n) or (im is not None and im.shape != (n, n)):
        raise ValueError(f"matrix payload does not match dim={n}")
    return re if im is None else re + 1j * im
