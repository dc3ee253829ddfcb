"""Weighted operator means of strictly positive matrices.

All means are evaluated from their closed forms over the spectral core::

    A nabla_a B = (1-a) A + a B
    A #_a B     = A^{1/2} (A^{-1/2} B A^{-1/2})^a A^{1/2}
    A !_a B     = ((1-a) A^{-1} + a B^{-1})^{-1}
    A sigma B   = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}   (Kubo-Ando)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .functions import ScalarFunction, get_function
from .linalg import (
    PositivityError,
    _positive_decomposition,
    _same_dim,
    apply_scalar_function,
    as_hermitian,
    eig_hermitian,
    hermitize,
)


class RepresentingFunctionError(ValueError):
    pass


def check_weight(alpha):
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"weight must lie in [0, 1], got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class SandwichInterval:
    """Scalars with ``0 < s <= t`` such that ``sA <= B <= tA``."""

    s: float
    t: float

    def __post_init__(self):
        if not (0 < self.s <= self.t) or not np.isfinite(self.t):
            raise ValueError(f"need 0 < s <= t, got s={self.s!r}, t={self.t!r}")

    @classmethod
    def from_spectrum(cls, m, M):
        """``mI <= A, B <= MI`` implies ``(m/M) A <= B <= (M/m) A``."""
        if not 0 < m <= M:
            raise ValueError(f"need 0 < m <= M, got m={m!r}, M={M!r}")
        return cls(m / M, M / m)

    def contains(self, x):
        return self.s <= x <= self.t


def _pair(A, B):
    A, B = as_hermitian(A), as_hermitian(B)
    _same_dim(A, B)
    return A, B


def _congruence_frame(A, B):
    """Return ``A^{1/2}`` and ``X = A^{-1/2} B A^{-1/2}`` for strictly positive A, B."""
    dec = _positive_decomposition(A, "A")
    _positive_decomposition(B, "B")
    r = np.sqrt(dec.eigenvalues)
    half, inv_half = dec.reconstruct(r), dec.reconstruct(1.0 / r)
    return half, hermitize(inv_half @ B @ inv_half)


def arithmetic_mean(A, B, alpha):
    A, B = _pair(A, B)
    alpha = check_weight(alpha)
    return (1.0 - alpha) * A + alpha * B


def harmonic_mean(A, B, alpha):
    A, B = _pair(A, B)
    alpha = check_weight(alpha)
    dA = _positive_decomposition(A, "A")
    dB = _positive_decomposition(B, "B")
    S = (1.0 - alpha) * dA.reconstruct(1.0 / dA.eigenvalues) + alpha * dB.reconstruct(1.0 / dB.eigenvalues)
    dS = eig_hermitian(S)
    return dS.reconstruct(1.0 / dS.eigenvalues)


def geometric_mean(A, B, beta=0.5):
    """Weighted geometric mean ``A #_beta B``; ``beta=0.5`` is ``A # B``."""
    A, B = _pair(A, B)
    beta = check_weight(beta)
    half, X = _congruence_frame(A, B)
    dX = eig_hermitian(X)
    # X is strictly positive in exact arithmetic; guard round-off at the bottom
    lam = np.maximum(dX.eigenvalues, 0.0)
    return hermitize(half @ dX.reconstruct(lam ** beta) @ half)


def kubo_ando_mean(A, B, f):
    """Mean with representing function ``f`` (catalog name or ScalarFunction).

    ``f(1) = 1`` is checked to 1e-12 and ``f`` must be positive at every
    eigenvalue of ``A^{-1/2} B A^{-1/2}``.
    """
    f = get_function(f) if isinstance(f, str) else f
    A, B = _pair(A, B)
    one = float(np.asarray(f(np.array([1.0])))[0])
    if not abs(one - 1.0) <= 1e-12:
        raise RepresentingFunctionError(f"representing function must satisfy f(1) = 1, got {one!r}")
    half, X = _congruence_frame(A, B)
    dX = eig_hermitian(X)
    vals = np.asarray(f(dX.eigenvalues), dtype=float)
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        i = int(np.argmin(np.where(np.isfinite(vals), vals, -np.inf)))
        raise RepresentingFunctionError(
            f"representing function is not positive at {dX.eigenvalues[i]!r} (value {vals[i]!r})"
        )
    return hermitize(half @ dX.reconstruct(vals) @ half)


def sandwich_interval(A, B) -> SandwichInterval:
    """Tightest ``s, t`` with ``sA <= B <= tA``: the extreme eigenvalues of
    ``A^{-1/2} B A^{-1/2}``."""
    A, B = _pair(A, B)
    _, X = _congruence_frame(A, B)
    lam = np.linalg.eigvalsh(X)
    s, t = float(lam[0]), float(lam[-1])
    if s <= 0:
        raise PositivityError(f"A^-1/2 B A^-1/2 is not strictly positive (min eigenvalue {s!r})", s)
    return SandwichInterval(s, t)


def power_mean_function(kind, alpha) -> ScalarFunction:
    """Representing function of the weighted ``"arith"``, ``"geom"`` or ``"harm"`` mean."""
    return get_function(f"representing:{kind}:{check_weight(alpha)!r}")


def apply(A, f):
    """Convenience wrapper: ``f(A)`` for a catalog name or callable."""
    f = get_function(f) if isinstance(f, str) else f
    return apply_scalar_function(A, f)
