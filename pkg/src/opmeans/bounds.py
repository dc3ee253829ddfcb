"""Scalar constants for reverse mean inequalities.

The central quantity is the endpoint maximum of

    f_{a,b}(x) = ((1 - a) + a x) / x**b

over a sandwich interval ``[s, t]``. ``f_{a,b}`` is decreasing then
increasing around its critical point ``b(1-a) / (a(1-b))``, so its maximum
over any interval sits at an endpoint; :func:`lambda_bound` is that maximum
and :func:`mu_bound` is the same quantity on the inverted interval
``[1/t, 1/s]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .means import SandwichInterval, check_weight

_SPECHT_SERIES_RADIUS = 1e-8


def _positive(x, what="x"):
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise ValueError(f"{what} must be a positive finite real, got {x!r}")
    return x


def kantorovich(x):
    """Kantorovich constant ``(1 + x)^2 / (4x)``."""
    x = _positive(x)
    return (1.0 + x) ** 2 / (4.0 * x)


def specht(x):
    """Specht's ratio ``x^(1/(x-1)) / (e log x^(1/(x-1)))``, with ``S(1) = 1``.

    Evaluated as ``exp(u - 1) / u`` with ``u = log(x) / (x - 1)``, which is
    the same expression without the overflow of ``x^(1/(x-1))``. Inputs
    below 1 are reflected through ``S(x) = S(1/x)`` so the symmetry is exact.
    Within 1e-8 of 1 the series ``1 + e^2/8 - e^3/8`` (``e = x - 1``) is used.
    """
    x = _positive(x)
    if x < 1.0:
        x = 1.0 / x
    e = x - 1.0
    if abs(e) < _SPECHT_SERIES_RADIUS:
        return 1.0 + e * e / 8.0 - e ** 3 / 8.0
    u = math.log1p(e) / e
    return math.exp(u - 1.0) / u


def f_alpha_beta(x, alpha, beta):
    """``((1 - alpha) + alpha x) / x**beta``."""
    x = _positive(x)
    return ((1.0 - alpha) + alpha * x) / x ** beta


def weighted_endpoint(x, alpha, beta):
    """``x^{-beta} nabla_alpha x^{1-beta}``, equal to ``f_alpha_beta(x)``."""
    return (1.0 - alpha) * x ** (-beta) + alpha * x ** (1.0 - beta)


def critical_point(alpha, beta):
    """Stationary point ``beta(1-alpha) / (alpha(1-beta))`` of ``f_alpha_beta``.

    Returns ``None`` when ``alpha == 0`` or ``beta == 1``: the derivative's
    leading factor ``alpha(1-beta)`` vanishes and ``f`` is a pure power.
    """
    alpha, beta = check_weight(alpha), check_weight(beta)
    if alpha == 0.0 or beta == 1.0:
        return None
    return beta * (1.0 - alpha) / (alpha * (1.0 - beta))


def f_alpha_beta_derivative(x, alpha, beta):
    """Closed form ``alpha(1-beta) / x^{beta+1} * (x - x*)``.

    Written out without ``x*`` so it also covers the degenerate weights.
    """
    x = _positive(x)
    return (alpha * (1.0 - beta) * x - beta * (1.0 - alpha)) / x ** (beta + 1.0)


def _interval(s, t):
    if isinstance(s, SandwichInterval):
        return s.s, s.t
    return SandwichInterval(float(s), float(t)).s, float(t)


def lambda_bound(s, t=None, alpha=0.5, beta=0.5):
    """``max{t^{-b} nabla_a t^{1-b}, s^{-b} nabla_a s^{1-b}}``.

    ``s`` may be a :class:`SandwichInterval`, in which case ``t`` is ignored.
    No ``lambda >= 1`` guarantee: if 1 is outside ``[s, t]`` the value can
    drop below 1.
    """
    s, t = _interval(s, t)
    alpha, beta = check_weight(alpha), check_weight(beta)
    return max(weighted_endpoint(t, alpha, beta), weighted_endpoint(s, alpha, beta))


def mu_bound(s, t=None, alpha=0.5, beta=0.5):
    """``max{t^b nabla_a t^{-(1-b)}, s^b nabla_a s^{-(1-b)}}``."""
    s, t = _interval(s, t)
    alpha, beta = check_weight(alpha), check_weight(beta)

    def g(x):
        return (1.0 - alpha) * x ** beta + alpha * x ** (-(1.0 - beta))

    return max(g(t), g(s))


def gamma_bound(s, t=None):
    """``max{S(s), S(t)}``."""
    s, t = _interval(s, t)
    return max(specht(s), specht(t))


def _spectrum(m, M):
    m, M = _positive(m, "m"), _positive(M, "M")
    if m > M:
        raise ValueError(f"need m <= M, got m={m!r}, M={M!r}")
    return m, M


def corollary_lambda(m, M, alpha, beta):
    """Constant for ``mI <= A, B <= MI``: ``lambda_bound`` on ``[m/M, M/m]``."""
    m, M = _spectrum(m, M)
    return lambda_bound(m / M, M / m, alpha, beta)


def corollary_lambda_closed_form(m, M, alpha, beta):
    """The same constant written directly in ``m`` and ``M``."""
    m, M = _spectrum(m, M)
    return max(
        (1 - alpha) * (m / M) ** beta + alpha * (M / m) ** (1 - beta),
        (1 - alpha) * (M / m) ** beta + alpha * (m / M) ** (1 - beta),
    )


def corollary26_lambda(m, M, alpha):
    """Constant for ``A # B`` (``beta = 1/2``) under ``mI <= A, B <= MI``.

    Piecewise in ``alpha``; both branches agree at ``alpha = 1/2``.
    """
    m, M = _spectrum(m, M)
    alpha = check_weight(alpha)
    lo, hi = math.sqrt(m / M), math.sqrt(M / m)
    if alpha >= 0.5:
        return (1 - alpha) * lo + alpha * hi
    return (1 - alpha) * hi + alpha * lo


@dataclass(frozen=True)
class BoundParams:
    interval: SandwichInterval
    alpha: float
    beta: float

    def __post_init__(self):
        check_weight(self.alpha)
        check_weight(self.beta)

    @property
    def lam(self):
        return lambda_bound(self.interval, alpha=self.alpha, beta=self.beta)

    @property
    def mu(self):
        return mu_bound(self.interval, alpha=self.alpha, beta=self.beta)

    @property
    def gamma(self):
        return gamma_bound(self.interval)

    @property
    def critical_point(self):
        return critical_point(self.alpha, self.beta)

    def as_dict(self):
        return {
            "s": self.interval.s,
            "t": self.interval.t,
            "alpha": self.alpha,
            "beta": self.beta,
            "lambda": self.lam,
            "mu": self.mu,
            "gamma": self.gamma,
            "specht_s": specht(self.interval.s),
            "specht_t": specht(self.interval.t),
            "kantorovich": kantorovich(self.interval.t / self.interval.s),
            "critical_point": self.critical_point,
        }
