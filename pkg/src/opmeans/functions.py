"""Scalar functions on (0, inf) and the named catalog used by the CLI.

Catalog names::

    identity, const1, power:<p>, sqrt, inverse, square, exp,
    log1p, sinh_inv, representing:arith:<alpha>, representing:harm:<alpha>
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

CLAIM_FLAGS = (
    "nonneg_operator_monotone",
    "operator_monotone_decreasing",
    "operator_convex",
    "kwong",
    "representing",
)


class UnknownFunctionError(KeyError):
    pass


def central_difference(func, x, rel_step=1e-5):
    """Five-point central difference with step ``h = x * rel_step``."""
    x = np.asarray(x, dtype=float)
    h = x * rel_step
    return (-func(x + 2 * h) + 8 * func(x + h) - 8 * func(x - h) + func(x - 2 * h)) / (12 * h)


@dataclass(frozen=True)
class ScalarFunction:
    """A vectorized real function on (0, inf) plus what is claimed about it.

    ``claims`` is a subset of :data:`CLAIM_FLAGS`. ``representing`` means the
    function is a Kubo-Ando representing function: positive, operator
    monotone and equal to 1 at 1. ``derivative`` is optional; without it,
    :meth:`deriv` falls back to five-point central differences.
    """

    name: str
    func: Callable = field(repr=False)
    derivative: Optional[Callable] = field(default=None, repr=False)
    claims: frozenset = frozenset()
    note: str = ""
    domain: str = "positive"

    def __post_init__(self):
        unknown = set(self.claims) - set(CLAIM_FLAGS)
        if unknown:
            raise ValueError(f"unknown claim flags {sorted(unknown)}")
        object.__setattr__(self, "claims", frozenset(self.claims))

    def __call__(self, x):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return self.func(np.asarray(x, dtype=float))

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            if self.derivative is not None:
                return self.derivative(x)
            return central_difference(self.func, x)

    def has(self, flag):
        return flag in self.claims

    # -- derived functions ---------------------------------------------------

    def negated(self):
        d = self.derivative
        return ScalarFunction(
            f"-({self.name})",
            lambda x: -self.func(x),
            None if d is None else (lambda x: -d(x)),
        )

    def reciprocal(self):
        d = self.derivative
        return ScalarFunction(
            f"1/({self.name})",
            lambda x: 1.0 / self.func(x),
            None if d is None else (lambda x: -d(x) / self.func(x) ** 2),
        )

    def power_transform(self, p):
        """``x -> x**p * f(x**p)``."""
        f, d = self.func, self.derivative

        def g(x):
            y = x ** p
            return y * f(y)

        dg = None
        if d is not None:
            def dg(x):
                y = x ** p
                return p * x ** (p - 1) * (f(y) + y * d(y))

        return ScalarFunction(f"x^{p}*{self.name}(x^{p})", g, dg)

    def quotient_transform(self, p):
        """``x -> f(x**p) / x**p``."""
        f, d = self.func, self.derivative

        def g(x):
            y = x ** p
            return f(y) / y

        dg = None
        if d is not None:
            def dg(x):
                y = x ** p
                return p * x ** (p - 1) * (d(y) * y - f(y)) / y ** 2

        return ScalarFunction(f"{self.name}(x^{p})/x^{p}", g, dg)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

_MONO = "nonneg_operator_monotone"
_DEC = "operator_monotone_decreasing"
_CONVEX = "operator_convex"
_KWONG = "kwong"
_REP = "representing"


def power(p):
    p = float(p)
    claims = set()
    if 0 <= p <= 1:
        claims |= {_MONO, _REP}
    if -1 <= p <= 0:
        claims.add(_DEC)
    if -1 <= p <= 1:
        claims.add(_KWONG)
    if 1 <= p <= 2 or -1 <= p <= 0:
        claims.add(_CONVEX)
    return ScalarFunction(
        f"power:{p!r}",
        lambda x: x ** p,
        lambda x: p * x ** (p - 1),
        claims,
        "x^p: operator monotone for p in [0,1], Kwong for p in [-1,1], "
        "operator convex for p in [-1,0] and [1,2]",
    )


def _check_weight(alpha):
    alpha = float(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"weight must lie in [0, 1], got {alpha}")
    return alpha


def representing_arith(alpha):
    a = _check_weight(alpha)
    claims = {_MONO, _KWONG, _CONVEX, _REP}
    if a == 0:
        claims.add(_DEC)
    return ScalarFunction(
        f"representing:arith:{a!r}",
        lambda x: (1 - a) + a * x,
        lambda x: a + 0 * x,
        claims,
        "(1-a) + a x, representing function of the weighted arithmetic mean",
    )


def representing_harm(alpha):
    a = _check_weight(alpha)
    claims = {_MONO, _KWONG, _REP}
    if a in (0.0, 1.0):
        claims.add(_CONVEX)
    if a == 0:
        claims.add(_DEC)
    return ScalarFunction(
        f"representing:harm:{a!r}",
        lambda x: x / ((1 - a) * x + a),
        lambda x: a / ((1 - a) * x + a) ** 2,
        claims,
        "((1-a) + a/x)^-1, representing function of the weighted harmonic mean",
    )


def representing_geom(alpha):
    a = _check_weight(alpha)
    f = power(a)
    return ScalarFunction(
        f"representing:geom:{a!r}", f.func, f.derivative, f.claims,
        "x^a, representing function of the weighted geometric mean",
    )


def _fixed():
    ones = lambda x: np.ones_like(x, dtype=float)  # noqa: E731
    zeros = lambda x: np.zeros_like(x, dtype=float)  # noqa: E731
    sq = power(0.5)
    inv = power(-1.0)
    return {
        "identity": ScalarFunction(
            "identity", lambda x: x * 1.0, ones,
            {_MONO, _CONVEX, _KWONG, _REP}, "x",
        ),
        "const1": ScalarFunction(
            "const1", ones, zeros,
            {_MONO, _DEC, _CONVEX, _KWONG, _REP}, "constant 1",
        ),
        "sqrt": ScalarFunction("sqrt", sq.func, sq.derivative, sq.claims, "x^(1/2)"),
        "inverse": ScalarFunction(
            "inverse", inv.func, inv.derivative, {_DEC, _CONVEX, _KWONG},
            "1/x: operator monotone decreasing and operator convex; g(0) is not finite",
        ),
        "square": ScalarFunction(
            "square", lambda x: x * x, lambda x: 2 * x, {_CONVEX},
            "x^2: operator convex, neither operator monotone nor Kwong",
        ),
        "exp": ScalarFunction("exp", np.exp, np.exp, set(), "e^x: no claimed class"),
        "log1p": ScalarFunction(
            "log1p", np.log1p, lambda x: 1.0 / (1.0 + x), {_MONO, _KWONG},
            "ln(1+x): non-negative operator monotone",
        ),
        "sinh_inv": ScalarFunction(
            "sinh_inv", np.arcsinh, lambda x: 1.0 / np.sqrt(x * x + 1.0), {_KWONG},
            "ln(x + sqrt(x^2+1)): Kwong on (0, inf), not operator monotone",
        ),
    }


FIXED_NAMES = ("identity", "const1", "sqrt", "inverse", "square", "exp",
               "log1p", "sinh_inv")
PARAMETRIC_NAMES = ("power:<p>", "representing:arith:<alpha>", "representing:harm:<alpha>")

_FIXED = _fixed()


def get_function(name):
    """Look up a catalog function by name, parsing parametric entries."""
    if isinstance(name, ScalarFunction):
        return name
    if name in _FIXED:
        return _FIXED[name]
    parts = name.split(":")
    try:
        if parts[0] == "power" and len(parts) == 2:
            return power(float(parts[1]))
        if parts[0] == "representing" and len(parts) == 3:
            builder = {"arith": representing_arith, "harm": representing_harm,
                       "geom": representing_geom}.get(parts[1])
            if builder is not None:
                return builder(float(parts[2]))
    except ValueError as exc:
        raise UnknownFunctionError(f"bad parameter in {name!r}: {exc}") from None
    raise UnknownFunctionError(f"unknown catalog function {name!r}")


def catalog_listing():
    """Entries for display: fixed functions plus parametric templates."""
    rows = []
    for name in FIXED_NAMES:
        f = _FIXED[name]
        rows.append({"id": name, "claims": sorted(f.claims), "note": f.note})
    for template, example in zip(PARAMETRIC_NAMES, ("power:0.5", "representing:arith:0.5",
                                                    "representing:harm:0.5")):
        f = get_function(example)
        rows.append({"id": template, "example": example, "claims": sorted(f.claims),
                     "note": f.note})
    return rows
