"""
Kwong and Loewner matrices, sampled positivity classification.

A function is *refuted* as Kwong (resp. operator monotone) when some sampled
Kwong (resp. Loewner) matrix has a clearly negative eigenvalue. Otherwise it
is only *consistent*: finite sampling is a necessary-condition test and never
proves membership in a class.

Sampling regime, shared by every classifier so verdicts with equal seeds are
directly comparable:

* even trials: ``n`` points log-uniform in ``[1e-3, 1e3]``;
* odd trials: geometric progressions with ratio cycling through 1.1, 2, 10;
* ``n`` cycles through ``2..n_max`` (``n_max`` capped at 12).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .functions import ScalarFunction, get_function
from .linalg import (
    ToleranceConfig,
    apply_scalar_function,
    fro,
    hermitize,
    matrix_to_json,
    random_hpd,
)

N_MAX_CAP = 12
POINT_RANGE = (1e-3, 1e3)
GEOMETRIC_RATIOS = (1.1, 2.0, 10.0)
RICHARDSON_STEPS = (1e-4, 5e-5, 2.5e-5)


def _eps(tol):
    return tol.eps_psd if isinstance(tol, ToleranceConfig) else float(tol)


def _as_function(f):
    return get_function(f) if isinstance(f, str) else f


def sample_points(points):
    """Validate a sample: positive, finite and pairwise distinct."""
    x = np.asarray(points, dtype=float).ravel()
    if x.size < 1:
        raise ValueError("need at least one sample point")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise ValueError("sample points must be finite and strictly positive")
    xs = np.sort(x)
    if xs.size > 1 and np.min(np.diff(xs) / xs[1:]) <= 1e-12:
        raise ValueError("sample points must be pairwise distinct")
    return x


def _values(f, x):
    v = np.asarray(f(x), dtype=float)
    if not np.all(np.isfinite(v)):
        bad = x[~np.isfinite(v)][0]
        raise FloatingPointError(f"{getattr(f, 'name', f)} is not finite at x = {bad!r}")
    return v


def kwong_matrix(f, points):
    """``[(f(x_i) + f(x_j)) / (x_i + x_j)]``."""
    f = _as_function(f)
    x = sample_points(points)
    v = _values(f, x)
    return (v[:, None] + v[None, :]) / (x[:, None] + x[None, :])


def loewner_matrix(f, points):
    """Divided differences ``(f(x_i) - f(x_j)) / (x_i - x_j)``, ``f'(x_i)`` on the diagonal."""
    f = _as_function(f)
    x = sample_points(points)
    v = _values(f, x)
    d = np.asarray(f.deriv(x) if isinstance(f, ScalarFunction) else
                   ScalarFunction("anon", f).deriv(x), dtype=float)
    if not np.all(np.isfinite(d)):
        raise FloatingPointError(f"derivative of {getattr(f, 'name', f)} is not finite on the sample")
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    L = (v[:, None] - v[None, :]) / dx
    np.fill_diagonal(L, d)
    return hermitize(L)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def trial_points(seed, trial, n_max=N_MAX_CAP):
    """Point set for one classification trial; a pure function of its arguments."""
    n_max = min(int(n_max), N_MAX_CAP)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), int(trial)]))
    n = 2 + (trial // 2) % (n_max - 1)
    lo, hi = np.log(POINT_RANGE[0]), np.log(POINT_RANGE[1])
    if trial % 2 == 0:
        while True:
            x = np.exp(rng.uniform(lo, hi, size=n))
            xs = np.sort(x)
            if np.min(np.diff(xs) / xs[1:]) > 1e-9:
                return x
    ratio = GEOMETRIC_RATIOS[(trial // 2) % len(GEOMETRIC_RATIOS)]
    n = min(n, 1 + int(np.floor((hi - lo) / np.log(ratio))))
    start = np.exp(rng.uniform(lo, hi - (n - 1) * np.log(ratio)))
    return start * ratio ** np.arange(n)


@dataclass(frozen=True)
class Witness:
    trial: int
    points: np.ndarray
    matrix: np.ndarray
    min_eigenvalue: float

    def as_dict(self):
        return {
            "trial": self.trial,
            "points": self.points.tolist(),
            "matrix": self.matrix.tolist(),
            "min_eigenvalue": self.min_eigenvalue,
        }


@dataclass(frozen=True)
class ClassificationVerdict:
    function: str
    test: str
    verdict: str
    trials: int
    witness: Optional[Witness] = None
    skipped: int = 0
    min_relative_eigenvalue: float = float("inf")

    def __post_init__(self):
        if self.verdict not in ("consistent", "refuted"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == "refuted" and self.witness is None:
            raise ValueError("refuted verdicts must carry a witness")

    @property
    def refuted(self):
        return self.verdict == "refuted"

    def as_dict(self):
        out = {
            "function": self.function,
            "test": self.test,
            "verdict": self.verdict,
            "trials": self.trials,
            "skipped": self.skipped,
            "min_relative_eigenvalue": self.min_relative_eigenvalue,
        }
        if self.witness is not None:
            out["witness"] = self.witness.as_dict()
        return out


def _classify(builder, f, test, n_max, trials, seed, tol):
    eps = _eps(tol)
    n_max = min(int(n_max), N_MAX_CAP)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    skipped = 0
    worst = float("inf")
    for trial in range(int(trials)):
        x = trial_points(seed, trial, n_max)
        try:
            K = builder(f, x)
        except FloatingPointError:
            skipped += 1
            continue
        lo = float(np.linalg.eigvalsh(K)[0])
        scale = max(1.0, fro(K))
        worst = min(worst, lo / scale)
        if lo < -eps * scale:
            w = Witness(trial, x, K, lo)
            return ClassificationVerdict(f.name, test, "refuted", trial + 1, w, skipped, worst)
    return ClassificationVerdict(f.name, test, "consistent", int(trials), None, skipped, worst)


def reverify_witness(f, verdict: ClassificationVerdict):
    """Rebuild a witness matrix from its points and return its min eigenvalue."""
    f = _as_function(f)
    builder = kwong_matrix if verdict.test == "kwong" else loewner_matrix
    if verdict.test == "operator_monotone_decreasing":
        f = f.negated()
    K = builder(f, verdict.witness.points)
    return float(np.linalg.eigvalsh(K)[0])


def classify_kwong(f, n_max=N_MAX_CAP, trials=200, seed=0, tol=1e-9):
    """Sampled Kwong-matrix positivity test."""
    return _classify(kwong_matrix, _as_function(f), "kwong", n_max, trials, seed, tol)


def classify_operator_monotone(f, n_max=N_MAX_CAP, trials=200, seed=0, tol=1e-9,
                               decreasing=False):
    """Sampled Loewner-matrix positivity test; ``decreasing`` tests ``-f``."""
    f = _as_function(f)
    if decreasing:
        v = _classify(loewner_matrix, f.negated(), "operator_monotone_decreasing",
                      n_max, trials, seed, tol)
        return ClassificationVerdict(f.name, v.test, v.verdict, v.trials, v.witness,
                                     v.skipped, v.min_relative_eigenvalue)
    return _classify(loewner_matrix, f, "operator_monotone", n_max, trials, seed, tol)


def nonnegative_on_probe(f, n=2001):
    """Check ``f >= 0`` on a log-spaced probe grid over the sampling range."""
    f = _as_function(f)
    x = np.logspace(np.log10(POINT_RANGE[0]), np.log10(POINT_RANGE[1]), n)
    v = np.asarray(f(x), dtype=float)
    finite = np.isfinite(v)
    return bool(np.all(v[finite] >= 0))


# ---------------------------------------------------------------------------
# transformation theorems
# ---------------------------------------------------------------------------

@dataclass
class AudenaertResult:
    function: str
    kwong: ClassificationVerdict
    transform: ClassificationVerdict
    transform_nonnegative: bool

    @property
    def transform_refuted(self):
        return self.transform.refuted or not self.transform_nonnegative

    @property
    def coherent(self):
        """Both sides refuted or both consistent; anything else points at tolerances."""
        return self.kwong.refuted == self.transform_refuted

    def as_dict(self):
        return {
            "function": self.function,
            "kwong": self.kwong.as_dict(),
            "sqrt_transform": self.transform.as_dict(),
            "sqrt_transform_nonnegative": self.transform_nonnegative,
            "coherent": self.coherent,
        }


def check_audenaert_equivalence(f, n_max=N_MAX_CAP, trials=200, seed=0, tol=1e-9):
    """Compare "f is Kwong" with "sqrt(t) f(sqrt(t)) is non-negative operator
    monotone" under the same seed and sample budget."""
    f = _as_function(f)
    g = f.power_transform(0.5)
    return AudenaertResult(
        f.name,
        classify_kwong(f, n_max, trials, seed, tol),
        classify_operator_monotone(g, n_max, trials, seed, tol),
        nonnegative_on_probe(g),
    )


def _implication(premise, verdict, premise_source):
    if premise is None:
        status = "not-applicable"
    elif premise and verdict.refuted:
        status = "FAILURE"
    elif premise:
        status = "ok"
    else:
        status = "premise-not-met"
    return {"premise": premise, "premise_source": premise_source,
            "conclusion": verdict.as_dict(), "status": status}


def check_theorem31(f, p, n_max=N_MAX_CAP, trials=200, seed=0, tol=1e-9):
    """Power transforms of Kwong functions.

    (i)   p >= 1/2 and x^p f(x^p) non-negative operator monotone  =>  f Kwong
    (ii)  f Kwong and 0 <= p <= 1/2  =>  x^p f(x^p) non-negative operator monotone
    (iii) f Kwong and 0 <= p <= 1/2  =>  f(x^p)/x^p non-negative operator monotone decreasing

    The premise of (i) is itself a sampled verdict; the premises of (ii) and
    (iii) come from the catalog claims. A part whose premise holds and whose
    conclusion is refuted is reported with status ``"FAILURE"``.
    """
    f = _as_function(f)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    kw = dict(n_max=n_max, trials=trials, seed=seed, tol=tol)
    up = f.power_transform(p)
    down = f.quotient_transform(p)
    parts = {}

    if p >= 0.5:
        mono = classify_operator_monotone(up, **kw)
        premise = (not mono.refuted) and nonnegative_on_probe(up)
        parts["i"] = _implication(premise, classify_kwong(f, **kw), "sampled")
    else:
        parts["i"] = _implication(None, classify_kwong(f, **kw), "p < 1/2")

    is_kwong = f.has("kwong")
    if p <= 0.5:
        v2 = classify_operator_monotone(up, **kw)
        if not nonnegative_on_probe(up):
            v2 = _negativity_verdict(up, "operator_monotone")
        parts["ii"] = _implication(is_kwong, v2, "claims")
        v3 = classify_operator_monotone(down, decreasing=True, **kw)
        if not nonnegative_on_probe(down):
            v3 = _negativity_verdict(down, "operator_monotone_decreasing")
        parts["iii"] = _implication(is_kwong, v3, "claims")
    else:
        parts["ii"] = {"premise": None, "status": "not-applicable"}
        parts["iii"] = {"premise": None, "status": "not-applicable"}

    failed = [k for k, v in parts.items() if v["status"] == "FAILURE"]
    return {"function": f.name, "p": p, "parts": parts, "failures": failed}


def _negativity_verdict(f, test):
    x = np.logspace(np.log10(POINT_RANGE[0]), np.log10(POINT_RANGE[1]), 2001)
    v = np.asarray(f(x), dtype=float)
    i = int(np.argmin(np.where(np.isfinite(v), v, np.inf)))
    w = Witness(-1, x[i:i + 1], np.array([[v[i]]]), float(v[i]))
    return ClassificationVerdict(f.name, test, "refuted", 0, w)


def richardson_at_zero(g, steps=RICHARDSON_STEPS):
    """Extrapolate ``g(0+)`` from three halving steps.

    Returns ``(estimate, finite)`` where ``finite`` is False when the
    linear and quadratic extrapolants disagree, which is what happens when
    ``g`` blows up at 0.
    """
    g = _as_function(g)
    h = np.asarray(steps, dtype=float)
    y = np.asarray(g(h), dtype=float)
    lin = 2.0 * y[1] - y[0]
    quad = (8.0 * y[2] - 6.0 * y[1] + y[0]) / 3.0
    finite = bool(np.isfinite(quad) and abs(quad - lin) <= 1e-6 * max(1.0, abs(quad)))
    return float(quad), finite


def check_theorem32(g, p, n_max=N_MAX_CAP, trials=200, seed=0, tol=1e-9):
    """Non-negative operator convex ``g`` and ``-1 <= p <= 1``  =>  g(x^p)/x^p Kwong.

    Also runs the two ingredients of the argument: ``(g(x) - g(0))/x``
    operator monotone, and ``x^p`` Kwong. ``g(0)`` is the Richardson
    extrapolation from :data:`RICHARDSON_STEPS`; when that diverges the bundle
    records ``g0_finite = False``.
    """
    g = _as_function(g)
    p = float(p)
    if not -1.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [-1, 1], got {p}")
    kw = dict(n_max=n_max, trials=trials, seed=seed, tol=tol)
    q = g.quotient_transform(p)
    verdict = classify_kwong(q, **kw)
    premise = g.has("operator_convex") and nonnegative_on_probe(g)

    g0, g0_finite = richardson_at_zero(g)
    lemma = None
    if g0_finite:
        gd = g.derivative
        lemma_f = ScalarFunction(
            f"({g.name}(x)-g0)/x",
            lambda x: (g.func(x) - g0) / x,
            None if gd is None else (lambda x: (gd(x) * x - (g.func(x) - g0)) / x ** 2),
        )
        lemma = classify_operator_monotone(lemma_f, **kw).as_dict()
    power_kwong = classify_kwong(f"power:{p!r}", **kw)

    if not premise:
        status = "premise-not-met"
    elif verdict.refuted:
        status = "FAILURE"
    else:
        status = "ok"
    return {
        "function": g.name,
        "p": p,
        "transform": q.name,
        "verdict": verdict,
        "premise": premise,
        "status": status,
        "g0": g0 if g0_finite else None,
        "g0_finite": g0_finite,
        "difference_quotient_monotone": lemma,
        "power_kwong": power_kwong.as_dict(),
    }


def _convexity_operand(dim, rng):
    M = 10.0 ** rng.uniform(-1, 1)
    m = M * 10.0 ** rng.uniform(-4, 0)
    return random_hpd(dim, m, M, rng)


def classify_operator_convex(g, dim=2, trials=200, seed=0, tol=1e-9):
    """Random-pair test of ``g((1-a)A + aB) <= (1-a) g(A) + a g(B)``.

    ``A`` and ``B`` get independent spectra ``[M 10^-k, M]`` with
    ``M`` in ``[0.1, 10]`` and ``k`` in ``[0, 4]``; pairs sharing one spectrum
    almost never expose failures. The witness carries ``A``, ``B`` and the
    weight.
    """
    g = _as_function(g)
    eps = _eps(tol)
    worst = float("inf")
    for trial in range(int(trials)):
        rng = np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), int(trial), 7]))
        A, B = (_convexity_operand(dim, rng) for _ in range(2))
        a = float(rng.uniform())
        lhs = apply_scalar_function((1 - a) * A + a * B, g)
        rhs = (1 - a) * apply_scalar_function(A, g) + a * apply_scalar_function(B, g)
        D = hermitize(rhs - lhs)
        lo = float(np.linalg.eigvalsh(D)[0])
        scale = max(1.0, 0.5 * (fro(lhs) + fro(rhs)))
        worst = min(worst, lo / scale)
        if lo < -eps * scale:
            w = ConvexityWitness(trial, A, B, a, lo)
            return ClassificationVerdict(g.name, "operator_convex", "refuted", trial + 1, w,
                                         0, worst)
    return ClassificationVerdict(g.name, "operator_convex", "consistent", int(trials), None,
                                 0, worst)


@dataclass(frozen=True)
class ConvexityWitness:
    trial: int
    A: np.ndarray
    B: np.ndarray
    alpha: float
    min_eigenvalue: float
    points: Optional[np.ndarray] = field(default=None, repr=False)

    def as_dict(self):
        return {"trial": self.trial, "A": matrix_to_json(self.A), "B": matrix_to_json(self.B),
                "alpha": self.alpha, "min_eigenvalue": self.min_eigenvalue}
