"""
Randomized verification of operator mean inequalities.

Every check follows the same loop: draw a hypothesis-conforming pair
``(A, B)`` and weights, evaluate both sides of each inequality, and record a
normalized slack

    slack = lambda_min(RHS - LHS) / max(1, (||LHS||_F + ||RHS||_F) / 2)

(norm inequalities use the scalar analogue). A trial fails when its smallest
slack is below ``-tol``. Trials draw from per-trial seeds derived from
``(seed, theorem, variant, dim, trial)``, so results do not depend on the
order or process in which trials run.

Sampling modes:

``spectrum``  ``mI <= A, B <= MI`` with both bounds attained.
``sandwich``  ``B = A^{1/2} X A^{1/2}`` with ``X`` spread around 1; the tight
              ``s, t`` are recomputed from the pair.
``straddle``  as ``sandwich`` but ``X`` has eigenvalues ``s0 <= 1 <= t0`` so
              the tight interval contains 1 (``B = A`` at dim 1).
"""
from __future__ import annotations

import csv
import io
import json
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import __version__
from .bounds import (
    corollary26_lambda,
    corollary_lambda,
    kantorovich,
    lambda_bound,
    mu_bound,
    specht,
)
from .functions import get_function
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    apply_scalar_function,
    eig_hermitian,
    fro,
    hermitize,
    ky_fan_norms,
    matrix_from_json,
    matrix_to_json,
    random_hpd,
    schatten_norm,
)
from .means import (
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    kubo_ando_mean,
    power_mean_function,
    sandwich_interval,
)

THEOREM_IDS = (
    "young",
    "fujii-1.2",
    "tominaga-1.2thm",
    "thm-2.1",
    "remark-2.2",
    "cor-2.3",
    "cor-2.6",
    "thm-3.4",
    "cor-3.5",
    "norm-chain",
    "seo-3.2.1",
    "ando-hiai",
    "cor-3.6",
    "cor-3.8",
    "remark-3.9",
)

DEFAULT_DIMS = (1, 2, 4, 8)
MAX_STORED_FAILURES = 20


class UnknownTheoremError(KeyError):
    pass


@dataclass(frozen=True)
class TrialConfig:
    """Sampling and tolerance settings shared by all checks.

    ``alpha``/``beta`` of ``None`` mean uniform on [0, 1] per trial.
    ``spread`` bounds the sandwich sampler: ``X`` has spectrum inside
    ``[1/spread, spread]``. ``lambda_factor`` multiplies every bound constant
    and exists for mutation self-tests; leave it at 1.
    """

    dim: int = 4
    trials: int = 1000
    seed: int = 0
    m: float = 1.0
    M: float = 10.0
    spread: float = 10.0
    alpha: Optional[float] = None
    beta: Optional[float] = None
    tol: ToleranceConfig = DEFAULT_TOL
    function: Optional[str] = None
    p: Optional[float] = None
    sigma: str = "arith"
    tau: str = "harm"
    lambda_factor: float = 1.0

    def __post_init__(self):
        if not 1 <= self.dim <= 32:
            raise ValueError(f"dim must be in 1..32, got {self.dim}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 < self.m <= self.M:
            raise ValueError(f"need 0 < m <= M, got m={self.m}, M={self.M}")
        if not self.spread >= 1:
            raise ValueError("spread must be >= 1")
        for w in (self.alpha, self.beta):
            if w is not None and not 0 <= w <= 1:
                raise ValueError(f"weights must lie in [0, 1], got {w}")

    @property
    def h(self):
        return self.M / self.m

    @property
    def eps(self):
        return self.tol.eps_psd

    def as_dict(self):
        d = asdict(self)
        d["tol"] = asdict(self.tol)
        return d


@dataclass
class Evaluation:
    slacks: dict
    info: dict = field(default_factory=dict)
    skipped: Optional[str] = None

    @property
    def min_slack(self):
        return min(self.slacks.values()) if self.slacks else float("inf")


# ---------------------------------------------------------------------------
# slacks
# ---------------------------------------------------------------------------

def loewner_slack(lhs, rhs):
    """Normalized smallest eigenvalue of ``rhs - lhs`` (>= 0 means lhs <= rhs)."""
    lo = float(np.linalg.eigvalsh(hermitize(rhs - lhs))[0])
    return lo / max(1.0, 0.5 * (fro(lhs) + fro(rhs)))


def scalar_slack(lhs, rhs):
    lhs, rhs = np.asarray(lhs, dtype=float), np.asarray(rhs, dtype=float)
    rel = (rhs - lhs) / np.maximum(1.0, 0.5 * (np.abs(lhs) + np.abs(rhs)))
    return float(np.min(rel))


def norm_slack(lhs, rhs):
    """Slack of ``|||lhs||| <= |||rhs|||`` over all Ky Fan norms and Schatten-2."""
    kl, kr = ky_fan_norms(lhs), ky_fan_norms(rhs)
    s2 = scalar_slack(schatten_norm(lhs, 2), schatten_norm(rhs, 2))
    return min(scalar_slack(kl, kr), s2)


def _power(A, p):
    dec = eig_hermitian(A)
    return dec.reconstruct(np.maximum(dec.eigenvalues, 0.0) ** p)


def _fn(A, f):
    return apply_scalar_function(A, f)


# ---------------------------------------------------------------------------
# individual checks: (A, B, alpha, beta, cfg, **params) -> Evaluation
# ---------------------------------------------------------------------------

def _bounds(A, B, alpha, beta, cfg):
    iv = sandwich_interval(A, B)
    lam = lambda_bound(iv.s, iv.t, alpha, beta) * cfg.lambda_factor
    mu = mu_bound(iv.s, iv.t, alpha, beta) * cfg.lambda_factor
    return iv, lam, mu


def _info(iv, lam, mu, **extra):
    out = {"s": iv.s, "t": iv.t, "lambda": lam, "mu": mu}
    out.update(extra)
    return out


def eval_young(A, B, alpha, beta, cfg):
    ar = arithmetic_mean(A, B, alpha)
    ge = geometric_mean(A, B, alpha)
    ha = harmonic_mean(A, B, alpha)
    iv = sandwich_interval(A, B)
    return Evaluation(
        {"geom<=arith": loewner_slack(ge, ar), "harm<=geom": loewner_slack(ha, ge)},
        _info(iv, 1.0, 1.0),
    )


def eval_fujii(A, B, alpha, beta, cfg):
    k = np.sqrt(kantorovich(cfg.h)) * cfg.lambda_factor
    ar = arithmetic_mean(A, B, 0.5)
    ge = geometric_mean(A, B, 0.5)
    ha = harmonic_mean(A, B, 0.5)
    iv = sandwich_interval(A, B)
    return Evaluation(
        {"arith/sqrtK<=geom": loewner_slack(ar / k, ge), "geom<=sqrtK*harm": loewner_slack(ge, k * ha)},
        _info(iv, k, k, h=cfg.h),
    )


def eval_tominaga(A, B, alpha, beta, cfg):
    S = specht(cfg.h) * cfg.lambda_factor
    ar = arithmetic_mean(A, B, alpha)
    ge = geometric_mean(A, B, alpha)
    iv = sandwich_interval(A, B)
    return Evaluation({"arith<=S*geom": loewner_slack(ar, S * ge)}, _info(iv, S, S, h=cfg.h))


def eval_thm21(A, B, alpha, beta, cfg):
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    ar = arithmetic_mean(A, B, alpha)
    ge = geometric_mean(A, B, beta)
    ha = harmonic_mean(A, B, alpha)
    return Evaluation(
        {"arith/lambda<=geom": loewner_slack(ar / lam, ge), "geom<=mu*harm": loewner_slack(ge, mu * ha)},
        _info(iv, lam, mu),
    )


def eval_remark22(A, B, alpha, beta, cfg, sigma="arith", tau="harm"):
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    sig = kubo_ando_mean(A, B, power_mean_function(sigma, alpha))
    ta = kubo_ando_mean(A, B, power_mean_function(tau, alpha))
    ar = arithmetic_mean(A, B, alpha)
    ha = harmonic_mean(A, B, alpha)
    info = _info(iv, lam, mu, sigma=sigma, tau=tau)
    # hypothesis: arith >= sigma and tau >= harm
    if loewner_slack(sig, ar) < -cfg.eps or loewner_slack(ha, ta) < -cfg.eps:
        return Evaluation({}, info, skipped="mean ordering hypothesis violated")
    ge = geometric_mean(A, B, beta)
    return Evaluation(
        {"sigma/lambda<=geom": loewner_slack(sig / lam, ge), "geom<=mu*tau": loewner_slack(ge, mu * ta)},
        info,
    )


def eval_cor23(A, B, alpha, beta, cfg):
    lam = corollary_lambda(cfg.m, cfg.M, alpha, beta)
    s, t = cfg.m / cfg.M, cfg.M / cfg.m
    mu = mu_bound(s, t, alpha, beta)
    identity_gap = -abs(lam - mu) / max(1.0, lam)
    lam *= cfg.lambda_factor
    ar = arithmetic_mean(A, B, alpha)
    ge = geometric_mean(A, B, beta)
    ha = harmonic_mean(A, B, alpha)
    iv = sandwich_interval(A, B)
    return Evaluation(
        {
            "arith/lambda<=geom": loewner_slack(ar / lam, ge),
            "geom<=lambda*harm": loewner_slack(ge, lam * ha),
            "lambda==mu": identity_gap,
        },
        _info(iv, lam, mu, h=cfg.h),
    )


def eval_cor26(A, B, alpha, beta, cfg):
    lam = corollary26_lambda(cfg.m, cfg.M, alpha)
    general = corollary_lambda(cfg.m, cfg.M, alpha, 0.5)
    identity_gap = -abs(lam - general) / max(1.0, lam)
    lam *= cfg.lambda_factor
    ar = arithmetic_mean(A, B, alpha)
    ge = geometric_mean(A, B, 0.5)
    ha = harmonic_mean(A, B, alpha)
    iv = sandwich_interval(A, B)
    return Evaluation(
        {
            "arith/lambda<=geom": loewner_slack(ar / lam, ge),
            "geom<=lambda*harm": loewner_slack(ge, lam * ha),
            "piecewise==max": identity_gap,
        },
        _info(iv, lam, lam, h=cfg.h),
    )


def eval_thm34(A, B, alpha, beta, cfg, function="sqrt"):
    f = get_function(function)
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    ge = geometric_mean(A, B, beta)
    lhs = (1 - alpha) * _fn(A, f) + alpha * _fn(B, f)
    f_ge = _fn(ge, f)
    f_ar = _fn(arithmetic_mean(A, B, alpha), f)
    f_lam_ge = _fn(lam * ge, f)
    return Evaluation(
        {
            "f(A)nabla f(B)<=lambda f(A#B)": loewner_slack(lhs, lam * f_ge),
            "concavity": loewner_slack(lhs, f_ar),
            "monotonicity": loewner_slack(f_ar, f_lam_ge),
            "f(cX)<=c f(X)": loewner_slack(f_lam_ge, lam * f_ge),
        },
        _info(iv, lam, mu, function=f.name),
    )


def eval_cor35(A, B, alpha, beta, cfg, p=0.5):
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    lhs = (1 - alpha) * _power(A, p) + alpha * _power(B, p)
    rhs = lam ** p * _power(geometric_mean(A, B, beta), p)
    return Evaluation({"A^p nabla B^p<=lambda^p (A#B)^p": loewner_slack(lhs, rhs)}, _info(iv, lam, mu, p=p))


def eval_norm_chain(A, B, alpha, beta, cfg, p=0.5):
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    Ap, Bp = _power(A, p), _power(B, p)
    sharp = geometric_mean(Ap, Bp, alpha)
    nabla = (1 - alpha) * Ap + alpha * Bp
    rhs = lam ** p * _power(geometric_mean(A, B, beta), p)
    return Evaluation(
        {"|||#|||<=|||nabla|||": norm_slack(sharp, nabla), "|||nabla|||<=lambda^p|||(A#B)^p|||": norm_slack(nabla, rhs)},
        _info(iv, lam, mu, p=p),
    )


def eval_seo(A, B, alpha, beta, cfg, p=0.5):
    S = specht(cfg.h)
    lam_cor = corollary_lambda(cfg.m, cfg.M, alpha, alpha)
    Sp = (S * cfg.lambda_factor) ** p
    lhs = geometric_mean(_power(A, p), _power(B, p), alpha)
    rhs = Sp * _power(geometric_mean(A, B, alpha), p)
    iv = sandwich_interval(A, B)
    return Evaluation(
        {"seo": norm_slack(lhs, rhs), "lambda<=S(h)": scalar_slack(lam_cor, S)},
        _info(iv, lam_cor, lam_cor, h=cfg.h, p=p),
    )


def eval_ando_hiai(A, B, alpha, beta, cfg, p=2.0):
    lhs = geometric_mean(_power(A, p), _power(B, p), alpha)
    rhs = cfg.lambda_factor * _power(geometric_mean(A, B, alpha), p)
    iv = sandwich_interval(A, B)
    return Evaluation({"ando-hiai": norm_slack(lhs, rhs)}, _info(iv, 1.0, 1.0, p=p))


def eval_cor36(A, B, alpha, beta, cfg, function="sinh_inv", p=0.5):
    f = get_function(function)
    h = f.power_transform(p)
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    hA, hB = _fn(A, h), _fn(B, h)
    lhs = (1 - alpha) * hA + alpha * hB
    rhs = lam * _fn(geometric_mean(A, B, beta), h)
    # geometric specialization with alpha = beta under mI <= A, B <= MI
    lo = min(np.linalg.eigvalsh(A)[0], np.linalg.eigvalsh(B)[0])
    hi = max(np.linalg.eigvalsh(A)[-1], np.linalg.eigvalsh(B)[-1])
    S = specht(hi / lo) * cfg.lambda_factor
    geo_lhs = geometric_mean(hA, hB, alpha)
    geo_rhs = S * _fn(geometric_mean(A, B, alpha), h)
    return Evaluation(
        {
            "h(A)nabla h(B)<=lambda h(A#B)": loewner_slack(lhs, rhs),
            "h(A)#h(B)<=S(h) h(A#B)": loewner_slack(geo_lhs, geo_rhs),
        },
        _info(iv, lam, mu, function=f.name, p=p, spectrum_h=float(hi / lo)),
    )


def _g_of_power(A, g, p):
    return _fn(_power(A, p), g)


def eval_cor38(A, B, alpha, beta, cfg, function="square", p=0.5):
    g = get_function(function)
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    lhs = (1 - alpha) * _g_of_power(A, g, p) + alpha * _g_of_power(B, g, p)
    rhs = lam * _g_of_power(geometric_mean(A, B, beta), g, p)
    return Evaluation({"g(A^p)nabla g(B^p)<=lambda g((A#B)^p)": loewner_slack(lhs, rhs)},
                      _info(iv, lam, mu, function=g.name, p=p))


def eval_remark39(A, B, alpha, beta, cfg, function="square", p=0.5):
    g = get_function(function)
    iv, lam, mu = _bounds(A, B, alpha, beta, cfg)
    lhs = geometric_mean(_g_of_power(A, g, p), _g_of_power(B, g, p), alpha)
    rhs = lam * _g_of_power(geometric_mean(A, B, beta), g, p)
    return Evaluation({"g(A^p)# g(B^p)<=lambda g((A#B)^p)": loewner_slack(lhs, rhs)},
                      _info(iv, lam, mu, function=g.name, p=p))


@dataclass(frozen=True)
class CheckSpec:
    theorem: str
    evaluate: Callable
    mode: str
    fixed_beta: Optional[float] = None
    beta_equals_alpha: bool = False
    fixed_alpha: Optional[float] = None
    params: tuple = ()
    function_claim: Optional[str] = None
    p_range: Optional[tuple] = None


CHECKS = {
    "young": CheckSpec("young", eval_young, "spectrum", beta_equals_alpha=True),
    "fujii-1.2": CheckSpec("fujii-1.2", eval_fujii, "spectrum", fixed_alpha=0.5, fixed_beta=0.5),
    "tominaga-1.2thm": CheckSpec("tominaga-1.2thm", eval_tominaga, "spectrum", beta_equals_alpha=True),
    "thm-2.1": CheckSpec("thm-2.1", eval_thm21, "sandwich"),
    "remark-2.2": CheckSpec("remark-2.2", eval_remark22, "sandwich", params=("sigma", "tau")),
    "cor-2.3": CheckSpec("cor-2.3", eval_cor23, "spectrum"),
    "cor-2.6": CheckSpec("cor-2.6", eval_cor26, "spectrum", fixed_beta=0.5),
    "thm-3.4": CheckSpec("thm-3.4", eval_thm34, "straddle", params=("function",),
                         function_claim="nonneg_operator_monotone"),
    "cor-3.5": CheckSpec("cor-3.5", eval_cor35, "straddle", params=("p",), p_range=(0.0, 1.0)),
    "norm-chain": CheckSpec("norm-chain", eval_norm_chain, "sandwich", params=("p",), p_range=(0.0, 1.0)),
    "seo-3.2.1": CheckSpec("seo-3.2.1", eval_seo, "spectrum", params=("p",), p_range=(0.0, 1.0),
                           beta_equals_alpha=True),
    "ando-hiai": CheckSpec("ando-hiai", eval_ando_hiai, "spectrum", params=("p",), p_range=(1.0, np.inf),
                           beta_equals_alpha=True),
    "cor-3.6": CheckSpec("cor-3.6", eval_cor36, "straddle", params=("function", "p"), p_range=(0.0, 0.5),
                         function_claim="kwong"),
    "cor-3.8": CheckSpec("cor-3.8", eval_cor38, "straddle", params=("function", "p"), p_range=(0.0, 0.5),
                         function_claim="operator_convex"),
    "remark-3.9": CheckSpec("remark-3.9", eval_remark39, "straddle", params=("function", "p"),
                            p_range=(0.0, 0.5), function_claim="operator_convex"),
}

# Variants exercised by ``run_suite`` when the config does not pin function/p.
SUITE_VARIANTS = {
    "remark-2.2": [{"sigma": "arith", "tau": "harm"}, {"sigma": "geom", "tau": "geom"},
                   {"sigma": "geom", "tau": "harm"}],
    "thm-3.4": [{"function": f} for f in ("identity", "sqrt", "power:0.3", "log1p")],
    "cor-3.5": [{"p": p} for p in (0.0, 0.5, 1.0)],
    "norm-chain": [{"p": p} for p in (0.25, 0.5, 1.0)],
    "seo-3.2.1": [{"p": p} for p in (0.25, 0.5, 1.0)],
    "ando-hiai": [{"p": p} for p in (1.0, 2.0, 3.0)],
    "cor-3.6": [{"function": "sinh_inv", "p": p} for p in (0.25, 0.5)],
    "cor-3.8": [{"function": g, "p": p} for g in ("square", "inverse") for p in (0.25, 0.5)],
    "remark-3.9": [{"function": g, "p": p} for g in ("square", "inverse") for p in (0.25, 0.5)],
}


def _spec(theorem):
    try:
        return CHECKS[theorem]
    except KeyError:
        raise UnknownTheoremError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}") from None


def _validate_params(spec, params):
    unknown = set(params) - set(spec.params)
    if unknown:
        raise ValueError(f"{spec.theorem} does not take parameters {sorted(unknown)}")
    if "p" in params and spec.p_range is not None:
        lo, hi = spec.p_range
        if not lo <= float(params["p"]) <= hi:
            raise ValueError(f"{spec.theorem} needs p in [{lo}, {hi}], got {params['p']}")
    if "function" in params and spec.function_claim is not None:
        f = get_function(params["function"])
        if not f.has(spec.function_claim):
            raise ValueError(f"{spec.theorem} needs a function flagged {spec.function_claim}; "
                             f"{f.name} is not")
    if spec.theorem == "remark-2.2":
        for key in ("sigma", "tau"):
            if params.get(key, "arith") not in ("arith", "geom", "harm"):
                raise ValueError(f"{key} must be one of arith, geom, harm")


def variant_label(params):
    return ",".join(f"{k}={params[k]}" for k in sorted(params))


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def trial_rng(seed, theorem, variant, dim, trial):
    key = zlib.crc32(f"{theorem}|{variant}".encode())
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), key, int(dim), int(trial)]))


def sample_pair(rng, mode, cfg):
    """Draw ``(A, B)`` for one trial under a sampling mode."""
    dim = cfg.dim
    A = random_hpd(dim, cfg.m, cfg.M, rng)
    if mode == "spectrum":
        return A, random_hpd(dim, cfg.m, cfg.M, rng)
    L = np.log(cfg.spread)
    u1, u2 = rng.uniform(size=2)
    if mode == "straddle":
        s0, t0 = np.exp(-L * u1), np.exp(L * u2)
        X = np.eye(1) if dim == 1 else random_hpd(dim, s0, t0, rng)
    elif mode == "sandwich":
        a, b = np.exp(L * (2 * u1 - 1)), np.exp(L * (2 * u2 - 1))
        X = random_hpd(dim, min(a, b), max(a, b), rng)
    else:
        raise ValueError(f"unknown sampling mode {mode!r}")
    dec = eig_hermitian(A)
    half = dec.reconstruct(np.sqrt(dec.eigenvalues))
    return A, hermitize(half @ X @ half)


def sample_trial(spec, cfg, variant, trial):
    rng = trial_rng(cfg.seed, spec.theorem, variant, cfg.dim, trial)
    a = rng.uniform() if cfg.alpha is None else cfg.alpha
    b = rng.uniform() if cfg.beta is None else cfg.beta
    if spec.fixed_alpha is not None:
        a = spec.fixed_alpha
    if spec.beta_equals_alpha:
        b = a
    if spec.fixed_beta is not None:
        b = spec.fixed_beta
    A, B = sample_pair(rng, spec.mode, cfg)
    return A, B, float(a), float(b)


def evaluate_trial(theorem, A, B, alpha, beta, cfg, **params):
    """Evaluate one check on explicit inputs (used to re-verify witnesses)."""
    return _spec(theorem).evaluate(A, B, alpha, beta, cfg, **params)


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

@dataclass
class InequalityResult:
    theorem: str
    variant: dict
    dim: int
    trials: int
    slacks: np.ndarray
    tightness: dict
    min_slack: float
    failures: list
    n_failures: int
    skipped: int
    tol: float

    @property
    def passed(self):
        return self.n_failures == 0

    @property
    def label(self):
        v = variant_label(self.variant)
        return f"{self.theorem}[{v}]" if v else self.theorem

    def as_dict(self):
        return {
            "theorem": self.theorem,
            "variant": self.variant,
            "dim": self.dim,
            "trials": self.trials,
            "skipped": self.skipped,
            "min_slack": self.min_slack,
            "tightness": self.tightness,
            "n_failures": self.n_failures,
            "failures": self.failures,
        }


def _failure_record(trial, ev, A, B, alpha, beta):
    rec = {
        "trial": trial,
        "slack": ev.min_slack,
        "inequality": min(ev.slacks, key=ev.slacks.get),
        "A": matrix_to_json(A),
        "B": matrix_to_json(B),
        "alpha": alpha,
        "beta": beta,
    }
    for key in ("s", "t", "lambda", "mu"):
        rec[key] = float(ev.info[key])
    return rec


def run_check(theorem, cfg: TrialConfig, **params) -> InequalityResult:
    """Run ``cfg.trials`` trials of one theorem variant at ``cfg.dim``."""
    spec = _spec(theorem)
    _validate_params(spec, params)
    variant = variant_label(params)
    eps = cfg.eps
    slacks = np.full(cfg.trials, np.inf)
    tightness = {}
    failures = []
    n_failures = skipped = 0
    for trial in range(cfg.trials):
        A, B, a, b = sample_trial(spec, cfg, variant, trial)
        ev = spec.evaluate(A, B, a, b, cfg, **params)
        if ev.skipped:
            skipped += 1
            continue
        for name, value in ev.slacks.items():
            tightness[name] = min(tightness.get(name, np.inf), value)
        slacks[trial] = ev.min_slack
        if ev.min_slack < -eps:
            n_failures += 1
            if len(failures) < MAX_STORED_FAILURES:
                failures.append(_failure_record(trial, ev, A, B, a, b))
    finite = slacks[np.isfinite(slacks)]
    min_slack = float(finite.min()) if finite.size else 0.0
    return InequalityResult(theorem, dict(params), cfg.dim, cfg.trials, slacks,
                            {k: float(v) for k, v in tightness.items()}, min_slack,
                            failures, n_failures, skipped, eps)


def reevaluate_failure(result: InequalityResult, failure: dict, cfg: TrialConfig):
    """Recompute a stored witness from its serialized matrices; returns the slack."""
    A = matrix_from_json(failure["A"])
    B = matrix_from_json(failure["B"])
    ev = evaluate_trial(result.theorem, A, B, failure["alpha"], failure["beta"],
                        replace(cfg, dim=result.dim), **result.variant)
    return ev.min_slack


# one entry point per check ------------------------------------------------

def check_young(cfg):
    return run_check("young", cfg)


def check_fujii(cfg):
    return run_check("fujii-1.2", cfg)


def check_tominaga(cfg):
    return run_check("tominaga-1.2thm", cfg)


def check_thm21(cfg):
    return run_check("thm-2.1", cfg)


def check_remark22(cfg, sigma="arith", tau="harm"):
    return run_check("remark-2.2", cfg, sigma=sigma, tau=tau)


def check_cor23(cfg):
    return run_check("cor-2.3", cfg)


def check_cor26(cfg):
    return run_check("cor-2.6", cfg)


def check_thm34(cfg, f="sqrt"):
    return run_check("thm-3.4", cfg, function=f)


def check_cor35(cfg, p=0.5):
    return run_check("cor-3.5", cfg, p=p)


def check_norm_chain(cfg, p=0.5):
    return run_check("norm-chain", cfg, p=p)


def check_seo(cfg, p=0.5):
    return run_check("seo-3.2.1", cfg, p=p)


def check_ando_hiai(cfg, p=2.0):
    return run_check("ando-hiai", cfg, p=p)


def check_cor36(cfg, f="sinh_inv", p=0.5):
    return run_check("cor-3.6", cfg, function=f, p=p)


def check_cor38(cfg, g="square", p=0.5):
    return run_check("cor-3.8", cfg, function=g, p=p)


def check_remark39(cfg, g="square", p=0.5):
    return run_check("remark-3.9", cfg, function=g, p=p)


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    config: dict
    results: list
    elapsed_ms: int
    version: str = __version__

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def as_dict(self):
        return {
            "config": self.config,
            "library_version": self.version,
            "results": [r.as_dict() for r in self.results],
            "summary": {
                "checks": len(self.results),
                "failed": [f"{r.label}@dim{r.dim}" for r in self.results if not r.passed],
            },
            "pass": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "trials", "dim", "min_slack", "failures"])
        for r in self.results:
            w.writerow([r.label, r.trials, r.dim, repr(r.min_slack), r.n_failures])
        return buf.getvalue()


def resolve_theorems(theorems):
    if theorems is None:
        return list(THEOREM_IDS)
    if isinstance(theorems, str):
        theorems = [theorems]
    out = []
    for t in theorems:
        if t == "all":
            out.extend(x for x in THEOREM_IDS if x not in out)
        elif t in CHECKS:
            if t not in out:
                out.append(t)
        else:
            raise UnknownTheoremError(f"unknown theorem id {t!r}; known: all, {', '.join(THEOREM_IDS)}")
    return out


def suite_units(cfg, theorems, dims):
    """Expand theorem ids into ``(theorem, params, dim)`` work units."""
    units = []
    for t in resolve_theorems(theorems):
        spec = CHECKS[t]
        pinned = {}
        if "function" in spec.params and cfg.function is not None:
            pinned["function"] = cfg.function
        if "p" in spec.params and cfg.p is not None:
            pinned["p"] = float(cfg.p)
        if "sigma" in spec.params:
            pinned.update(sigma=cfg.sigma, tau=cfg.tau) if (cfg.sigma, cfg.tau) != ("arith", "harm") else None
        variants = SUITE_VARIANTS.get(t, [{}])
        if pinned:
            variants = [dict(v, **pinned) for v in variants]
            uniq = []
            for v in variants:
                if v not in uniq:
                    uniq.append(v)
            variants = uniq
        for v in variants:
            _validate_params(spec, v)
            for d in dims:
                units.append((t, v, int(d)))
    return units


def _run_unit(args):
    theorem, params, dim, cfg = args
    return run_check(theorem, replace(cfg, dim=dim), **params)


def run_suite(cfg: TrialConfig, theorems=None, dims=None, jobs=1, timing=False) -> VerificationReport:
    """Run the selected theorems over ``dims`` (default ``(cfg.dim,)``).

    ``jobs > 1`` spreads work units over processes; the report is identical
    either way. ``elapsed_ms`` is 0 unless ``timing`` is set, which keeps
    reports byte-reproducible by default.
    """
    dims = (cfg.dim,) if dims is None else tuple(dims)
    start = time.perf_counter()
    units = [(t, v, d, cfg) for t, v, d in suite_units(cfg, theorems, dims)] if theorems != [] else []
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_unit, units, chunksize=1))
    else:
        results = [_run_unit(u) for u in units]
    elapsed = int(round((time.perf_counter() - start) * 1000)) if timing else 0
    config = cfg.as_dict()
    config["dims"] = list(dims)
    config["theorems"] = resolve_theorems(theorems) if theorems != [] else []
    return VerificationReport(config, results, elapsed)
