import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opmeans.bounds import lambda_bound
from opmeans.linalg import random_hpd
from opmeans.verify import (
    CHECKS,
    THEOREM_IDS,
    TrialConfig,
    UnknownTheoremError,
    evaluate_trial,
    reevaluate_failure,
    run_check,
    run_suite,
    sample_trial,
    suite_units,
)

SMALL = TrialConfig(dim=3, trials=40)

# theorem id -> params used for the quick per-check runs
QUICK = {
    "thm-3.4": {"function": "sqrt"},
    "cor-3.5": {"p": 0.5},
    "norm-chain": {"p": 0.5},
    "seo-3.2.1": {"p": 0.5},
    "ando-hiai": {"p": 2.0},
    "cor-3.6": {"function": "sinh_inv", "p": 0.5},
    "cor-3.8": {"function": "square", "p": 0.5},
    "remark-3.9": {"function": "square", "p": 0.5},
}


@pytest.mark.parametrize("theorem", THEOREM_IDS)
def test_each_check_passes_small(theorem):
    r = run_check(theorem, SMALL, **QUICK.get(theorem, {}))
    assert r.passed, r.failures[:1]
    assert r.trials == 40 and r.dim == 3


@pytest.mark.parametrize("theorem", THEOREM_IDS)
def test_equal_operands_give_zero_slack(theorem):
    A = random_hpd(3, 1.0, 10.0, seed=7)
    ev = evaluate_trial(theorem, A, A, 0.3, 0.3, TrialConfig(dim=3, m=1.0, M=1.0 + 1e-300),
                        **QUICK.get(theorem, {}))
    assert ev.min_slack >= -1e-12


def test_thm21_tight_at_interval_endpoint_dim1():
    for a, b, t in [(0.3, 0.6, 4.0), (0.5, 0.5, 9.0), (0.9, 0.1, 0.25)]:
        A = np.array([[2.0]])
        ev = evaluate_trial("thm-2.1", A, t * A, a, b, TrialConfig(dim=1))
        assert abs(ev.slacks["arith/lambda<=geom"]) <= 1e-9
        assert ev.info["lambda"] == pytest.approx(lambda_bound(t, t, a, b), rel=1e-14)


def test_fujii_equality_dim1():
    cfg = TrialConfig(dim=1, m=1.0, M=4.0)
    ev = evaluate_trial("fujii-1.2", np.array([[1.0]]), np.array([[4.0]]), 0.5, 0.5, cfg)
    assert abs(ev.slacks["arith/sqrtK<=geom"]) <= 1e-9


def test_remark22_arith_harm_matches_thm21():
    cfg = TrialConfig(dim=3)
    spec = CHECKS["thm-2.1"]
    for trial in range(5):
        A, B, a, b = sample_trial(spec, cfg, "", trial)
        r = evaluate_trial("remark-2.2", A, B, a, b, cfg, sigma="arith", tau="harm").slacks
        t = evaluate_trial("thm-2.1", A, B, a, b, cfg).slacks
        assert r["sigma/lambda<=geom"] == pytest.approx(t["arith/lambda<=geom"], abs=1e-12)
        assert r["geom<=mu*tau"] == pytest.approx(t["geom<=mu*harm"], abs=1e-12)


def test_square_of_root_is_identity_map():
    # with g = square and p = 1/2 the operator-convex chain reduces to the linear one
    from opmeans.functions import get_function
    from opmeans.verify import _g_of_power
    A = random_hpd(3, 0.5, 6.0, seed=2)
    assert np.allclose(_g_of_power(A, get_function("square"), 0.5), A, atol=1e-12)


def test_cor35_p0_is_equality():
    r = run_check("cor-3.5", TrialConfig(dim=3, trials=20), p=0.0)
    assert r.passed and abs(r.min_slack) < 1e-12


def test_straddle_sampler_contains_one():
    cfg = TrialConfig(dim=4)
    from opmeans.means import sandwich_interval
    for trial in range(20):
        A, B, _, _ = sample_trial(CHECKS["thm-3.4"], cfg, "", trial)
        iv = sandwich_interval(A, B)
        assert iv.s <= 1 + 1e-9 and iv.t >= 1 - 1e-9


def test_sampling_is_deterministic_and_order_free():
    spec = CHECKS["thm-2.1"]
    a = sample_trial(spec, SMALL, "", 17)
    b = sample_trial(spec, SMALL, "", 17)
    assert all(np.array_equal(x, y) for x, y in zip(a[:2], b[:2])) and a[2:] == b[2:]
    r1 = run_check("thm-2.1", SMALL)
    r2 = run_check("thm-2.1", TrialConfig(dim=3, trials=20))
    assert np.array_equal(r1.slacks[:20], r2.slacks)


def test_mutation_detected_with_witnesses():
    cfg = TrialConfig(dim=2, trials=200, lambda_factor=0.5)
    r = run_check("thm-2.1", cfg)
    assert not r.passed and r.failures
    f = r.failures[0]
    assert set(f) >= {"trial", "slack", "A", "B", "alpha", "beta", "s", "t", "lambda", "mu"}
    assert [x["trial"] for x in r.failures] == sorted(x["trial"] for x in r.failures)


def test_witnesses_reevaluate_exactly():
    cfg = TrialConfig(dim=3, trials=100, lambda_factor=0.9)
    r = run_check("thm-2.1", cfg)
    assert r.failures
    for f in r.failures:
        back = json.loads(json.dumps(f))
        assert abs(reevaluate_failure(r, back, cfg) - f["slack"]) <= 1e-12


def test_validation():
    with pytest.raises(UnknownTheoremError):
        run_check("thm-9.9", SMALL)
    with pytest.raises(ValueError):
        run_check("cor-3.5", SMALL, p=2.0)
    with pytest.raises(ValueError):
        run_check("thm-3.4", SMALL, function="square")
    with pytest.raises(ValueError):
        run_check("cor-3.8", SMALL, function="sqrt", p=0.25)
    with pytest.raises(ValueError):
        TrialConfig(m=2.0, M=1.0)


def test_empty_suite_passes():
    rep = run_suite(SMALL, [])
    assert rep.passed and rep.results == []
    assert json.loads(rep.to_json())["pass"] is True


def test_suite_variants_and_pinning():
    units = suite_units(SMALL, ["thm-3.4"], (1, 2))
    assert len(units) == 8
    pinned = suite_units(TrialConfig(function="log1p"), ["thm-3.4"], (2,))
    assert pinned == [("thm-3.4", {"function": "log1p"}, 2)]


def test_report_formats():
    rep = run_suite(TrialConfig(dim=2, trials=10), ["young", "cor-3.5"], dims=(1, 2))
    d = json.loads(rep.to_json())
    assert set(d) >= {"config", "results", "pass", "elapsed_ms"}
    assert d["elapsed_ms"] == 0
    lines = rep.to_csv().splitlines()
    assert lines[0] == "theorem,trials,dim,min_slack,failures"
    assert len(lines) == 1 + len(rep.results)
    assert lines[-1].startswith("cor-3.5[p=1.0],10,2,")


def test_parallel_report_identical():
    cfg = TrialConfig(dim=2, trials=15)
    a = run_suite(cfg, ["thm-2.1", "cor-3.6"], dims=(1, 2)).to_json()
    b = run_suite(cfg, ["thm-2.1", "cor-3.6"], dims=(1, 2), jobs=3).to_json()
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["young", "thm-2.1", "thm-3.4", "cor-3.8", "remark-3.9"]),
       st.integers(0, 10**6), st.floats(1.0, 100.0))
def test_scale_invariance_property(theorem, trial, c):
    # the checks are jointly homogeneous of degree 1 in (A, B); operands are
    # pre-scaled so both sides stay above the unit floor of the normalization
    params = {"thm-3.4": {"function": "identity"},
              "cor-3.8": {"function": "square", "p": 0.5},
              "remark-3.9": {"function": "square", "p": 0.5}}.get(theorem, {})
    cfg = TrialConfig(dim=3)
    A, B, a, b = sample_trial(CHECKS[theorem], cfg, "", trial)
    A, B = 10 * A, 10 * B
    s1 = evaluate_trial(theorem, A, B, a, b, cfg, **params).slacks
    s2 = evaluate_trial(theorem, c * A, c * B, a, b, cfg, **params).slacks
    for k in s1:
        assert s2[k] == pytest.approx(s1[k], abs=1e-9)
