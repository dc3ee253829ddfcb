"""The operator-convex chain with g(x) = 1/x.

g = 1/x is non-negative and operator convex on (0, inf), yet
g(A^p) nabla_a g(B^p) <= lambda g((A #_b B)^p) fails. A commuting pair is
enough to see it. The argument behind the chain needs g(0) finite, and
1/x^2 (the relevant quotient for p = 1) is not Kwong.
"""
import numpy as np

from opmeans.kwong import check_theorem32
from opmeans.verify import TrialConfig, evaluate_trial

A, B = np.eye(2), np.diag([0.5, 1.1])
cfg = TrialConfig(dim=2)
for g in ("square", "inverse"):
    ev = evaluate_trial("cor-3.8", A, B, 0.9, 0.1, cfg, function=g, p=0.5)
    print(f"g={g:8s} s={ev.info['s']:.2f} t={ev.info['t']:.2f} lambda={ev.info['lambda']:.6f} "
          f"slack={ev.min_slack:+.4f}")

r = check_theorem32("inverse", 1.0)
print("\n1/x: g(0) finite:", r["g0_finite"], "| 1/x^2 Kwong verdict:", r["verdict"].verdict)
