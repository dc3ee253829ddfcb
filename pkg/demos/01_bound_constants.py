"""How sharp is the reverse arithmetic-geometric mean bound?

For a pair with sA <= B <= tA the harness uses lambda, the larger endpoint
value of ((1-a) + a x) / x**b on [s, t]. This walks through a few intervals,
compares lambda with the Kantorovich and Specht constants, and shows the
bound is attained by a scalar pair at an interval endpoint.
"""
import numpy as np

from opmeans import kantorovich, lambda_bound, mu_bound, specht
from opmeans.bounds import critical_point
from opmeans.verify import TrialConfig, evaluate_trial

print("interval        a     b     lambda     mu      sqrtK(t/s)  max S")
for s, t in [(0.25, 4.0), (0.5, 2.0), (1.0, 9.0), (0.1, 0.9)]:
    for a, b in [(0.5, 0.5), (0.3, 0.7)]:
        lam, mu = lambda_bound(s, t, a, b), mu_bound(s, t, a, b)
        print(f"[{s:4.2f}, {t:4.2f}]  {a:4.2f}  {b:4.2f}  {lam:9.6f}  {mu:9.6f}  "
              f"{np.sqrt(kantorovich(t / s)):9.6f}  {max(specht(s), specht(t)):8.6f}")

print("\nsymmetric interval [1/h, h] with a = b = 1/2 gives sqrt(K(h)):")
for h in (2.0, 4.0, 16.0):
    print(f"  h={h:5.1f}  lambda={lambda_bound(1 / h, h, 0.5, 0.5):.15f}  sqrtK={np.sqrt(kantorovich(h)):.15f}")

print("\ncritical point of the scalar profile for a=0.3, b=0.6:", critical_point(0.3, 0.6))

print("\nendpoint tightness: A = [2], B = t A")
for t in (0.25, 3.0, 20.0):
    ev = evaluate_trial("thm-2.1", np.array([[2.0]]), np.array([[2.0 * t]]), 0.4, 0.7, TrialConfig(dim=1))
    print(f"  t={t:5.2f}  slack of lambda^-1 (A nabla B) <= A # B: {ev.slacks['arith/lambda<=geom']:+.2e}")
