"""Which scalar functions are Kwong?

A function is Kwong when every matrix [(f(x_i) + f(x_j)) / (x_i + x_j)] at
distinct positive points is positive semidefinite. The sampler can only
refute, so "consistent" means no counterexample turned up. The last section
checks the equivalence with the sqrt transform sqrt(t) f(sqrt(t)) being
operator monotone.
"""
import numpy as np

from opmeans import check_audenaert_equivalence, classify_kwong, kwong_matrix

K = kwong_matrix("square", [1.0, 2.0])
print("Kwong matrix of x^2 at {1, 2}:\n", K)
print("eigenvalues:", np.linalg.eigvalsh(K), "-> x^2 is not Kwong\n")

for name in ("identity", "sqrt", "inverse", "log1p", "sinh_inv", "power:-0.7", "square", "exp", "power:1.5"):
    v = classify_kwong(name)
    extra = ""
    if v.refuted:
        extra = f"  witness points {np.round(v.witness.points, 4).tolist()}"
    print(f"{name:12s} {v.verdict:10s} after {v.trials:3d} trials{extra}")

print("\nsqrt-transform cross-check:")
for name in ("sinh_inv", "power:0.5", "square", "exp"):
    r = check_audenaert_equivalence(name)
    print(f"{name:10s} kwong={r.kwong.verdict:10s} transform={r.transform.verdict:10s} coherent={r.coherent}")
