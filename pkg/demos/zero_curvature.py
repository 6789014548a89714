"""The isomonodromic flows are compatible with the Lax pair, and a small fault breaks it.

Run with ``python3 demos/zero_curvature.py``.
"""

import random

from twistiso.cli import random_chart
from twistiso.deformation import DeformationVector, general_hamiltonian, zero_curvature_residual
from twistiso.oper import build_oper
from twistiso.reduction import ReducedTimes, alpha_tau, times_backward

rng = random.Random(7)
r = 5
chart = random_chart(rng, r - 3)
rt = ReducedTimes.canonical(r, [rng.randint(-3, 3) for _ in range(r - 3)])
times = times_backward(rt)
print("chart q =", [str(x) for x in chart.q], "p =", [str(x) for x in chart.p])

for j in range(1, r - 2):
    a = alpha_tau(rt, j)
    res = zero_curvature_residual(a, chart, times)
    print(f"tau_{j}: Ham = {general_hamiltonian(a, chart, times)}, residual zero: {res.is_zero()}")

# Every elementary direction e_k, including the trivial ones.
print("all e_k flat:", all(zero_curvature_residual(DeformationVector.basis(r, k), chart, times).is_zero() for k in range(1, 2 * r - 1)))

# Shift the first oper coefficient by one and try again.
oper = build_oper(chart, times)
bad = oper.with_H([oper.H[0] + 1] + list(oper.H[1:]))
broken = [k for k in range(1, 2 * r - 1) if not zero_curvature_residual(DeformationVector.basis(r, k), chart, times, bad).is_zero()]
print("directions broken by the fault:", broken)
