"""From Darboux coordinates to coordinates that the isomonodromic flows leave fixed.

Run with ``python3 demos/isospectral_coordinates.py``.
"""

from fractions import Fraction

from twistiso.connection import IrregularTimes
from twistiso.correspondence import (
    flow_compatibility_check,
    geometric_forward,
    lax_forward,
    map_qp_to_uv,
    map_uv_to_qp,
    solve_isospectral_u,
    solve_isospectral_v,
)
from twistiso.errors import InconsistentIntegration
from twistiso.oper import DarbouxChart

r = 6
chart = DarbouxChart.qp([1, 2, -1], [0, 1, Fraction(1, 2)])
times = IrregularTimes.canonical(r, [Fraction(1, 2), 1, -2])

gm = geometric_forward(chart)
lx = lax_forward(gm, times)
uv = map_qp_to_uv(chart, times)
for label, c in (("(Q, P)", gm), ("(Q, R)", lx), ("(u, v)", uv)):
    print(label, [str(x) for x in c.first], [str(x) for x in c.second])
back = map_uv_to_qp(uv, times)
print("round trip:", sorted(zip(back.q, back.p)) == sorted(zip(chart.q, chart.p)))

print("\nQ_k as polynomials in the free odd times:")
for k, e in enumerate(solve_isospectral_u(r).exprs):
    print(f"  Q{k} = {e}")
print("R_k:")
for k, e in enumerate(solve_isospectral_v(r).exprs):
    print(f"  R{k} = {e}")

print("\nmixed partials commute:", flow_compatibility_check(r).ok)

# The displayed weight on the R-system stops integrating at r = 8; weight one keeps going.
try:
    solve_isospectral_v(8)
except InconsistentIntegration as exc:
    print("r = 8, theorem weights:", exc)
print("r = 8, weight one:", len(solve_isospectral_v(8, form="proof").exprs), "coordinates")
