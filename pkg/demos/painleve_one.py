"""Painleve I from a twisted connection with a pole of order four at infinity.

Run with ``python3 demos/painleve_one.py``.
"""

from fractions import Fraction

from twistiso.algebra import MultiPoly
from twistiso.cli import painleve_ode
from twistiso.connection import IrregularTimes, iso_order, spectral_data
from twistiso.oper import DarbouxChart, build_oper, connection_from_chart, gauge_backward
from twistiso.reduction import reduced_hamiltonian

tau = Fraction(3)
chart = DarbouxChart.qp([1], [2])
times = IrregularTimes.canonical(4, [tau])

# One apparent singularity q with momentum p; the normalized connection has L~_12 = l - q.
Lt = connection_from_chart(chart, times)
print("L~_11 =", Lt.poly(0, 0))
print("L~_12 =", Lt.poly(0, 1))

# The oper gauge moves everything into the second row.
oper = build_oper(chart, times)
print("oper coefficient H_0 =", oper.H[0])
print("L_21 =", oper.L.c)
assert gauge_backward(oper).L == Lt.L

# Spectral side: the Birkhoff times come back out of the eigenvalue expansion.
sd = spectral_data(Lt, iso_order(4))
print("times read back:", [str(t) for t in sd.birkhoff_times])

# Symbolic chart: the reduced Hamiltonian is the Painleve I Hamiltonian.
q, p, t = (MultiPoly.var(v) for v in ("q", "p", "tau1"))
print("Ham =", reduced_hamiltonian([t], DarbouxChart.qp([q], [p]), 1))
print("q'' =", painleve_ode()["qddot"])
