"""Random fixtures shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from twistiso.connection import IrregularTimes
from twistiso.oper import DarbouxChart


def rat(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def chart(rng: random.Random, g: int) -> DarbouxChart:
    q: list = []
    while len(q) < g:
        x = rat(rng)
        if x not in q:
            q.append(x)
    return DarbouxChart.qp(q, [rat(rng) for _ in range(g)])


def times(rng: random.Random, r: int, hbar=1) -> IrregularTimes:
    t = [rat(rng) for _ in range(2 * r - 2)]
    while t[2 * r - 4] == 0:
        t[2 * r - 4] = rat(rng)
    return IrregularTimes(r, tuple(t), hbar)


def canonical(rng: random.Random, r: int, hbar=1) -> IrregularTimes:
    return IrregularTimes.canonical(r, [rat(rng) for _ in range(r - 3)], hbar)
