"""2x2 matrices over any commutative coefficient ring used in the package."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable


@dataclass(frozen=True)
class Mat2:
    """``[[a, b], [c, d]]``."""

    a: Any
    b: Any
    c: Any
    d: Any

    @classmethod
    def of(cls, rows, lift: Callable | None = None) -> "Mat2":
        (a, b), (c, d) = rows
        if lift is not None:
            a, b, c, d = (lift(x) for x in (a, b, c, d))
        return cls(a, b, c, d)

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[2 * i + j]

    def map(self, f: Callable) -> "Mat2":
        return Mat2(*(f(x) for x in self.entries))

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Mat2":
        return self.map(lambda x: -x)

    def __mul__(self, o):
        if isinstance(o, Mat2):
            return Mat2(
                self.a * o.a + self.b * o.c,
                self.a * o.b + self.b * o.d,
                self.c * o.a + self.d * o.c,
                self.c * o.b + self.d * o.d,
            )
        return self.map(lambda x: x * o)

    def __rmul__(self, s):
        return self.map(lambda x: s * x)

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Mat2":
        """Inverse over a field-like ring (entries must support ``/``)."""
        dt = self.det()
        return self.adjugate().map(lambda x: x / dt)

    def derivative(self) -> "Mat2":
        return self.map(lambda x: x.derivative())

    def commutator(self, o: "Mat2") -> "Mat2":
        """``self*o - o*self``."""
        return self * o - o * self

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)
