"""Sparse multivariate polynomials over named variables.

Used for the time-shift polynomials of the isospectral coordinates and,
as a coefficient ring, for symbolic elimination in the smallest case.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .rational import coerce, fmt

__all__ = ["MultiPoly", "multipoly_integrate"]

Monomial = tuple  # sorted tuple of (name, exponent) with exponent > 0


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def _var_key(name: str):
    # t3 < t5 < t11, then by name
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1, name)


class MultiPoly:
    """Immutable sparse polynomial ``{monomial: coefficient}``."""

    __slots__ = ("_t", "variables")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, variables: Iterable[str] = ()):
        t = {}
        names = set(variables)
        for m, c in (terms or {}).items():
            c = coerce(c)
            if c == 0:
                continue
            m = tuple(sorted((v, e) for v, e in m if e))
            t[m] = t.get(m, 0) + c
            if t[m] == 0:
                del t[m]
            names.update(v for v, _ in m)
        self._t = t
        self.variables = frozenset(names)

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c, variables: Iterable[str] = ()) -> "MultiPoly":
        return cls({(): c}, variables)

    # inspection ---------------------------------------------------------
    def terms(self) -> dict:
        return dict(self._t)

    def is_constant(self) -> bool:
        return all(m == () for m in self._t)

    def constant_term(self):
        return self._t.get((), Fraction(0))

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._t), default=0)

    def depends_on(self, name: str) -> bool:
        return any(v == name for m in self._t for v, _ in m)

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _lift(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return MultiPoly({(): x})

    def _ok(self, x) -> bool:
        return isinstance(x, (MultiPoly, int, Fraction)) and not isinstance(x, bool)

    def __add__(self, other):
        if not self._ok(other):
            return NotImplemented
        o = self._lift(other)
        t = dict(self._t)
        for m, c in o._t.items():
            t[m] = t.get(m, 0) + c
        return MultiPoly(t, self.variables | o.variables)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self._t.items()}, self.variables)

    def __sub__(self, other):
        if not self._ok(other):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        if not self._ok(other):
            return NotImplemented
        return self._lift(other) - self

    def __mul__(self, other):
        if not self._ok(other):
            return NotImplemented
        o = self._lift(other)
        t: dict = {}
        for m1, c1 in self._t.items():
            for m2, c2 in o._t.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return MultiPoly(t, self.variables | o.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise ZeroDivisionError("division by a non-constant polynomial")
            other = other.constant_term()
        other = coerce(other)
        return MultiPoly({m: c / other for m, c in self._t.items()}, self.variables)

    def __rtruediv__(self, other):
        if not self.is_constant():
            raise ZeroDivisionError("division by a non-constant polynomial")
        return MultiPoly.const(coerce(other) / self.constant_term(), self.variables)

    def __pow__(self, n: int):
        out = MultiPoly({(): 1}, self.variables)
        for _ in range(n):
            out = out * self
        return out

    # calculus and substitution --------------------------------------------
    def diff(self, name: str) -> "MultiPoly":
        t = {}
        for m, c in self._t.items():
            d = dict(m)
            e = d.get(name, 0)
            if e:
                d[name] = e - 1
                t[tuple(d.items())] = c * e
        return MultiPoly(t, self.variables)

    def integrate(self, name: str) -> "MultiPoly":
        t = {}
        for m, c in self._t.items():
            d = dict(m)
            e = d.get(name, 0) + 1
            d[name] = e
            t[tuple(d.items())] = c / e
        return MultiPoly(t, self.variables | {name})

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute scalars or polynomials for some variables."""
        out = MultiPoly({}, self.variables - set(values))
        for m, c in self._t.items():
            term = MultiPoly({(): c})
            rest = []
            for v, e in m:
                if v in values:
                    term = term * (self._lift(values[v]) ** e)
                else:
                    rest.append((v, e))
            out = out + term * MultiPoly({tuple(rest): 1})
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Full evaluation; every variable that appears must be given."""
        r = self.subs(values)
        if not r.is_constant():
            missing = sorted({v for m in r._t for v, _ in m})
            raise KeyError(f"unassigned variables {missing}")
        return r.constant_term()

    # comparison and rendering ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._t
            return self._t == {(): other}
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_term())
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self._t:
            return "0"

        def order(item):
            m, _ = item
            return (-sum(e for _, e in m), [(_var_key(v), -e) for v, e in m])

        parts = []
        for m, c in sorted(self._t.items(), key=order):
            neg = isinstance(c, (int, Fraction)) and c < 0
            mag = -c if neg else c
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in sorted(m, key=lambda x: _var_key(x[0])))
            if not mono:
                body = fmt(mag) if isinstance(mag, (int, Fraction)) else str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{fmt(mag)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def multipoly_integrate(p: MultiPoly, var: str) -> MultiPoly:
    """Antiderivative in ``var`` with zero constant of integration."""
    return p.integrate(var)
