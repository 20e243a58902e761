"""Polynomials in the formal parameter h with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class HPoly:
    """Sparse polynomial ``sum c_k h^k`` over the rationals.

    Zero coefficients are never stored.  Instances are treated as immutable
    by everything outside this module.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for k, v in items:
                if k < 0:
                    raise ValueError("negative power of h")
                v = Fraction(v)
                if v:
                    c[k] = c.get(k, 0) + v
                    if not c[k]:
                        del c[k]
        self._c = c

    @classmethod
    def _raw(cls, c: dict) -> "HPoly":
        p = cls.__new__(cls)
        p._c = c
        return p

    @classmethod
    def const(cls, q) -> "HPoly":
        q = Fraction(q)
        return cls._raw({0: q} if q else {})

    @classmethod
    def monomial(cls, k: int, q=1) -> "HPoly":
        q = Fraction(q)
        return cls._raw({k: q} if q else {})

    @classmethod
    def coerce(cls, x) -> "HPoly":
        if isinstance(x, HPoly):
            return x
        if isinstance(x, (int, Rational)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to HPoly")

    def items(self):
        return self._c.items()

    def coeff(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    @property
    def degree(self) -> int:
        return max(self._c) if self._c else -1

    @property
    def lowest(self) -> int:
        return min(self._c) if self._c else -1

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, HPoly):
            return self._c == other._c
        if isinstance(other, (int, Rational)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __neg__(self):
        return HPoly._raw({k: -v for k, v in self._c.items()})

    def __add__(self, other):
        other = HPoly.coerce(other)
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return HPoly._raw(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-HPoly.coerce(other))

    def __rsub__(self, other):
        return HPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return HPoly()
            return HPoly._raw({k: v * other for k, v in self._c.items()})
        if not isinstance(other, HPoly):
            return NotImplemented
        c: dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                s = c.get(i + j, 0) + a * b
                if s:
                    c[i + j] = s
                else:
                    c.pop(i + j, None)
        return HPoly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = HPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "HPoly":
        """Multiply by ``h**k``; negative ``k`` divides, dropping low terms."""
        return HPoly._raw({i + k: v for i, v in self._c.items() if i + k >= 0})

    def at_zero(self) -> Fraction:
        return self.coeff(0)

    def __repr__(self):
        return f"HPoly({format_hpoly(self)})"

    def __str__(self):
        return format_hpoly(self)


H = HPoly.monomial(1)
ONE = HPoly.const(1)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_h(k: int) -> str:
    return "" if k == 0 else ("h" if k == 1 else f"h^{k}")


def format_hpoly(p: HPoly) -> str:
    if not p:
        return "0"
    parts = []
    for k in sorted(p._c):
        q = p._c[k]
        hs = format_h(k)
        mag = format_rational(abs(q))
        if hs:
            body = hs if mag == "1" else f"{mag} {hs}"
        else:
            body = mag
        if not parts:
            parts.append(body if q > 0 else f"-{body}")
        else:
            parts.append(("+ " if q > 0 else "- ") + body)
    return " ".join(parts)
