"""The commutative algebra Sym L[h] and its tensor powers."""

from __future__ import annotations

from numbers import Rational

from .hpoly import HPoly
from .necklaces import (
    UNIT,
    Monomial,
    edge_count,
    format_monomial,
    idempotent,
    make_monomial,
    canonical_necklace,
    mono_mul,
    monomial_key,
)
from .hpoly import format_h, format_rational
from .quiver import DoubleQuiver


class QuiverMismatch(ValueError):
    pass


def _same_quiver(a, b):
    if a.quiver != b.quiver:
        raise QuiverMismatch("elements live over different quivers")


def add_into(acc: dict, key, c: HPoly) -> None:
    """``acc[key] += c`` dropping the key when the sum vanishes."""
    old = acc.get(key)
    if old is None:
        if c:
            acc[key] = c
        return
    s = old + c
    if s:
        acc[key] = s
    else:
        del acc[key]


class SymLElement:
    """Finite sum ``sum_m c_m * m`` of necklace monomials with HPoly coefficients."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: DoubleQuiver, terms=None):
        self.quiver = quiver
        self.terms: dict[Monomial, HPoly] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                add_into(self.terms, m, HPoly.coerce(c))

    @classmethod
    def zero(cls, quiver):
        return cls(quiver)

    @classmethod
    def unit(cls, quiver, coeff=1):
        return cls(quiver, {UNIT: coeff})

    @classmethod
    def from_monomial(cls, quiver, mono, coeff=1):
        return cls(quiver, {make_monomial(mono): coeff})

    @classmethod
    def necklace(cls, quiver, word, coeff=1):
        """Single-necklace element from a closed word of edge names or ids."""
        ids = [quiver.edge(x) if isinstance(x, str) else x for x in word]
        return cls(quiver, {(canonical_necklace(quiver, ids),): coeff})

    @classmethod
    def vertex(cls, quiver, v, coeff=1):
        i = quiver.vertex(v) if isinstance(v, str) else v
        return cls(quiver, {(idempotent(i),): coeff})

    def __iter__(self):
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, mono) -> HPoly:
        return self.terms.get(make_monomial(mono), HPoly())

    @property
    def max_edges(self) -> int:
        return max((edge_count(m) for m in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, SymLElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        _same_quiver(self, other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            add_into(acc, m, c)
        return _sym(self.quiver, acc)

    def __neg__(self):
        return _sym(self.quiver, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        """Scalar multiplication by a rational or an HPoly."""
        if isinstance(c, (int, Rational, HPoly)):
            c = HPoly.coerce(c)
            acc = {}
            for m, v in self.terms.items():
                add_into(acc, m, v * c)
            return _sym(self.quiver, acc)
        return NotImplemented

    __rmul__ = __mul__

    def __and__(self, other):
        return symmetric_product(self, other)

    def map_coefficients(self, fn) -> "SymLElement":
        acc = {}
        for m, c in self.terms.items():
            add_into(acc, m, fn(c))
        return _sym(self.quiver, acc)

    def h_part(self, k: int) -> "SymLElement":
        """Coefficient of ``h**k`` as an h-free element."""
        return self.map_coefficients(lambda c: HPoly.const(c.coeff(k)))

    def __repr__(self):
        return f"SymLElement({self})"

    def __str__(self):
        return format_terms(
            [(format_monomial(self.quiver, m), c) for m, c in self.sorted_items()]
        )


def _sym(quiver, terms: dict) -> SymLElement:
    e = SymLElement.__new__(SymLElement)
    e.quiver = quiver
    e.terms = terms
    return e


def symmetric_product(a: SymLElement, b: SymLElement) -> SymLElement:
    """The commutative product ``&`` of Sym L[h]."""
    _same_quiver(a, b)
    acc: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            add_into(acc, mono_mul(m1, m2), c1 * c2)
    return _sym(a.quiver, acc)


class TensorElement:
    """Element of the ``arity``-fold tensor power of Sym L[h].

    Keys are ordered tuples of monomials; nothing is symmetrised.
    """

    __slots__ = ("quiver", "arity", "terms")

    def __init__(self, quiver: DoubleQuiver, arity: int = 2, terms=None):
        self.quiver = quiver
        self.arity = arity
        self.terms: dict[tuple[Monomial, ...], HPoly] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                if len(k) != arity:
                    raise ValueError("tensor key of wrong arity")
                add_into(self.terms, tuple(make_monomial(m) for m in k), HPoly.coerce(c))

    @classmethod
    def _raw(cls, quiver, arity, terms):
        t = cls.__new__(cls)
        t.quiver, t.arity, t.terms = quiver, arity, terms
        return t

    @classmethod
    def pure(cls, *elements: SymLElement) -> "TensorElement":
        """``a1 ⊗ a2 ⊗ ...`` expanded over the basis."""
        q = elements[0].quiver
        acc = {(): HPoly.const(1)}
        for e in elements:
            nxt = {}
            for k, c in acc.items():
                for m, v in e.terms.items():
                    add_into(nxt, k + (m,), c * v)
            acc = nxt
        return cls._raw(q, len(elements), acc)

    def __iter__(self):
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(
            self.terms.items(), key=lambda t: tuple(monomial_key(m) for m in t[0])
        )

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def _check(self, other):
        _same_quiver(self, other)
        if self.arity != other.arity:
            raise ValueError("tensor arity mismatch")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            add_into(acc, k, c)
        return TensorElement._raw(self.quiver, self.arity, acc)

    def __neg__(self):
        return TensorElement._raw(
            self.quiver, self.arity, {k: -c for k, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Rational, HPoly)):
            c = HPoly.coerce(c)
            acc = {}
            for k, v in self.terms.items():
                add_into(acc, k, v * c)
            return TensorElement._raw(self.quiver, self.arity, acc)
        return NotImplemented

    __rmul__ = __mul__

    def permute(self, perm) -> "TensorElement":
        """New tensor whose slot ``i`` holds old slot ``perm[i]``."""
        acc = {}
        for k, c in self.terms.items():
            add_into(acc, tuple(k[p] for p in perm), c)
        return TensorElement._raw(self.quiver, self.arity, acc)

    def flip(self) -> "TensorElement":
        if self.arity != 2:
            raise ValueError("flip needs arity 2")
        return self.permute((1, 0))

    def h_part(self, k: int) -> "TensorElement":
        acc = {}
        for key, c in self.terms.items():
            add_into(acc, key, HPoly.const(c.coeff(k)))
        return TensorElement._raw(self.quiver, self.arity, acc)

    def apply(self, slot: int, fn, r: int | None = None) -> "TensorElement":
        """Apply a linear map ``Sym L -> (Sym L)^{⊗r}`` to one slot.

        ``fn`` takes a monomial and returns a SymLElement (r = 1) or a
        TensorElement; the result has arity ``arity - 1 + r``.  Pass ``r``
        when the tensor may be empty.
        """
        acc: dict = {}
        arity = None
        cache = {}
        for key, c in self.terms.items():
            m = key[slot]
            img = cache.get(m)
            if img is None:
                img = cache[m] = fn(m)
            if isinstance(img, SymLElement):
                pieces, r = (((mm,), v) for mm, v in img.terms.items()), 1
            else:
                pieces, r = img.terms.items(), img.arity
            arity = self.arity - 1 + r
            for sub, v in pieces:
                add_into(acc, key[:slot] + tuple(sub) + key[slot + 1 :], c * v)
        if arity is None:
            arity = self.arity - 1 + (1 if r is None else r)
        return TensorElement._raw(self.quiver, arity, acc)

    def contract(self, fn) -> SymLElement:
        """Map every key ``(m1, ..., mk)`` through ``fn`` into Sym L[h]."""
        acc: dict = {}
        for key, c in self.terms.items():
            for m, v in fn(*key).terms.items():
                add_into(acc, m, c * v)
        return _sym(self.quiver, acc)

    def __repr__(self):
        return f"TensorElement({self})"

    def __str__(self):
        return format_terms(
            [
                (" ⊗ ".join(format_monomial(self.quiver, m) for m in k), c)
                for k, c in self.sorted_items()
            ]
        )


def format_terms(items) -> str:
    """Render ``[(basis_text, HPoly)]`` as a signed sum, ordered by h-power."""
    rows = []
    for order, (text, c) in enumerate(items):
        for k, q in c.items():
            rows.append((k, order, text, q))
    if not rows:
        return "0"
    rows.sort(key=lambda r: (r[0], r[1]))
    out = []
    for k, _, text, q in rows:
        mag = abs(q)
        parts = []
        if mag != 1 or (not k and text == "1"):
            parts.append(format_rational(mag))
        if k:
            parts.append(format_h(k))
        if text != "1" or not parts:
            parts.append(text)
        body = " ".join(parts)
        if not out:
            out.append(body if q > 0 else "-" + body)
        else:
            out.append(("+ " if q > 0 else "- ") + body)
    return " ".join(out)
