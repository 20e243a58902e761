"""Normally ordered polynomial differential operators on Rep_l(Q).

The coordinates are the base-quiver entries ``(e, i, j)``; a term is
``x^a ∂^b`` with every coordinate to the left of every derivation,
stored as the pair ``(a, b)`` of sorted ``(coordinate, exponent)`` tuples.
"""

from __future__ import annotations

import json
from functools import lru_cache
from math import comb, factorial

from .hpoly import HPoly
from .quiver import DoubleQuiver
from .reppoly import DimensionError, Var, VarMono, dim_vector, format_var, vm_degree, vm_mul
from .symalg import QuiverMismatch, add_into, format_terms

Term = tuple[VarMono, VarMono]


def _falling(n: int, k: int) -> int:
    return factorial(n) // factorial(n - k)


def _reorder(b: VarMono, c: VarMono):
    """``∂^b x^c`` in normal order, as ``[(x^{c-k}, ∂^{b-k}, count)]``.

    Per variable ``∂^β x^γ = Σ_k C(β,k) γ!/(γ-k)! x^{γ-k} ∂^{β-k}``.
    """
    bd, cd = dict(b), dict(c)
    shared = [v for v in bd if v in cd]
    out = [((), (), 1)]
    for v in shared:
        beta, gamma = bd[v], cd[v]
        nxt = []
        for kx, kd, n in out:
            for k in range(min(beta, gamma) + 1):
                nxt.append((kx + ((v, k),), kd, n * comb(beta, k) * _falling(gamma, k)))
        out = nxt
    result = []
    for ks, _, n in out:
        cc, bb = dict(cd), dict(bd)
        for v, k in ks:
            cc[v] -= k
            bb[v] -= k
        result.append(
            (
                tuple((v, e) for v, e in sorted(cc.items()) if e),
                tuple((v, e) for v, e in sorted(bb.items()) if e),
                n,
            )
        )
    return result


@lru_cache(maxsize=1 << 16)
def term_product(s: Term, t: Term) -> tuple:
    """``(x^a ∂^b)(x^c ∂^d)`` in normal order as ``((term, n), ...)``."""
    a, b = s
    c, d = t
    if not b or not c:
        return (((vm_mul(a, c), vm_mul(b, d)), 1),)
    acc: dict = {}
    for cx, bd, n in _reorder(b, c):
        key = (vm_mul(a, cx), vm_mul(bd, d))
        acc[key] = acc.get(key, 0) + n
    return tuple((k, n) for k, n in acc.items() if n)


class DiffOp:
    """Sparse ``{(x-monomial, ∂-monomial): HPoly}`` in normal order."""

    __slots__ = ("quiver", "dims", "terms")

    def __init__(self, quiver: DoubleQuiver, dims, terms=None):
        self.quiver = quiver
        self.dims = dim_vector(quiver, dims)
        self.terms: dict[Term, HPoly] = {}
        for k, c in (terms or {}).items():
            add_into(self.terms, k, HPoly.coerce(c))

    @classmethod
    def _raw(cls, quiver, dims, terms):
        out = cls.__new__(cls)
        out.quiver, out.dims, out.terms = quiver, dims, terms
        return out

    @classmethod
    def identity(cls, quiver, dims, c=1):
        return cls(quiver, dims, {((), ()): c})

    def _var(self, x, i, j) -> Var:
        x = self.quiver.edge(x) if isinstance(x, str) else x
        if not self.quiver.in_q(x):
            raise ValueError("operator coordinates live on base-quiver edges")
        if not (0 <= i < self.dims[self.quiver.head[x]] and 0 <= j < self.dims[self.quiver.tail[x]]):
            raise DimensionError("coordinate index out of range")
        return (x, i, j)

    @classmethod
    def multiplication(cls, quiver, dims, x, i, j):
        out = cls(quiver, dims)
        out.terms[(((out._var(x, i, j), 1),), ())] = HPoly.const(1)
        return out

    @classmethod
    def derivation(cls, quiver, dims, x, i, j):
        out = cls(quiver, dims)
        out.terms[((), ((out._var(x, i, j), 1),))] = HPoly.const(1)
        return out

    def _check(self, other):
        if self.quiver != other.quiver:
            raise QuiverMismatch("operators live over different quivers")
        if self.dims != other.dims:
            raise DimensionError("dimension vectors differ")

    def items(self):
        return self.terms.items()

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.quiver == other.quiver and self.dims == other.dims and self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            add_into(acc, k, c)
        return DiffOp._raw(self.quiver, self.dims, acc)

    def __neg__(self):
        return DiffOp._raw(self.quiver, self.dims, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Operator composition ``self ∘ other``; scalars scale."""
        if not isinstance(other, DiffOp):
            c = HPoly.coerce(other)
            if not c:
                return DiffOp._raw(self.quiver, self.dims, {})
            return DiffOp._raw(self.quiver, self.dims, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        acc: dict = {}
        for s, cs in self.terms.items():
            for t, ct in other.terms.items():
                c = cs * ct
                for key, n in term_product(s, t):
                    add_into(acc, key, c * n)
        return DiffOp._raw(self.quiver, self.dims, acc)

    def __rmul__(self, c):
        return self * c

    def commutator(self, other) -> "DiffOp":
        return self * other - other * self

    def sorted_items(self):
        return sorted(
            self.terms.items(),
            key=lambda t: (vm_degree(t[0][0]) + vm_degree(t[0][1]), t[0]),
        )

    def __str__(self):
        return format_terms([(format_term(self.quiver, k), c) for k, c in self.sorted_items()])

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            {
                "coordinates": [[format_var(self.quiver, v), e] for v, e in a],
                "derivations": [["d/d" + format_var(self.quiver, v), e] for v, e in b],
                "coefficient": {str(k): str(q) for k, q in c.items()},
            }
            for (a, b), c in self.sorted_items()
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def format_term(dq: DoubleQuiver, term: Term) -> str:
    a, b = term
    parts = [format_var(dq, v) + (f"^{e}" if e > 1 else "") for v, e in a]
    parts += ["d/d" + format_var(dq, v) + (f"^{e}" if e > 1 else "") for v, e in b]
    return "*".join(parts) if parts else "1"
