"""Polynomials on the representation space of the double quiver.

A coordinate ``(x, i, j)`` is the matrix entry ``(M_x)_{ij}`` with
``i < l[head(x)]`` and ``j < l[tail(x)]`` (0-based internally, printed
1-based).  Monomials are sorted tuples of ``(coordinate, exponent)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .hpoly import HPoly
from .quiver import DoubleQuiver
from .symalg import QuiverMismatch, add_into, format_terms

Var = tuple[int, int, int]
VarMono = tuple[tuple[Var, int], ...]


class DimensionError(ValueError):
    pass


def dim_vector(dq: DoubleQuiver, dims) -> tuple[int, ...]:
    """Normalise a dimension vector given as a sequence or a vertex-name mapping."""
    if isinstance(dims, dict):
        missing = [v for v in dq.vertex_names if v not in dims]
        if missing or len(dims) != dq.num_vertices:
            raise DimensionError(f"dimension vector must cover exactly the vertices {list(dq.vertex_names)}")
        dims = [dims[v] for v in dq.vertex_names]
    dims = tuple(int(d) for d in dims)
    if len(dims) != dq.num_vertices:
        raise DimensionError(f"expected {dq.num_vertices} dimensions, got {len(dims)}")
    if any(d < 0 for d in dims):
        raise DimensionError("dimensions must be nonnegative")
    return dims


def coordinates(dq: DoubleQuiver, dims, edges=None) -> list[Var]:
    dims = dim_vector(dq, dims)
    out = []
    for x in edges if edges is not None else range(2 * dq.n):
        for i in range(dims[dq.head[x]]):
            for j in range(dims[dq.tail[x]]):
                out.append((x, i, j))
    return out


def partner(dq: DoubleQuiver, v: Var) -> Var:
    """The coordinate paired with ``v`` by the bivector."""
    x, i, j = v
    return (dq.reverse(x), j, i)


def vm_mul(a: VarMono, b: VarMono) -> VarMono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def vm_degree(m: VarMono) -> int:
    return sum(e for _, e in m)


def format_var(dq: DoubleQuiver, v: Var) -> str:
    x, i, j = v
    return f"M[{dq.names[x]}][{i + 1}][{j + 1}]"


def format_varmono(dq: DoubleQuiver, m: VarMono) -> str:
    if not m:
        return "1"
    return "*".join(format_var(dq, v) + (f"^{e}" if e > 1 else "") for v, e in m)


class RepPoly:
    """Commutative polynomial in matrix coordinates with HPoly coefficients."""

    __slots__ = ("quiver", "dims", "terms")

    def __init__(self, quiver: DoubleQuiver, dims, terms=None):
        self.quiver = quiver
        self.dims = dim_vector(quiver, dims)
        self.terms: dict[VarMono, HPoly] = {}
        for m, c in (terms or {}).items():
            add_into(self.terms, m, HPoly.coerce(c))

    @classmethod
    def _raw(cls, quiver, dims, terms):
        out = cls.__new__(cls)
        out.quiver, out.dims, out.terms = quiver, dims, terms
        return out

    @classmethod
    def constant(cls, quiver, dims, c=1):
        return cls(quiver, dims, {(): c})

    @classmethod
    def coordinate(cls, quiver, dims, x, i, j):
        """``(M_x)_{ij}``; ``x`` is an edge name or id, indices 0-based."""
        out = cls(quiver, dims)
        x = quiver.edge(x) if isinstance(x, str) else x
        if not (0 <= i < out.dims[quiver.head[x]] and 0 <= j < out.dims[quiver.tail[x]]):
            raise DimensionError(f"index ({i + 1},{j + 1}) out of range for {quiver.names[x]}")
        out.terms[(((x, i, j), 1),)] = HPoly.const(1)
        return out

    def _check(self, other):
        if self.quiver != other.quiver:
            raise QuiverMismatch("polynomials live over different quivers")
        if self.dims != other.dims:
            raise DimensionError("dimension vectors differ")

    def items(self):
        return self.terms.items()

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, RepPoly):
            return NotImplemented
        return self.quiver == other.quiver and self.dims == other.dims and self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            add_into(acc, m, c)
        return RepPoly._raw(self.quiver, self.dims, acc)

    def __neg__(self):
        return RepPoly._raw(self.quiver, self.dims, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RepPoly):
            c = HPoly.coerce(other)
            if not c:
                return RepPoly._raw(self.quiver, self.dims, {})
            return RepPoly._raw(self.quiver, self.dims, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                add_into(acc, vm_mul(a, b), ca * cb)
        return RepPoly._raw(self.quiver, self.dims, acc)

    __rmul__ = __mul__

    def h_part(self, k: int) -> "RepPoly":
        acc = {}
        for m, c in self.terms.items():
            q = c.coeff(k)
            if q:
                acc[m] = HPoly.const(q)
        return RepPoly._raw(self.quiver, self.dims, acc)

    def degree(self) -> int:
        return max((vm_degree(m) for m in self.terms), default=0)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda t: (vm_degree(t[0]), t[0]))

    def __str__(self):
        return format_terms([(format_varmono(self.quiver, m), c) for m, c in self.sorted_items()])

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            {
                "monomial": [[format_var(self.quiver, v), e] for v, e in m],
                "coefficient": {str(k): str(q) for k, q in c.items()},
            }
            for m, c in self.sorted_items()
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@lru_cache(maxsize=1 << 18)
def moyal_monomials(dq: DoubleQuiver, a: VarMono, b: VarMono) -> tuple:
    """``a ⋆ b`` for two coordinate monomials as ``((monomial, d, n), ...)``.

    The term ``n * (h/2)^d * monomial`` collects every way of contracting
    ``d`` coordinates of ``a`` against their bivector partners in ``b``.
    Choosing ``k`` of the ``p`` copies of ``v`` and ``k`` of the ``q`` copies
    of its partner, then pairing them, gives ``C(p,k) C(q,k) k!``; the sign
    is ``(-1)^k`` when ``v`` is a reverse-edge coordinate.
    """
    bd = dict(b)
    choices = []
    for v, p in a:
        w = partner(dq, v)
        q = bd.get(w)
        if q:
            neg = not dq.in_q(v[0])
            choices.append(
                (v, w, [(k, (-1) ** k if neg else 1, comb(p, k) * comb(q, k) * factorial(k)) for k in range(min(p, q) + 1)])
            )
    out = [((), 0, 1)]
    for v, w, opts in choices:
        nxt = []
        for drops, d, n in out:
            for k, s, cnt in opts:
                nxt.append((drops + ((v, w, k),) if k else drops, d + k, n * s * cnt))
        out = nxt
    ad, result = dict(a), []
    for drops, d, n in out:
        da, db = dict(ad), dict(bd)
        for v, w, k in drops:
            da[v] -= k
            db[w] -= k
        ma = tuple((v, e) for v, e in sorted(da.items()) if e)
        mb = tuple((v, e) for v, e in sorted(db.items()) if e)
        result.append((vm_mul(ma, mb), d, n))
    return tuple(result)


_HALF = [HPoly.monomial(d, Fraction(1, 2**d)) for d in range(64)]


def classical_moyal(f: RepPoly, g: RepPoly) -> RepPoly:
    """``f ⋆ g = m(exp(h/2 · π)(f ⊗ g))`` for the quiver bivector."""
    f._check(g)
    dq = f.quiver
    acc: dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            c = ca * cb
            for m, d, n in moyal_monomials(dq, a, b):
                add_into(acc, m, c * _HALF[d] * n)
    return RepPoly._raw(dq, f.dims, acc)


def _partial(m: VarMono, v: Var):
    out = []
    hit = 0
    for w, e in m:
        if w == v:
            hit = e
            if e > 1:
                out.append((w, e - 1))
        else:
            out.append((w, e))
    return hit, tuple(out)


def poisson_bracket(f: RepPoly, g: RepPoly) -> RepPoly:
    """``{f, g} = Σ_v σ(v) ∂f/∂v ∂g/∂v'`` with ``v'`` the partner of ``v``.

    ``σ(v) = +1`` on base-quiver coordinates and ``-1`` on reverse ones.
    """
    f._check(g)
    dq = f.quiver
    acc: dict = {}
    for a, ca in f.terms.items():
        for v, _ in a:
            w = partner(dq, v)
            p, da = _partial(a, v)
            sign = 1 if dq.in_q(v[0]) else -1
            for b, cb in g.terms.items():
                q, db = _partial(b, w)
                if q:
                    add_into(acc, vm_mul(da, db), ca * cb * (sign * p * q))
    return RepPoly._raw(dq, f.dims, acc)


def bidifferential(f: RepPoly, g: RepPoly, order: int) -> RepPoly:
    """``m(π^order (f ⊗ g))`` by iterating the bivector; slow reference form."""
    f._check(g)
    dq = f.quiver
    pairs = {(a, b): ca * cb for a, ca in f.terms.items() for b, cb in g.terms.items()}
    for _ in range(order):
        nxt: dict = {}
        for (a, b), c in pairs.items():
            for v, _ in a:
                w = partner(dq, v)
                p, da = _partial(a, v)
                q, db = _partial(b, w)
                if q:
                    sign = 1 if dq.in_q(v[0]) else -1
                    add_into(nxt, (da, db), c * (sign * p * q))
        pairs = nxt
    acc: dict = {}
    for (a, b), c in pairs.items():
        add_into(acc, vm_mul(a, b), c)
    return RepPoly._raw(dq, f.dims, acc)
