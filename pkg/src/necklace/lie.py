"""Paths, cyclic derivatives, and the necklace Lie bracket and cobracket."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .hpoly import HPoly
from .necklaces import Necklace, format_necklace, idempotent, is_idempotent, least_rotation
from .quiver import DoubleQuiver
from .report import CheckResult, compare
from .symalg import SymLElement, TensorElement, add_into


class Path(NamedTuple):
    """A path ``a_1 ... a_p`` starting at ``start``; ``edges == ()`` is ``1_start``."""

    start: int
    edges: tuple[int, ...]

    def end(self, dq: DoubleQuiver) -> int:
        return dq.head[self.edges[-1]] if self.edges else self.start


def make_path(dq: DoubleQuiver, edges, start: int | None = None) -> Path:
    edges = tuple(edges)
    if not edges:
        if start is None:
            raise ValueError("a trivial path needs its vertex")
        return Path(start, ())
    for a, b in zip(edges, edges[1:]):
        if dq.head[a] != dq.tail[b]:
            raise ValueError(f"{dq.names[a]} and {dq.names[b]} do not compose")
    return Path(dq.tail[edges[0]], edges)


def compose(dq: DoubleQuiver, p: Path, q: Path) -> Path | None:
    """Concatenation ``p q``, or None (zero) when ``p`` does not end where ``q`` starts."""
    if p.end(dq) != q.start:
        return None
    return Path(p.start, p.edges + q.edges)


def pr_l(dq: DoubleQuiver, p: Path) -> Necklace | None:
    """Close a path into a necklace; open paths project to zero (None)."""
    if not p.edges:
        return idempotent(p.start)
    if p.end(dq) != p.start:
        return None
    return least_rotation(p.edges)


def cyclic_partial(dq: DoubleQuiver, f: Necklace, x: int) -> dict[Path, Fraction]:
    """Cyclic derivative of ``f`` by the edge ``x``.

    One term per occurrence of ``x``: the path read cyclically from just
    after the occurrence to just before it.
    """
    out: dict[Path, Fraction] = {}
    if is_idempotent(f):
        return out
    for r, a in enumerate(f):
        if a == x:
            p = Path(dq.head[x], f[r + 1 :] + f[:r])
            out[p] = out.get(p, 0) + 1
    return out


def d_edge(dq: DoubleQuiver, x: int, p: Path) -> dict[tuple[Path, Path], Fraction]:
    """The derivation ``D_x: P -> P ⊗ P`` applied to one path."""
    out: dict = {}
    for r, a in enumerate(p.edges):
        if a == x:
            key = (Path(p.start, p.edges[:r]), Path(dq.head[x], p.edges[r + 1 :]))
            out[key] = out.get(key, 0) + 1
    return out


def _bracket_terms(dq: DoubleQuiver, f: Necklace, g: Necklace) -> dict[Necklace, Fraction]:
    acc: dict[Necklace, Fraction] = {}
    for e in range(dq.n):
        es = dq.reverse(e)
        for first, second, sign in ((e, es, 1), (es, e, -1)):
            df = cyclic_partial(dq, f, first)
            if not df:
                continue
            dg = cyclic_partial(dq, g, second)
            for p, a in df.items():
                for q, b in dg.items():
                    pq = compose(dq, p, q)
                    if pq is None:
                        continue
                    n = pr_l(dq, pq)
                    if n is not None:
                        acc[n] = acc.get(n, 0) + sign * a * b
    return {n: c for n, c in acc.items() if c}


def bracket(dq: DoubleQuiver, f: Necklace, g: Necklace) -> SymLElement:
    """The necklace Lie bracket ``{f, g}``, as single-necklace monomials."""
    return SymLElement(dq, {(n,): c for n, c in _bracket_terms(dq, f, g).items()})


def cobracket(dq: DoubleQuiver, f: Necklace) -> TensorElement:
    """The necklace cobracket ``δ(f)`` in ``L ⊗ L``."""
    acc: dict = {}
    if is_idempotent(f):
        return TensorElement(dq, 2)
    for e in range(dq.n):
        es = dq.reverse(e)
        for cut, inner, sign in ((es, e, 1), (e, es, -1)):
            for p, a in cyclic_partial(dq, f, cut).items():
                for (left, right), b in d_edge(dq, inner, p).items():
                    nl, nr = pr_l(dq, left), pr_l(dq, right)
                    if nl is None or nr is None:
                        continue
                    add_into(acc, ((nl,), (nr,)), HPoly.const(sign * a * b))
    return TensorElement._raw(dq, 2, acc)


def _single(mono) -> Necklace:
    if len(mono) != 1:
        raise ValueError("expected an element of L (single-necklace monomials)")
    return mono[0]


def bracket_elements(a: SymLElement, b: SymLElement) -> SymLElement:
    """Bilinear extension of the bracket to linear combinations of necklaces."""
    dq = a.quiver
    acc: dict = {}
    for m1, c1 in a.terms.items():
        f = _single(m1)
        for m2, c2 in b.terms.items():
            g = _single(m2)
            c = c1 * c2
            for n, v in _bracket_terms(dq, f, g).items():
                add_into(acc, (n,), c * v)
    return SymLElement(dq, acc)


def cobracket_element(a: SymLElement) -> TensorElement:
    out = TensorElement(a.quiver, 2)
    for m, c in a.terms.items():
        out = out + cobracket(a.quiver, _single(m)) * c
    return out


def adjoint_action(f: SymLElement, t: TensorElement) -> TensorElement:
    """``f · t`` for ``t`` in ``L^{⊗k}``: bracket with ``f`` in each slot, summed."""
    dq = f.quiver
    out = TensorElement(dq, t.arity)
    for slot in range(t.arity):
        out = out + t.apply(slot, lambda m: bracket_elements(f, SymLElement(dq, {m: 1})))
    return out


def _neck(dq: DoubleQuiver, f: Necklace) -> SymLElement:
    return SymLElement(dq, {(f,): 1})


def _fmt(dq, *ns) -> str:
    return ", ".join(format_necklace(dq, n) for n in ns)


def check_antisymmetry(dq: DoubleQuiver, f: Necklace, g: Necklace) -> CheckResult:
    return compare("antisymmetry", bracket(dq, f, g), -bracket(dq, g, f), f"f, g = {_fmt(dq, f, g)}")


def check_jacobi(dq: DoubleQuiver, f: Necklace, g: Necklace, k: Necklace) -> CheckResult:
    a, b, c = (_neck(dq, n) for n in (f, g, k))
    total = (
        bracket_elements(a, bracket_elements(b, c))
        + bracket_elements(b, bracket_elements(c, a))
        + bracket_elements(c, bracket_elements(a, b))
    )
    return compare("jacobi", total, SymLElement(dq), f"f, g, k = {_fmt(dq, f, g, k)}")


def check_coantisymmetry(dq: DoubleQuiver, f: Necklace) -> CheckResult:
    d = cobracket(dq, f)
    return compare("coantisymmetry", d, -d.flip(), f"f = {_fmt(dq, f)}")


def check_cojacobi(dq: DoubleQuiver, f: Necklace) -> CheckResult:
    """``(1 + τ + τ²)(δ ⊗ 1)δ(f) = 0`` with ``τ`` the cyclic shift of three slots."""
    t = cobracket(dq, f).apply(0, lambda m: cobracket(dq, _single(m)), r=2)
    total = t + t.permute((1, 2, 0)) + t.permute((2, 0, 1))
    return compare("cojacobi", total, TensorElement(dq, 3), f"f = {_fmt(dq, f)}")


def check_cocycle(dq: DoubleQuiver, f: Necklace, g: Necklace) -> CheckResult:
    """``δ({f,g}) = f·δ(g) - g·δ(f)``."""
    a, b = _neck(dq, f), _neck(dq, g)
    lhs = cobracket_element(bracket(dq, f, g))
    rhs = adjoint_action(a, cobracket(dq, g)) - adjoint_action(b, cobracket(dq, f))
    return compare("cocycle", lhs, rhs, f"f, g = {_fmt(dq, f, g)}")
