"""Abstract edges, matchings, and cutting-and-gluing of necklace collections.

Abstract edges of a monomial are numbered ``0 .. N-1`` by walking its
cyclic words in stored order.  A matching is a tuple of ``(x, y)`` pairs:

* pair matchings pair ``x`` in ``X`` with ``y`` in ``Y`` (indices local to
  each side) where ``pr(y)`` is the reverse of ``pr(x)``;
* internal matchings pair two edges of one ``X``; the first entry is always
  the edge whose letter lies in the base quiver ``Q``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import NamedTuple

from .necklaces import Monomial, Necklace, idempotent, least_rotation, make_monomial
from .quiver import DoubleQuiver


class AbstractEdges(NamedTuple):
    letters: tuple[int, ...]  # pr_X
    succ: tuple[int, ...]  # the cyclic "+1"
    necklace_of: tuple[int, ...]  # index of the word containing each edge
    idempotents: tuple[Necklace, ...]  # idempotent factors, carried through untouched

    def __len__(self):  # number of abstract edges
        return len(self.letters)

    def disjoint_union(self, other: "AbstractEdges") -> "AbstractEdges":
        off = len(self.letters)
        nw = max(self.necklace_of, default=-1) + 1
        return AbstractEdges(
            self.letters + other.letters,
            self.succ + tuple(s + off for s in other.succ),
            self.necklace_of + tuple(i + nw for i in other.necklace_of),
            self.idempotents + other.idempotents,
        )


@lru_cache(maxsize=1 << 16)
def abstract_edges(mono: Monomial) -> AbstractEdges:
    letters: list[int] = []
    succ: list[int] = []
    owner: list[int] = []
    idem = []
    w = 0
    for n in mono:
        if n[0] < 0:
            idem.append(n)
            continue
        base = len(letters)
        k = len(n)
        for j, a in enumerate(n):
            letters.append(a)
            succ.append(base + (j + 1) % k)
            owner.append(w)
        w += 1
    return AbstractEdges(tuple(letters), tuple(succ), tuple(owner), tuple(idem))


def successor(edges: AbstractEdges, partner, x: int) -> int:
    """``f(x) = x+1`` off the cut set, ``f(x) = φ(x)+1`` on it.

    ``partner`` maps each cut edge to its mate (a dict or a list with
    ``None`` for uncut edges).
    """
    p = partner.get(x) if isinstance(partner, dict) else partner[x]
    return edges.succ[x] if p is None else edges.succ[p]


class GlueResult(NamedTuple):
    necklaces: tuple[Necklace, ...]  # orbit necklaces in discovery order, then original idempotents
    orbit_of: tuple[int, ...]  # index into ``necklaces`` of the f-orbit of every abstract edge

    @property
    def monomial(self) -> Monomial:
        return make_monomial(self.necklaces)

    def component(self, cut) -> dict[int, int]:
        """μ: surviving abstract edge -> resulting necklace index."""
        cut = set(cut)
        return {x: o for x, o in enumerate(self.orbit_of) if x not in cut}

    def start(self, cut) -> dict[int, int]:
        """g: cut abstract edge -> resulting necklace index of its orbit."""
        return {x: self.orbit_of[x] for x in cut}


def glue(dq: DoubleQuiver, edges: AbstractEdges, pairs) -> GlueResult:
    """Cut along the matched pairs and glue; orbits of ``f`` become necklaces."""
    n = len(edges.letters)
    partner = [-1] * n
    for x, y in pairs:
        partner[x] = y
        partner[y] = x
    letters, succ = edges.letters, edges.succ
    orbit_of = [-1] * n
    out: list[Necklace] = []
    for s in range(n):
        if orbit_of[s] >= 0:
            continue
        k = len(out)
        word = []
        x = s
        while orbit_of[x] < 0:
            orbit_of[x] = k
            p = partner[x]
            if p < 0:
                word.append(letters[x])
                x = succ[x]
            else:
                x = succ[p]
        if word:
            out.append(least_rotation(tuple(word)))
        else:
            out.append(idempotent(dq.tail[letters[s]]))
    out.extend(edges.idempotents)
    return GlueResult(tuple(out), tuple(orbit_of))


def cut_and_glue_internal(dq: DoubleQuiver, mono: Monomial, pairs) -> GlueResult:
    return glue(dq, abstract_edges(mono), pairs)


def cut_and_glue_pair(dq: DoubleQuiver, p: Monomial, r: Monomial, pairs) -> GlueResult:
    """Glue ``p`` and ``r`` along ``x in X <-> y in Y``; ``Y`` indices are local to ``r``."""
    x_edges = abstract_edges(p)
    off = len(x_edges.letters)
    union = x_edges.disjoint_union(abstract_edges(r))
    return glue(dq, union, [(x, y + off) for x, y in pairs])


def _partial_bijections(xs, ys):
    """Every partial bijection between two position lists, as pair tuples."""
    out = []
    for k in range(min(len(xs), len(ys)) + 1):
        for cx in combinations(xs, k):
            for cy in combinations(ys, k):
                for perm in permutations(cy):
                    out.append(tuple(zip(cx, perm)))
    return out


def _positions(letters) -> dict[int, list[int]]:
    pos: dict[int, list[int]] = {}
    for i, a in enumerate(letters):
        pos.setdefault(a, []).append(i)
    return pos


def enumerate_pair_matchings(dq: DoubleQuiver, xe: AbstractEdges, ye: AbstractEdges):
    """Yield every triple ``(I_X, I_Y, φ)`` exactly once, as a pair tuple."""
    px, py = _positions(xe.letters), _positions(ye.letters)
    groups = []
    for a in sorted(px):
        ys = py.get(dq.reverse(a))
        if ys:
            groups.append(_partial_bijections(px[a], ys))
    for choice in product(*groups):
        yield tuple(pair for group in choice for pair in group)


def enumerate_internal_matchings(dq: DoubleQuiver, xe: AbstractEdges):
    """Yield every ``(I, φ)`` exactly once, as ``(Q-side, Q*-side)`` pairs."""
    pos = _positions(xe.letters)
    groups = []
    for e in range(dq.n):
        xs, ys = pos.get(e), pos.get(dq.reverse(e))
        if xs and ys:
            groups.append(_partial_bijections(xs, ys))
    for choice in product(*groups):
        yield tuple(pair for group in choice for pair in group)


def count_pair_matchings(dq: DoubleQuiver, xe: AbstractEdges, ye: AbstractEdges) -> int:
    px, py = _positions(xe.letters), _positions(ye.letters)
    total = 1
    for a, xs in px.items():
        m = len(py.get(dq.reverse(a), ()))
        n = len(xs)
        total *= sum(comb(n, k) * comb(m, k) * factorial(k) for k in range(min(n, m) + 1))
    return total


def count_internal_matchings(dq: DoubleQuiver, xe: AbstractEdges) -> int:
    pos = _positions(xe.letters)
    total = 1
    for e in range(dq.n):
        n, m = len(pos.get(e, ())), len(pos.get(dq.reverse(e), ()))
        total *= sum(comb(n, k) * comb(m, k) * factorial(k) for k in range(min(n, m) + 1))
    return total
