"""Necklaces and necklace monomials.

A necklace is stored as a plain tuple so that the enumeration kernels can
hash and compare it cheaply:

* a cyclic word is a tuple of non-negative edge ids, stored in its
  lexicographically least rotation;
* the idempotent at vertex ``i`` is the 1-tuple ``(-1 - i,)``.

A monomial (a "collection" of necklaces joined by ``&``) is a tuple of
necklaces sorted by :func:`necklace_key`; the empty tuple is the unit.
"""

from __future__ import annotations

from functools import lru_cache

from .quiver import DoubleQuiver

Necklace = tuple[int, ...]
Monomial = tuple[Necklace, ...]

UNIT: Monomial = ()


class CompositionError(ValueError):
    """A word whose consecutive edges do not compose."""


def idempotent(vertex: int) -> Necklace:
    return (-1 - vertex,)


def is_idempotent(n: Necklace) -> bool:
    return n[0] < 0


def idempotent_vertex(n: Necklace) -> int:
    return -1 - n[0]


def necklace_key(n: Necklace):
    # idempotents first (vertex order), then words by length, then lexicographic
    if n[0] < 0:
        return (0, (-1 - n[0],))
    return (len(n), n)


def monomial_key(m: Monomial):
    return (len(m), tuple(necklace_key(n) for n in m))


def edge_count(m: Monomial) -> int:
    return sum(len(n) for n in m if n[0] >= 0)


def make_monomial(necklaces) -> Monomial:
    return tuple(sorted(necklaces, key=necklace_key))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, key=necklace_key))


@lru_cache(maxsize=1 << 18)
def least_rotation(word: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least rotation of ``word``."""
    n = len(word)
    if n < 2:
        return word
    best = word
    m = min(word)
    for i in range(1, n):
        if word[i] == m:
            r = word[i:] + word[:i]
            if r < best:
                best = r
    return best


def check_cyclic(dq: DoubleQuiver, word) -> None:
    word = tuple(word)
    if not word:
        raise CompositionError("empty word; use an idempotent instead")
    for r, x in enumerate(word):
        if not 0 <= x < dq.num_edges:
            raise CompositionError(f"unknown edge id {x}")
        y = word[(r + 1) % len(word)]
        if 0 <= y < dq.num_edges and dq.head[x] != dq.tail[y]:
            raise CompositionError(
                f"{dq.names[x]} then {dq.names[y]}: head {dq.vertex_names[dq.head[x]]} "
                f"!= tail {dq.vertex_names[dq.tail[y]]}"
            )


def canonical_necklace(dq: DoubleQuiver, word) -> Necklace:
    """Canonical representative of the rotation class of a closed word."""
    word = tuple(word)
    check_cyclic(dq, word)
    return least_rotation(word)


def rotations(word):
    return [word[i:] + word[:i] for i in range(len(word))]


def format_necklace(dq: DoubleQuiver, n: Necklace) -> str:
    if n[0] < 0:
        return "@" + dq.vertex_names[-1 - n[0]]
    return "(" + " ".join(dq.names[x] for x in n) + ")"


def format_monomial(dq: DoubleQuiver, m: Monomial) -> str:
    if not m:
        return "1"
    return "&".join(format_necklace(dq, n) for n in m)


def necklaces_of_length(dq: DoubleQuiver, length: int) -> list[Necklace]:
    """All canonical cyclic words of the given positive length, sorted."""
    return list(_necklaces_of_length(dq, length))


@lru_cache(maxsize=None)
def _necklaces_of_length(dq: DoubleQuiver, length: int) -> tuple[Necklace, ...]:
    out = set()
    out_edges = [[] for _ in range(dq.num_vertices)]
    for x in dq.edge_ids:
        out_edges[dq.tail[x]].append(x)

    def walk(start, v, word):
        if len(word) == length:
            if v == start:
                out.add(least_rotation(tuple(word)))
            return
        for x in out_edges[v]:
            # only words whose first letter is minimal can be canonical
            if x < word[0]:
                continue
            word.append(x)
            walk(start, dq.head[x], word)
            word.pop()

    for x in dq.edge_ids:
        walk(dq.tail[x], dq.head[x], [x])
    return tuple(sorted(out))
