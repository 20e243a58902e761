"""Height assignments and the symmetrisation map into height-labelled collections.

A height-labelled necklace is a cyclic word of ``(edge, height)`` pairs
stored in its least rotation.  Collections are compared after sorting
their labelled necklaces, so swapping equal necklace factors (together
with their labels) gives the same collection.  The module of labelled
collections is free: no relations are imposed on it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import NamedTuple

from .cutglue import abstract_edges
from .hpoly import HPoly
from .necklaces import Monomial, Necklace, format_necklace, least_rotation, make_monomial, necklace_key
from .quiver import DoubleQuiver
from .symalg import SymLElement, add_into, format_terms

LabelledWord = tuple[tuple[int, int], ...]


def _least_labelled(word: LabelledWord) -> LabelledWord:
    return min(word[i:] + word[:i] for i in range(len(word)))


class HeightedCollection(NamedTuple):
    necklaces: tuple[LabelledWord, ...]
    idempotents: tuple[Necklace, ...]

    @property
    def size(self) -> int:
        return sum(len(w) for w in self.necklaces)

    def monomial(self) -> Monomial:
        words = [tuple(a for a, _ in w) for w in self.necklaces]
        return make_monomial([least_rotation(w) for w in words] + list(self.idempotents))


def heighted(words, idempotents=()) -> HeightedCollection:
    """Canonical collection from labelled cyclic words.

    Heights must be exactly ``1 .. N`` over the whole collection.
    """
    words = [tuple((int(a), int(hgt)) for a, hgt in w) for w in words]
    heights = sorted(hgt for w in words for _, hgt in w)
    if heights != list(range(1, len(heights) + 1)):
        raise ValueError("heights must be a bijection onto 1..N")
    if any(not w for w in words):
        raise ValueError("empty labelled word")
    canon = sorted(
        (_least_labelled(w) for w in words),
        key=lambda w: (necklace_key(_letters_rot(w)), w),
    )
    return HeightedCollection(tuple(canon), tuple(sorted(idempotents, key=necklace_key)))


def _letters_rot(w: LabelledWord) -> Necklace:
    letters = tuple(a for a, _ in w)
    return min(letters[i:] + letters[:i] for i in range(len(letters)))


def heighted_equal(a: HeightedCollection, b: HeightedCollection) -> bool:
    return heighted(a.necklaces, a.idempotents) == heighted(b.necklaces, b.idempotents)


class HeightedElement:
    """Free linear combination of height-labelled collections."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: DoubleQuiver, terms=None):
        self.quiver = quiver
        self.terms: dict[HeightedCollection, HPoly] = {}
        for k, c in (terms or {}).items():
            add_into(self.terms, k, HPoly.coerce(c))

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HeightedElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            add_into(acc, k, c)
        return HeightedElement(self.quiver, acc)

    def coefficient(self, hc: HeightedCollection) -> HPoly:
        return self.terms.get(heighted(hc.necklaces, hc.idempotents), HPoly())

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda t: (t[0].size, t[0]))
        return format_terms([(format_heighted(self.quiver, k), c) for k, c in items])

    __repr__ = __str__


def format_heighted(dq: DoubleQuiver, hc: HeightedCollection) -> str:
    parts = ["".join(f"({dq.names[a]},{hgt})" for a, hgt in w) for w in hc.necklaces]
    parts += [format_necklace(dq, n) for n in hc.idempotents]
    return "&".join(parts) if parts else "1"


@lru_cache(maxsize=1 << 14)
def phi_w_monomial(mono: Monomial) -> tuple:
    """Average of ``P_H`` over all height assignments, as ``((collection, q), ...)``."""
    xe = abstract_edges(mono)
    n = len(xe.letters)
    groups: dict[int, list[int]] = {}
    for pos, w in enumerate(xe.necklace_of):
        groups.setdefault(w, []).append(pos)
    words = [groups[w] for w in sorted(groups)]
    counts: dict = {}
    for sigma in permutations(range(1, n + 1)):
        labelled = [tuple((xe.letters[p], sigma[p]) for p in w) for w in words]
        key = heighted(labelled, xe.idempotents)
        counts[key] = counts.get(key, 0) + 1
    total = factorial(n)
    return tuple((k, Fraction(c, total)) for k, c in counts.items())


def phi_w(a: SymLElement) -> HeightedElement:
    acc: dict = {}
    for m, c in a.terms.items():
        for k, q in phi_w_monomial(m):
            add_into(acc, k, c * q)
    out = HeightedElement(a.quiver)
    out.terms = acc
    return out
