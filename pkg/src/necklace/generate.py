"""Basis enumeration and seeded random elements."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .hpoly import HPoly
from .necklaces import Monomial, idempotent, make_monomial, necklaces_of_length, necklace_key
from .quiver import DoubleQuiver
from .symalg import SymLElement


def necklaces_up_to(dq: DoubleQuiver, max_len: int, idempotents: bool = True) -> list:
    out = [idempotent(i) for i in range(dq.num_vertices)] if idempotents else []
    for k in range(1, max_len + 1):
        out.extend(necklaces_of_length(dq, k))
    return out


@lru_cache(maxsize=None)
def _monomials(dq: DoubleQuiver, max_edges: int, max_idempotents: int) -> tuple:
    words = necklaces_up_to(dq, max_edges, idempotents=False)
    words.sort(key=necklace_key)
    out = []

    def rec(start, budget, acc):
        out.append(tuple(acc))
        for i in range(start, len(words)):
            w = words[i]
            if len(w) > budget:
                continue
            acc.append(w)
            rec(i, budget - len(w), acc)
            acc.pop()

    rec(0, max_edges, [])
    idems = [idempotent(i) for i in range(dq.num_vertices)]
    idem_sets = [()]
    frontier = [()]
    for _ in range(max_idempotents):
        frontier = [s + (v,) for s in frontier for v in idems if not s or v >= s[-1]]
        idem_sets.extend(frontier)
    full = {make_monomial(m + s) for m in out for s in idem_sets}
    return tuple(sorted(full, key=lambda m: (sum(len(n) for n in m if n[0] >= 0), len(m), [necklace_key(n) for n in m])))


def monomials(dq: DoubleQuiver, max_edges: int, max_idempotents: int = 1) -> list[Monomial]:
    """Every monomial with at most ``max_edges`` edges and ``max_idempotents`` idempotent factors."""
    return list(_monomials(dq, max_edges, max_idempotents))


def _edges(m: Monomial) -> int:
    return sum(len(n) for n in m if n[0] >= 0)


def monomial_tuples(dq: DoubleQuiver, arity: int, max_edges: int, max_idempotents: int = 1):
    """Ordered tuples of monomials with at most ``max_edges`` edges in total.

    ``max_idempotents`` bounds the number of idempotent factors summed over
    the whole tuple.
    """
    buckets: dict = {}
    for m in monomials(dq, max_edges, max_idempotents):
        e = _edges(m)
        i = len(m) - sum(1 for n in m if n[0] >= 0)
        buckets.setdefault((e, i), []).append(m)
    keys = sorted(buckets)

    def rec(budget, ibudget, acc):
        if len(acc) == arity:
            yield tuple(acc)
            return
        for e, i in keys:
            if e > budget or i > ibudget:
                continue
            for m in buckets[(e, i)]:
                acc.append(m)
                yield from rec(budget - e, ibudget - i, acc)
                acc.pop()

    yield from rec(max_edges, max_idempotents, [])


def random_monomial(rng: random.Random, dq: DoubleQuiver, max_edges: int, max_factors: int) -> Monomial:
    words = necklaces_up_to(dq, max_edges, idempotents=False)
    idems = [idempotent(i) for i in range(dq.num_vertices)]
    budget = rng.randint(0, max_edges)
    factors = []
    for _ in range(rng.randint(0, max_factors)):
        if rng.random() < 0.2 or budget == 0:
            factors.append(rng.choice(idems))
            continue
        fits = [w for w in words if len(w) <= budget]
        if not fits:
            factors.append(rng.choice(idems))
            continue
        w = rng.choice(fits)
        budget -= len(w)
        factors.append(w)
    return make_monomial(factors)


def random_hpoly(rng: random.Random, max_degree: int = 2) -> HPoly:
    while True:
        c = {}
        for k in range(max_degree + 1):
            if rng.random() < 0.5:
                c[k] = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
        p = HPoly(c)
        if p:
            return p


def random_element(
    seed,
    dq: DoubleQuiver,
    max_edges: int = 4,
    max_factors: int = 3,
    max_terms: int = 3,
) -> SymLElement:
    """Deterministic pseudo-random element; ``seed`` is an int or a ``random.Random``."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_monomial(rng, dq, max_edges, max_factors)] = random_hpoly(rng)
    return SymLElement(dq, terms)


def random_necklace(rng: random.Random, dq: DoubleQuiver, max_len: int):
    """Uniform over idempotents and canonical necklaces of length ``<= max_len``."""
    return rng.choice(_necklace_pool(dq, max_len))


@lru_cache(maxsize=None)
def _necklace_pool(dq: DoubleQuiver, max_len: int) -> tuple:
    return tuple(necklaces_up_to(dq, max(max_len, 0)))


def random_necklaces(rng: random.Random, dq: DoubleQuiver, count: int, max_total: int) -> tuple:
    """``count`` necklaces whose lengths sum to at most ``max_total``."""
    out = []
    budget = max_total
    for _ in range(count):
        n = random_necklace(rng, dq, budget)
        if n[0] >= 0:
            budget -= len(n)
        out.append(n)
    return tuple(out)
