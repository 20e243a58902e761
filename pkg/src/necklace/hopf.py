"""The Moyal-type Hopf structure on Sym L[h]: star product, coproduct, antipode, counit."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cutglue import (
    abstract_edges,
    enumerate_internal_matchings,
    enumerate_pair_matchings,
    glue,
)
from .hpoly import HPoly
from .lie import bracket, cobracket
from .necklaces import UNIT, Monomial, Necklace, make_monomial
from .quiver import DoubleQuiver
from .report import CheckResult, combine, compare
from .symalg import QuiverMismatch, SymLElement, TensorElement, add_into

_HALF_POWERS = [Fraction(1, 2**k) for k in range(64)]


def _edges(m: Monomial) -> int:
    return sum(len(n) for n in m if n[0] >= 0)


@lru_cache(maxsize=1 << 18)
def star_counts(dq: DoubleQuiver, p: Monomial, r: Monomial) -> tuple:
    """Signed matching counts of ``p *_h r``.

    Returns ``((monomial, n), ...)``; the true coefficient of a monomial
    ``u`` is ``n * (h/2)**k`` with ``k = (|p| + |r| - |u|) / 2`` edges
    removed per side, so the h-power never has to be stored.
    """
    xe, ye = abstract_edges(p), abstract_edges(r)
    if not xe.letters or not ye.letters:
        return ((make_monomial(p + r), 1),)
    union = xe.disjoint_union(ye)
    off = len(xe.letters)
    ylet = ye.letters
    n = dq.n
    acc: dict = {}
    for pairs in enumerate_pair_matchings(dq, xe, ye):
        if pairs:
            sign = -1 if sum(1 for _, y in pairs if ylet[y] < n) & 1 else 1
            res = glue(dq, union, [(x, y + off) for x, y in pairs])
            mono = make_monomial(res.necklaces)
        else:
            sign = 1
            mono = make_monomial(p + r)
        acc[mono] = acc.get(mono, 0) + sign
    return tuple((m, c) for m, c in acc.items() if c)


@lru_cache(maxsize=1 << 17)
def star_monomials(dq: DoubleQuiver, p: Monomial, r: Monomial) -> tuple:
    """``p *_h r`` for two monomials, as ``((monomial, HPoly), ...)``."""
    e = _edges(p) + _edges(r)
    out = []
    for m, c in star_counts(dq, p, r):
        k = (e - _edges(m)) // 2
        out.append((m, HPoly._raw({k: c * _HALF_POWERS[k]})))
    return tuple(out)


def star(a: SymLElement, b: SymLElement) -> SymLElement:
    """The Moyal-type product ``a *_h b``."""
    if a.quiver != b.quiver:
        raise QuiverMismatch("elements live over different quivers")
    dq = a.quiver
    acc: dict = {}
    for p, cp in a.terms.items():
        for r, cr in b.terms.items():
            c = cp * cr
            for m, v in star_monomials(dq, p, r):
                add_into(acc, m, c * v)
    return SymLElement(dq, acc)


def _colourings(num: int, constraints):
    """Assignments ``c`` in {1,2}^num with ``c[a] != c[b]`` for every constraint.

    Yields ``(c, sign)`` where ``sign`` multiplies +1 when ``c[a] < c[b]``
    and -1 when ``c[a] > c[b]``.
    """
    adj = [[] for _ in range(num)]
    for a, b in constraints:
        adj[a].append(b)
        adj[b].append(a)
    base = [0] * num
    seen = [False] * num
    comps = []
    for s in range(num):
        if seen[s]:
            continue
        seen[s] = True
        base[s] = 1
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    base[v] = 3 - base[u]
                    comp.append(v)
                    stack.append(v)
                elif base[v] == base[u]:
                    return  # odd cycle: every assignment has a zero factor
        comps.append(comp)
    for flips in range(1 << len(comps)):
        c = list(base)
        for i, comp in enumerate(comps):
            if flips >> i & 1:
                for v in comp:
                    c[v] = 3 - c[v]
        sign = 1
        for a, b in constraints:
            if c[a] > c[b]:
                sign = -sign
        yield c, sign


@lru_cache(maxsize=1 << 17)
def coproduct_counts(dq: DoubleQuiver, p: Monomial) -> tuple:
    """Signed counts of ``Δ_h(p)`` as ``(((left, right), n), ...)``.

    The true coefficient is ``n * (h/2)**k`` where ``2k`` edges were cut.
    """
    xe = abstract_edges(p)
    acc: dict = {}
    for pairs in enumerate_internal_matchings(dq, xe):
        if pairs:
            res = glue(dq, xe, pairs)
            necks, orbit = res.necklaces, res.orbit_of
            succ = xe.succ
            constraints = []
            dead = False
            for x, _y in pairs:  # x is the Q-side edge of the pair
                a, b = orbit[x], orbit[succ[x]]
                if a == b:
                    dead = True
                    break
                constraints.append((a, b))
            if dead:
                continue
        else:
            necks = p
            constraints = []
        for c, sign in _colourings(len(necks), constraints):
            left = make_monomial([n for n, ci in zip(necks, c) if ci == 1])
            right = make_monomial([n for n, ci in zip(necks, c) if ci == 2])
            key = (left, right)
            acc[key] = acc.get(key, 0) + sign
    return tuple((k, c) for k, c in acc.items() if c)


@lru_cache(maxsize=1 << 16)
def coproduct_monomial(dq: DoubleQuiver, p: Monomial) -> tuple:
    """``Δ_h(p)`` for a monomial, as ``(((left, right), HPoly), ...)``."""
    e = _edges(p)
    out = []
    for (a, b), c in coproduct_counts(dq, p):
        k = (e - _edges(a) - _edges(b)) // 2
        out.append(((a, b), HPoly._raw({k: c * _HALF_POWERS[k]})))
    return tuple(out)


def coproduct(a: SymLElement) -> TensorElement:
    """The Moyal-type coproduct ``Δ_h``."""
    dq = a.quiver
    acc: dict = {}
    for p, cp in a.terms.items():
        for key, v in coproduct_monomial(dq, p):
            add_into(acc, key, cp * v)
    return TensorElement._raw(dq, 2, acc)


def sign_component(c, pairs, start, succ) -> int:
    """Sign of one component assignment.

    ``c`` maps resulting-necklace index to 1 or 2, ``pairs`` lists
    ``(x, y)`` with ``x`` the Q-side edge, ``start`` is the map g from an
    abstract edge to the index of its resulting necklace and ``succ`` the
    cyclic successor.
    """
    s = 1
    for x, _y in pairs:
        a, b = c[start[x]], c[start[succ[x]]]
        if a == b:
            return 0
        if a > b:
            s = -s
    return s


def antipode(a: SymLElement) -> SymLElement:
    """``S(P_1 & ... & P_m) = (-1)^m P_1 & ... & P_m``; idempotents count."""
    return SymLElement(
        a.quiver, {m: (-c if len(m) & 1 else c) for m, c in a.terms.items()}
    )


def counit(a: SymLElement) -> HPoly:
    return a.terms.get(UNIT, HPoly())


def unit(dq: DoubleQuiver) -> SymLElement:
    return SymLElement.unit(dq)


def basis(dq: DoubleQuiver, m: Monomial) -> SymLElement:
    return SymLElement(dq, {m: 1})


def tensor_star(s: TensorElement, t: TensorElement) -> TensorElement:
    """Slotwise product ``(A ⊗ B) * (C ⊗ D) = (A * C) ⊗ (B * D)``."""
    if s.arity != t.arity:
        raise ValueError("tensor arity mismatch")
    dq = s.quiver
    acc: dict = {}
    for k1, c1 in s.terms.items():
        for k2, c2 in t.terms.items():
            partial = {(): c1 * c2}
            for m1, m2 in zip(k1, k2):
                nxt: dict = {}
                for key, v in partial.items():
                    for m, w in star_monomials(dq, m1, m2):
                        add_into(nxt, key + (m,), v * w)
                partial = nxt
            for key, v in partial.items():
                add_into(acc, key, v)
    return TensorElement._raw(dq, s.arity, acc)


def coproduct_slot(t: TensorElement, slot: int) -> TensorElement:
    """Apply ``Δ_h`` to one slot of a tensor."""
    dq = t.quiver
    return t.apply(slot, lambda m: TensorElement._raw(dq, 2, dict(coproduct_monomial(dq, m))), r=2)


def multiply_slots(t: TensorElement, left=lambda e: e, right=lambda e: e) -> SymLElement:
    """``m ∘ (left ⊗ right)`` on an arity-2 tensor, ``m`` the star product."""
    dq = t.quiver
    return t.contract(
        lambda a, b: star(left(basis(dq, a)), right(basis(dq, b)))
    )


def _apply_counit(t: TensorElement, slot: int) -> SymLElement:
    """``(ε ⊗ id)`` for ``slot = 0`` or ``(id ⊗ ε)`` for ``slot = 1``."""
    acc: dict = {}
    for key, c in t.terms.items():
        if key[slot] == UNIT:
            add_into(acc, key[1 - slot], c)
    return SymLElement(t.quiver, acc)


def check_associativity(p: SymLElement, r: SymLElement, s: SymLElement) -> CheckResult:
    return compare(
        "associativity", star(star(p, r), s), star(p, star(r, s)), f"P = {p}\nR = {r}\nS = {s}"
    )


def check_coassociativity(p: SymLElement) -> CheckResult:
    d = coproduct(p)
    return compare("coassociativity", coproduct_slot(d, 0), coproduct_slot(d, 1), f"P = {p}")


def check_bialgebra(p: SymLElement, r: SymLElement) -> CheckResult:
    return compare(
        "bialgebra",
        coproduct(star(p, r)),
        tensor_star(coproduct(p), coproduct(r)),
        f"P = {p}\nR = {r}",
    )


def check_antipode(p: SymLElement) -> CheckResult:
    """Both antipode identities and ``S∘S = id``."""
    d = coproduct(p)
    target = SymLElement(p.quiver, {UNIT: counit(p)})
    return combine(
        "antipode",
        [
            compare("antipode", multiply_slots(d, left=antipode), target, f"m(S⊗id)Δ, P = {p}"),
            compare("antipode", multiply_slots(d, right=antipode), target, f"m(id⊗S)Δ, P = {p}"),
            compare("antipode", antipode(antipode(p)), p, f"S∘S, P = {p}"),
        ],
    )


def check_counit(p: SymLElement) -> CheckResult:
    d = coproduct(p)
    return combine(
        "counit",
        [
            compare("counit", _apply_counit(d, 0), p, f"(ε⊗id)Δ, P = {p}"),
            compare("counit", _apply_counit(d, 1), p, f"(id⊗ε)Δ, P = {p}"),
        ],
    )


def _project(a: SymLElement) -> SymLElement:
    """Keep the single-necklace monomials: the projection Sym L -> L."""
    return SymLElement(a.quiver, {m: c for m, c in a.terms.items() if len(m) == 1})


def _project2(t: TensorElement) -> TensorElement:
    return TensorElement._raw(
        t.quiver, t.arity, {k: c for k, c in t.terms.items() if all(len(m) == 1 for m in k)}
    )


def check_classical_limits(dq: DoubleQuiver, f: Necklace, g: Necklace) -> CheckResult:
    """Order-h parts of the commutator and co-commutator against ``{f,g}`` and ``δ(f)``."""
    a, b = SymLElement(dq, {(f,): 1}), SymLElement(dq, {(g,): 1})
    comm = star(a, b) - star(b, a)
    cocomm = coproduct(a) - coproduct(a).flip()
    return combine(
        "classical",
        [
            compare("classical", comm.h_part(0), SymLElement(dq), f"h^0 of [f,g]_*, f = {a}, g = {b}"),
            compare("classical", _project(comm.h_part(1)), bracket(dq, f, g), f"bracket, f = {a}, g = {b}"),
            compare("classical", cocomm.h_part(0), TensorElement(dq, 2), f"h^0 of Δ - Δ^op, f = {a}"),
            compare("classical", _project2(cocomm.h_part(1)), cobracket(dq, f), f"cobracket, f = {a}"),
        ],
    )
