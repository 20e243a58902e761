"""Exhaustive axiom sweeps over basis monomials.

Everything here runs on the integer signed counts returned by
:func:`necklace.hopf.star_counts` and :func:`necklace.hopf.coproduct_counts`.
For basis inputs the power of ``h/2`` attached to an output key is fixed by
how many edges disappeared, and both sides of every identity checked here
remove edges at the same rate, so comparing the integer counts is the same
as comparing the exact elements.
"""

from __future__ import annotations

from math import factorial

from .hopf import coproduct_counts, star_counts
from .necklaces import UNIT, Monomial
from .quiver import DoubleQuiver


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def _star_lin(dq, terms, s, right=True) -> dict:
    out: dict = {}
    for t, a in terms:
        for u, b in (star_counts(dq, t, s) if right else star_counts(dq, s, t)):
            out[u] = out.get(u, 0) + a * b
    return out


def associativity(dq: DoubleQuiver, p: Monomial, r: Monomial, s: Monomial):
    """``((p*r)*s, p*(r*s))`` as count dictionaries."""
    lhs = _star_lin(dq, star_counts(dq, p, r), s)
    rhs = _star_lin(dq, star_counts(dq, r, s), p, right=False)
    return _clean(lhs), _clean(rhs)


def _coproduct_lin(dq, terms) -> dict:
    out: dict = {}
    for t, a in terms:
        for key, b in coproduct_counts(dq, t):
            out[key] = out.get(key, 0) + a * b
    return out


def bialgebra(dq: DoubleQuiver, p: Monomial, r: Monomial):
    """``(Δ(p*r), Δ(p)*Δ(r))`` as count dictionaries."""
    lhs = _coproduct_lin(dq, star_counts(dq, p, r))
    rhs: dict = {}
    cr = coproduct_counts(dq, r)
    for (a, b), c in coproduct_counts(dq, p):
        for (cc, d), e in cr:
            ce = c * e
            left = star_counts(dq, a, cc)
            right = star_counts(dq, b, d)
            for u, x in left:
                for v, y in right:
                    key = (u, v)
                    rhs[key] = rhs.get(key, 0) + ce * x * y
    return _clean(lhs), _clean(rhs)


def coassociativity(dq: DoubleQuiver, p: Monomial):
    """``((Δ⊗id)Δ(p), (id⊗Δ)Δ(p))`` as count dictionaries."""
    lhs: dict = {}
    rhs: dict = {}
    for (a, b), c in coproduct_counts(dq, p):
        for (a1, a2), d in coproduct_counts(dq, a):
            key = (a1, a2, b)
            lhs[key] = lhs.get(key, 0) + c * d
        for (b1, b2), d in coproduct_counts(dq, b):
            key = (a, b1, b2)
            rhs[key] = rhs.get(key, 0) + c * d
    return _clean(lhs), _clean(rhs)


def counit_law(dq: DoubleQuiver, p: Monomial):
    """``((ε⊗id)Δ(p), (id⊗ε)Δ(p), p)`` as count dictionaries."""
    left: dict = {}
    right: dict = {}
    for (a, b), c in coproduct_counts(dq, p):
        if a == UNIT:
            left[b] = left.get(b, 0) + c
        if b == UNIT:
            right[a] = right.get(a, 0) + c
    return _clean(left), _clean(right), {p: 1}


def antipode_axiom(dq: DoubleQuiver, p: Monomial):
    """``(m(S⊗id)Δ(p), m(id⊗S)Δ(p), ε(p)1)`` as count dictionaries."""
    left: dict = {}
    right: dict = {}
    for (a, b), c in coproduct_counts(dq, p):
        sa = -1 if len(a) & 1 else 1
        sb = -1 if len(b) & 1 else 1
        for u, x in star_counts(dq, a, b):
            left[u] = left.get(u, 0) + sa * c * x
            right[u] = right.get(u, 0) + sb * c * x
    return _clean(left), _clean(right), ({UNIT: 1} if p == UNIT else {})


def diagram(dq: DoubleQuiver, p: Monomial, r: Monomial, dims: tuple):
    """``(tr(p*r), tr(p)⋆tr(r))`` keyed by ``(coordinate monomial, power of h/2)``."""
    from .rep import trace_counts
    from .reppoly import moyal_monomials

    ep, er = _edge_total(p), _edge_total(r)
    lhs: dict = {}
    for u, n in star_counts(dq, p, r):
        k = (ep + er - _edge_total(u)) // 2
        for vm, t in trace_counts(dq, u, dims):
            key = (vm, k)
            lhs[key] = lhs.get(key, 0) + n * t
    rhs: dict = {}
    tr = trace_counts(dq, r, dims)
    for a, ta in trace_counts(dq, p, dims):
        for b, tb in tr:
            for m, d, n in moyal_monomials(dq, a, b):
                key = (m, d)
                rhs[key] = rhs.get(key, 0) + ta * tb * n
    return _clean(lhs), _clean(rhs)


def transport(dq: DoubleQuiver, p: Monomial, dims: tuple):
    """``(ρ(Φ_W(p)), φ_W(tr(p)))`` up to a common factor ``(-h)^s / N!``.

    ``s`` is the number of reverse-edge letters and ``N`` the edge count of
    ``p``; every term on both sides carries exactly that factor, so it is
    divided out and the left side stays integral.
    """
    from .heights import phi_w_monomial
    from .rep import _as_operator, _expand, rho_counts, trace_counts, weyl_ordered

    total = factorial(_edge_total(p))
    lhs: dict = {}
    for hc, q in phi_w_monomial(p):
        scalar = int(q * total)
        for n in hc.idempotents:
            scalar *= dims[-1 - n[0]]
        if not scalar:
            continue
        for t, n in rho_counts(dq, hc, dims):
            lhs[t] = lhs.get(t, 0) + scalar * n
    rhs: dict = {}
    for vm, n in trace_counts(dq, p, dims):
        xd, _ = _as_operator(dq, vm)
        per_var = [(v, weyl_ordered(*xd[v])) for v in sorted(xd)]
        for xs, ds, c in _expand(per_var):
            key = (xs, ds)
            rhs[key] = rhs.get(key, 0) + n * c * total
    return _clean(lhs), _clean(rhs)


def _edge_total(m: Monomial) -> int:
    return sum(len(n) for n in m if n[0] >= 0)
