"""Trace maps, Weyl symmetrisation, the operator representation ρ, and the checkers
relating them to the necklace side."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .diffop import DiffOp
from .generate import monomials
from .heights import HeightedCollection, HeightedElement, phi_w
from .hopf import star
from .hpoly import HPoly
from .lie import bracket
from .necklaces import Monomial, Necklace, format_monomial, format_necklace
from .quiver import DoubleQuiver
from .report import CheckResult, compare
from .reppoly import RepPoly, VarMono, classical_moyal, dim_vector, poisson_bracket, vm_mul
from .symalg import SymLElement, add_into


@lru_cache(maxsize=1 << 16)
def trace_necklace(dq: DoubleQuiver, word: Necklace, dims: tuple) -> tuple:
    """``tr(a_1 ... a_m)`` as ``((monomial, n), ...)``.

    Edge ``a_r`` contributes ``(M_{a_r})_{i_{r+1} i_r}``, so a path is the
    matrix product taken right to left: ``tr(M_{a_m} ... M_{a_1})``.
    """
    if word[0] < 0:
        d = dims[-1 - word[0]]
        return (((), d),) if d else ()
    m = len(word)
    ranges = [range(dims[dq.tail[a]]) for a in word]
    acc: dict = {}
    for idx in product(*ranges):
        vars_: dict = {}
        for r, a in enumerate(word):
            v = (a, idx[(r + 1) % m], idx[r])
            vars_[v] = vars_.get(v, 0) + 1
        key = tuple(sorted(vars_.items()))
        acc[key] = acc.get(key, 0) + 1
    return tuple(acc.items())


def _mul_counts(a, b) -> tuple:
    acc: dict = {}
    for ma, na in a:
        for mb, nb in b:
            k = vm_mul(ma, mb)
            acc[k] = acc.get(k, 0) + na * nb
    return tuple((k, n) for k, n in acc.items() if n)


@lru_cache(maxsize=1 << 16)
def trace_counts(dq: DoubleQuiver, mono: Monomial, dims: tuple) -> tuple:
    """``tr_l`` of a monomial as integer-coefficient ``((monomial, n), ...)``."""
    out: tuple = (((), 1),)
    for n in mono:
        out = _mul_counts(out, trace_necklace(dq, n, dims))
    return out


def tr_l(f: SymLElement, dims) -> RepPoly:
    dq = f.quiver
    dims = dim_vector(dq, dims)
    acc: dict = {}
    for m, c in f.terms.items():
        for vm, n in trace_counts(dq, m, dims):
            add_into(acc, vm, c * n)
    return RepPoly._raw(dq, dims, acc)


@lru_cache(maxsize=None)
def weyl_ordered(a: int, b: int) -> tuple:
    """Normal form of the symmetrised ``x^a ∂^b`` as ``((p, q, coeff), ...)``.

    ``Sym(x^a ∂^b) = Σ_k k! C(a,k) C(b,k) / 2^k · x^{a-k} ∂^{b-k}``.
    """
    return tuple(
        (a - k, b - k, Fraction(factorial(k) * comb(a, k) * comb(b, k), 2**k))
        for k in range(min(a, b) + 1)
    )


def _as_operator(dq: DoubleQuiver, vm: VarMono):
    """Split a coordinate monomial into per-variable ``(x-exponent, ∂-exponent)``.

    ``(M_{e*})_{ij}`` becomes ``-h ∂/∂(M_e)_{ji}``; returns the exponent map and
    the number of reverse-edge factors (the power of ``-h``).
    """
    xd: dict = {}
    nstar = 0
    for (x, i, j), e in vm:
        if dq.in_q(x):
            v = (x, i, j)
            a, b = xd.get(v, (0, 0))
            xd[v] = (a + e, b)
        else:
            v = (dq.reverse(x), j, i)
            a, b = xd.get(v, (0, 0))
            xd[v] = (a, b + e)
            nstar += e
    return xd, nstar


def _expand(per_var, one=1) -> list:
    """Multiply normal forms of distinct (commuting) variables."""
    out = [((), (), one)]
    for v, forms in per_var:
        nxt = []
        for xs, ds, c in out:
            for p, q, w in forms:
                nxt.append((xs + (((v, p),) if p else ()), ds + (((v, q),) if q else ()), c * w))
        out = nxt
    return out


def weyl_monomial(dq: DoubleQuiver, vm: VarMono) -> tuple:
    """``φ_W`` of one coordinate monomial as ``((term, HPoly), ...)``."""
    xd, nstar = _as_operator(dq, vm)
    per_var = [(v, weyl_ordered(*xd[v])) for v in sorted(xd)]
    scale = HPoly.monomial(nstar, (-1) ** nstar)
    acc: dict = {}
    for xs, ds, c in _expand(per_var, Fraction(1)):
        add_into(acc, (xs, ds), scale * c)
    return tuple(acc.items())


def weyl_symmetrize(f: RepPoly) -> DiffOp:
    """Average over all orderings of the operator factors of each monomial."""
    dq = f.quiver
    acc: dict = {}
    for vm, c in f.terms.items():
        for t, w in weyl_monomial(dq, vm):
            add_into(acc, t, c * w)
    return DiffOp._raw(dq, f.dims, acc)


@lru_cache(maxsize=None)
def _ordered_word(word: tuple) -> tuple:
    """Normal form of a product of ``x`` (True) and ``∂`` (False) factors, left to right."""
    state = {(0, 0): 1}
    for is_x in word:
        nxt: dict = {}
        for (p, q), n in state.items():
            if is_x:
                nxt[(p + 1, q)] = nxt.get((p + 1, q), 0) + n
                if q:
                    nxt[(p, q - 1)] = nxt.get((p, q - 1), 0) + n * q
            else:
                nxt[(p, q + 1)] = nxt.get((p, q + 1), 0) + n
        state = nxt
    return tuple((p, q, n) for (p, q), n in sorted(state.items()))


def rho_counts(dq: DoubleQuiver, hc: HeightedCollection, dims: tuple) -> tuple:
    """``ρ`` of one labelled collection as ``((term, n), ...)`` with integer ``n``.

    The true operator is ``(-h)^s · Π l_v · Σ n·term`` where ``s`` counts
    reverse-edge letters and ``v`` runs over the idempotent factors.
    """
    return _rho_counts(dq, hc.necklaces, dims)


@lru_cache(maxsize=1 << 16)
def _rho_counts(dq: DoubleQuiver, necklaces, dims: tuple) -> tuple:
    slots: list[range] = []
    edges = []  # (height, base edge, row slot, column slot, is coordinate)
    for w in necklaces:
        base = len(slots)
        m = len(w)
        for r, (a, hgt) in enumerate(w):
            slots.append(range(dims[dq.tail[a]]))
            out, inn = base + (r + 1) % m, base + r
            if dq.in_q(a):
                edges.append((hgt, a, out, inn, True))
            else:
                edges.append((hgt, dq.reverse(a), inn, out, False))
    edges.sort()
    acc: dict = {}
    for idx in product(*slots):
        words: dict = {}
        for _, e, i, j, is_x in edges:
            v = (e, idx[i], idx[j])
            if v in words:
                words[v] += (is_x,)
            else:
                words[v] = (is_x,)
        xs, ds, multi = [], [], []
        for v in sorted(words):
            w = words[v]
            if len(w) == 1:
                (xs if w[0] else ds).append((v, 1))
            else:
                multi.append((v, _ordered_word(w)))
        if not multi:
            key = (tuple(xs), tuple(ds))
            acc[key] = acc.get(key, 0) + 1
            continue
        for mx, md, n in _expand(multi):
            key = (_merge(xs, mx), _merge(ds, md))
            acc[key] = acc.get(key, 0) + n
    return tuple((k, n) for k, n in acc.items() if n)


def _merge(a, b) -> tuple:
    return tuple(sorted(a + list(b))) if b else tuple(a)


def _rho_scale(dq: DoubleQuiver, hc: HeightedCollection, dims: tuple) -> HPoly:
    s = sum(1 for w in hc.necklaces for a, _ in w if not dq.in_q(a))
    scalar = 1
    for n in hc.idempotents:
        scalar *= dims[-1 - n[0]]
    return HPoly.monomial(s, (-1) ** s * scalar)


def rho(dq: DoubleQuiver, hc: HeightedCollection, dims) -> DiffOp:
    """Operators composed in ascending height, height 1 leftmost."""
    dims = dim_vector(dq, dims)
    scale = _rho_scale(dq, hc, dims)
    acc: dict = {}
    if scale:
        for t, n in rho_counts(dq, hc, dims):
            add_into(acc, t, scale * n)
    return DiffOp._raw(dq, dims, acc)


def rho_element(a: HeightedElement, dims) -> DiffOp:
    dq = a.quiver
    dims = dim_vector(dq, dims)
    acc: dict = {}
    for hc, c in a.terms.items():
        scale = _rho_scale(dq, hc, dims) * c
        if not scale:
            continue
        for t, n in rho_counts(dq, hc, dims):
            add_into(acc, t, scale * n)
    return DiffOp._raw(dq, dims, acc)


def _dims_text(dq: DoubleQuiver, dims) -> str:
    return "l=(" + ",".join(str(d) for d in dims) + ")"


def check_diagram(p: SymLElement, r: SymLElement, dims) -> CheckResult:
    """``tr_l(P *_h R) = tr_l(P) ⋆ tr_l(R)``."""
    dims = dim_vector(p.quiver, dims)
    lhs = tr_l(star(p, r), dims)
    rhs = classical_moyal(tr_l(p, dims), tr_l(r, dims))
    return compare("diagram", lhs, rhs, f"P = {p}, R = {r}, {_dims_text(p.quiver, dims)}")


def check_transport(p: SymLElement, dims) -> CheckResult:
    """``ρ(Φ_W(P)) = φ_W(tr_l(P))``."""
    dims = dim_vector(p.quiver, dims)
    lhs = rho_element(phi_w(p), dims)
    rhs = weyl_symmetrize(tr_l(p, dims))
    return compare("transport", lhs, rhs, f"P = {p}, {_dims_text(p.quiver, dims)}")


def check_poisson_hom(dq: DoubleQuiver, f: Necklace, g: Necklace, dims) -> CheckResult:
    """``tr_l({f, g}) = {tr_l f, tr_l g}``."""
    dims = dim_vector(dq, dims)
    lhs = tr_l(bracket(dq, f, g), dims)
    rhs = poisson_bracket(
        tr_l(SymLElement(dq, {(f,): 1}), dims), tr_l(SymLElement(dq, {(g,): 1}), dims)
    )
    return compare(
        "poisson",
        lhs,
        rhs,
        f"f = {format_necklace(dq, f)}, g = {format_necklace(dq, g)}, {_dims_text(dq, dims)}",
    )


def exact_rank(rows: list[dict]) -> int:
    """Rank over Q of sparse rows ``{column: Fraction}`` by elimination."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            col = min(row)
            if col not in pivots:
                pivots[col] = row
                rank += 1
                break
            prow = pivots[col]
            f = row[col] / prow[col]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def injectivity_basis(dq: DoubleQuiver, d: int, include_idempotents: bool = True) -> list[Monomial]:
    """Monomials whose edge count plus idempotent-factor count is at most ``d``."""
    out = []
    for m in monomials(dq, d, max_idempotents=d if include_idempotents else 0):
        if sum(len(n) if n[0] >= 0 else 1 for n in m) > d:
            continue
        out.append(m)
    return out


def check_injectivity(dq: DoubleQuiver, d: int, dims, include_idempotents: bool = True) -> CheckResult:
    """Linear independence of ``tr_l`` of every basis monomial of size ``<= d``."""
    dims = dim_vector(dq, dims)
    basis = injectivity_basis(dq, d, include_idempotents)
    columns: dict = {}
    rows = []
    for m in basis:
        row = {}
        for vm, n in trace_counts(dq, m, dims):
            row[columns.setdefault(vm, len(columns))] = n
        rows.append(row)
    rank = exact_rank(rows)
    if rank == len(basis):
        return CheckResult("injectivity", True, len(basis))
    names = ", ".join(format_monomial(dq, m) for m in basis)
    return CheckResult(
        "injectivity",
        False,
        len(basis),
        f"rank {rank} < {len(basis)} for basis {{{names}}} at {_dims_text(dq, dims)}",
    )
