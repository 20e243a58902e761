from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest

from necklace.diffop import DiffOp
from necklace.expr import parse_heighted
from necklace.generate import monomial_tuples, monomials, necklaces_up_to
from necklace.heights import phi_w
from necklace.hpoly import H, HPoly
from necklace.rep import (
    check_diagram,
    check_injectivity,
    check_poisson_hom,
    check_transport,
    exact_rank,
    injectivity_basis,
    rho,
    rho_element,
    tr_l,
    weyl_symmetrize,
)
from necklace.reppoly import RepPoly
from necklace.symalg import SymLElement

DIMS = {"loop1": [(1,), (2,)], "loop2": [(1,), (2,)], "a2loop": [(1, 1), (1, 2), (2, 1), (2, 2)]}


def oracle_edges(dq):
    # the brute-force operator oracles are slow on two loops
    return 3 if dq.n > 1 and dq.num_vertices == 1 else 4


def name_of(dq):
    return {1: "loop1" if dq.n == 1 else "loop2", 2: "a2loop"}[dq.num_vertices]


def matrix(dq, dims, x):
    rows, cols = dims[dq.head[x]], dims[dq.tail[x]]
    return [[RepPoly.coordinate(dq, dims, x, i, j) for j in range(cols)] for i in range(rows)]


def matmul(a, b, dq, dims):
    zero = RepPoly(dq, dims)
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), zero) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def trace_oracle(dq, dims, neck):
    if neck[0] < 0:
        return RepPoly.constant(dq, dims, dims[-1 - neck[0]])
    m = matrix(dq, dims, neck[0])
    for a in neck[1:]:
        m = matmul(matrix(dq, dims, a), m, dq, dims)
    return sum((m[i][i] for i in range(len(m))), RepPoly(dq, dims))


def factor_op(dq, dims, x, i, j):
    """The operator standing for the coordinate (M_x)_{ij}."""
    if dq.in_q(x):
        return DiffOp.multiplication(dq, dims, x, i, j)
    return DiffOp.derivation(dq, dims, dq.reverse(x), j, i) * (-H)


def weyl_oracle(f):
    dq, dims = f.quiver, f.dims
    out = DiffOp(dq, dims)
    for vm, c in f.items():
        factors = [v for v, e in vm for _ in range(e)]
        total = DiffOp(dq, dims)
        for order in permutations(factors):
            op = DiffOp.identity(dq, dims)
            for v in order:
                op = op * factor_op(dq, dims, *v)
            total = total + op
        out = out + total * HPoly.const(Fraction(1, factorial(len(factors)))) * c
    return out


def rho_oracle(dq, hc, dims):
    total = DiffOp(dq, dims)
    letters = [(w, r, a, hgt) for w, word in enumerate(hc.necklaces) for r, (a, hgt) in enumerate(word)]
    slots = [range(dims[dq.tail[a]]) for _, _, a, _ in letters]
    base = {}
    k = 0
    for w, word in enumerate(hc.necklaces):
        base[w] = k
        k += len(word)
    for idx in product(*slots):
        factors = []
        for w, r, a, hgt in letters:
            m = len(hc.necklaces[w])
            i, j = idx[base[w] + (r + 1) % m], idx[base[w] + r]
            factors.append((hgt, a, i, j))
        op = DiffOp.identity(dq, dims)
        for _, a, i, j in sorted(factors):
            op = op * factor_op(dq, dims, a, i, j)
        total = total + op
    scalar = 1
    for n in hc.idempotents:
        scalar *= dims[-1 - n[0]]
    return total * scalar


def test_trace_examples(loop1, el):
    assert str(tr_l(el(loop1, "(e e*)"), (1,))) == "M[e][1][1]*M[e*][1][1]"
    assert str(tr_l(el(loop1, "(e)"), (2,))) == "M[e][1][1] + M[e][2][2]"
    assert str(tr_l(el(loop1, "@v"), (2,))) == "2"
    assert str(tr_l(SymLElement.unit(loop1), (2,))) == "1"


def test_trace_vs_matrices(any_quiver):
    for dims in DIMS[name_of(any_quiver)]:
        for n in necklaces_up_to(any_quiver, 4):
            assert tr_l(SymLElement(any_quiver, {(n,): 1}), dims) == trace_oracle(any_quiver, dims, n), n


def test_trace_multiplicative(a2loop):
    for p, r in monomial_tuples(a2loop, 2, 4):
        a, b = SymLElement(a2loop, {p: 1}), SymLElement(a2loop, {r: 1})
        assert tr_l(a & b, (2, 1)) == tr_l(a, (2, 1)) * tr_l(b, (2, 1))


def test_weyl_examples(loop1):
    dims = (1,)
    x, y = RepPoly.coordinate(loop1, dims, "e", 0, 0), RepPoly.coordinate(loop1, dims, "e*", 0, 0)
    assert weyl_symmetrize(x) == DiffOp.multiplication(loop1, dims, "e", 0, 0)
    assert str(weyl_symmetrize(x * y)) == "-1/2 h - h M[e][1][1]*d/dM[e][1][1]"
    assert weyl_symmetrize(RepPoly.constant(loop1, dims)) == DiffOp.identity(loop1, dims)


def test_weyl_vs_permutation_average(any_quiver):
    for dims in DIMS[name_of(any_quiver)]:
        for mono in monomials(any_quiver, oracle_edges(any_quiver), 0):
            f = tr_l(SymLElement(any_quiver, {mono: 1}), dims)
            for vm, c in f.items():
                g = RepPoly(any_quiver, dims, {vm: c})
                assert weyl_symmetrize(g) == weyl_oracle(g), vm


def test_rho_examples(loop1, el):
    assert str(rho_element(parse_heighted(loop1, "(e,1)(e*,2)"), (1,))) == "-h M[e][1][1]*d/dM[e][1][1]"
    assert str(rho_element(parse_heighted(loop1, "(e,2)(e*,1)"), (1,))) == "-h - h M[e][1][1]*d/dM[e][1][1]"
    assert rho_element(parse_heighted(loop1, "@v"), (3,)) == DiffOp.identity(loop1, (3,), 3)
    assert rho_element(parse_heighted(loop1, "@v"), (0,)) == DiffOp(loop1, (0,))


def test_rho_vs_composition(any_quiver):
    for dims in DIMS[name_of(any_quiver)]:
        for mono in monomials(any_quiver, oracle_edges(any_quiver)):
            for hc, _ in phi_w(SymLElement(any_quiver, {mono: 1})).items():
                assert rho(any_quiver, hc, dims) == rho_oracle(any_quiver, hc, dims), hc


def test_diagram_examples(loop1, el):
    e, es = el(loop1, "(e)"), el(loop1, "(e*)")
    assert check_diagram(e, es, (1,))
    assert check_diagram(e, es, (2,))
    assert check_diagram(e, e, (2,))
    lhs = tr_l(el(loop1, "(e)&(e*) + 1/2 h @v"), (1,))
    assert str(lhs) == "M[e][1][1]*M[e*][1][1] + 1/2 h"


def test_transport_examples(loop1, el):
    assert check_transport(el(loop1, "(e e*)"), (1,))
    assert str(rho_element(phi_w(el(loop1, "(e e*)")), (1,))) == "-1/2 h - h M[e][1][1]*d/dM[e][1][1]"
    assert check_transport(el(loop1, "@v"), (2,))
    assert check_transport(el(loop1, "(e)"), (2,))


def test_poisson_examples(loop1):
    e, es = loop1.edge("e"), loop1.edge("e*")
    assert check_poisson_hom(loop1, (e,), (es,), (2,))
    assert str(tr_l(SymLElement.vertex(loop1, "v"), (2,))) == "2"
    assert check_poisson_hom(loop1, (e, es), (e, es), (2,))
    assert check_poisson_hom(loop1, (e,), (e,), (2,))


def test_small_sweeps(any_quiver):
    for dims in DIMS[name_of(any_quiver)]:
        for p, r in monomial_tuples(any_quiver, 2, 3):
            assert check_diagram(SymLElement(any_quiver, {p: 1}), SymLElement(any_quiver, {r: 1}), dims)
        for p in monomials(any_quiver, 3):
            assert check_transport(SymLElement(any_quiver, {p: 1}), dims)


def test_diagram_detects_wrong_star(loop1, el, monkeypatch):
    import necklace.rep as rep

    monkeypatch.setattr(rep, "star", lambda a, b: a & b)
    res = check_diagram(el(loop1, "(e)"), el(loop1, "(e*)"), (1,))
    assert not res.ok and "l=(1)" in res.counterexample


def test_injectivity_examples(loop1):
    assert not check_injectivity(loop1, 1, (1,))
    assert len(injectivity_basis(loop1, 1)) == 4
    assert check_injectivity(loop1, 1, (2,), include_idempotents=False)
    assert not check_injectivity(loop1, 1, (2,))
    assert check_injectivity(loop1, 0, (1,))
    assert injectivity_basis(loop1, 0) == [()]


def test_injectivity_grows_with_l(loop1):
    # tr(e)^2 and tr(e e) coincide at l=(1) but not at l=(2)
    assert not check_injectivity(loop1, 2, (1,), include_idempotents=False)
    assert check_injectivity(loop1, 2, (2,), include_idempotents=False)


def test_exact_rank():
    assert exact_rank([{0: 1, 1: 2}, {0: 2, 1: 4}, {1: Fraction(1, 3)}]) == 2
    assert exact_rank([]) == 0
    assert exact_rank([{}]) == 0
