import random

import pytest

from necklace.diffop import DiffOp, term_product
from necklace.hpoly import H
from necklace.reppoly import coordinates
from oracles import apply_operator


def base_coords(dq, dims):
    return coordinates(dq, dims, edges=range(dq.n))


def random_op(rng, dq, dims, terms=3, degree=3):
    cs = base_coords(dq, dims)
    out = DiffOp(dq, dims)
    for _ in range(terms):
        t = DiffOp.identity(dq, dims, rng.choice([-2, -1, 1, 3]))
        for _ in range(rng.randint(0, degree)):
            make = DiffOp.multiplication if rng.random() < 0.5 else DiffOp.derivation
            t = t * make(dq, dims, *rng.choice(cs)) if rng.random() < 0.5 else make(dq, dims, *rng.choice(cs)) * t
        out = out + t
    return out


def random_poly(rng, dq, dims, degree=5):
    cs = base_coords(dq, dims)
    acc = {}
    for _ in range(4):
        m = {}
        for _ in range(rng.randint(0, degree)):
            v = rng.choice(cs)
            m[v] = m.get(v, 0) + 1
        key = tuple(sorted(m.items()))
        acc[key] = acc.get(key, 0) + rng.randint(-3, 3)
    return {k: v for k, v in acc.items() if v}


def test_canonical_commutators(a2loop):
    dims = (2, 1)
    one = DiffOp.identity(a2loop, dims)
    zero = DiffOp(a2loop, dims)
    cs = base_coords(a2loop, dims)
    for v in cs:
        for w in cs:
            x, d = DiffOp.multiplication(a2loop, dims, *v), DiffOp.derivation(a2loop, dims, *w)
            assert d.commutator(x) == (one if v == w else zero)
            assert x.commutator(DiffOp.multiplication(a2loop, dims, *w)) == zero
            assert d.commutator(DiffOp.derivation(a2loop, dims, *v)) == zero


def test_reverse_edge_rejected(loop1):
    with pytest.raises(ValueError):
        DiffOp.multiplication(loop1, (1,), "e*", 0, 0)


def test_normal_form_text(loop1):
    x, d = DiffOp.multiplication(loop1, (1,), "e", 0, 0), DiffOp.derivation(loop1, (1,), "e", 0, 0)
    assert str(d * x * H) == "h + h M[e][1][1]*d/dM[e][1][1]"
    assert str(d * d * x * x) == "2 + 4 M[e][1][1]*d/dM[e][1][1] + M[e][1][1]^2*d/dM[e][1][1]^2"


def test_term_product_vs_action(loop2):
    rng = random.Random(21)
    dims = (2,)
    for _ in range(60):
        a, b = random_op(rng, loop2, dims), random_op(rng, loop2, dims)
        p = random_poly(rng, loop2, dims)
        assert apply_operator((a * b).terms, p) == apply_operator(a.terms, apply_operator(b.terms, p))


def test_term_product_single_variable(loop1):
    v = (0, 0, 0)
    for beta in range(4):
        for gamma in range(4):
            op = dict(term_product(((), ((v, beta),) if beta else ()), (((v, gamma),) if gamma else (), ())))
            p = {((v, 6),): 1}
            lhs = apply_operator(op, p)
            # ∂^β x^γ x^6 = (6+γ)!/(6+γ-β)! x^(6+γ-β)
            n = 1
            for t in range(beta):
                n *= 6 + gamma - t
            e = 6 + gamma - beta
            assert lhs == {((v, e),): n}


def test_associative(a2loop):
    rng = random.Random(2)
    for _ in range(30):
        a, b, c = (random_op(rng, a2loop, (1, 2)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
