"""Slow reference implementations used only by the tests.

They work on (word, position) pairs and plain itertools enumeration, so
they share nothing with the engine beyond the quiver and the canonical
rotation rule.
"""

from fractions import Fraction
from itertools import combinations, permutations, product

from necklace.hpoly import HPoly
from necklace.necklaces import idempotent, make_monomial
from necklace.symalg import SymLElement, TensorElement


def words_of(mono):
    return [list(n) for n in mono if n[0] >= 0]


def idempotents_of(mono):
    return tuple(n for n in mono if n[0] < 0)


def walk(dq, words, phi):
    """Orbits of f(x) = x+1 off the cut set and phi(x)+1 on it.

    Returns the list of orbit necklaces and a map from every position to
    the index of its orbit.
    """

    def plus(x):
        w, j = x
        return (w, (j + 1) % len(words[w]))

    seen: dict = {}
    out = []
    for w, word in enumerate(words):
        for j in range(len(word)):
            if (w, j) in seen:
                continue
            x, letters, vertex = (w, j), [], None
            while x not in seen:
                seen[x] = len(out)
                a = words[x[0]][x[1]]
                if x in phi:
                    vertex = dq.tail[a]
                    x = plus(phi[x])
                else:
                    letters.append(a)
                    x = plus(x)
            if letters:
                out.append(min(tuple(letters[i:] + letters[:i]) for i in range(len(letters))))
            else:
                out.append(idempotent(vertex))
    return out, seen


def walk_oracle(dq, words, phi):
    return make_monomial(walk(dq, words, phi)[0])


def partial_bijections(dq, xs, ys, letter):
    """All sets of pairs (x, y), x from xs, y from ys, letter(y) = reverse(letter(x))."""
    out = []
    for k in range(min(len(xs), len(ys)) + 1):
        for cx in combinations(xs, k):
            for cy in permutations(ys, k):
                if all(letter(y) == dq.reverse(letter(x)) for x, y in zip(cx, cy)):
                    out.append(list(zip(cx, cy)))
    return out


def star_oracle(dq, p, r):
    """Definition-level star product of two monomials."""
    pw, rw = words_of(p), words_of(r)
    words = pw + rw
    xs = [(w, j) for w in range(len(pw)) for j in range(len(words[w]))]
    ys = [(w, j) for w in range(len(pw), len(words)) for j in range(len(words[w]))]
    letter = lambda x: words[x[0]][x[1]]  # noqa: E731
    idems = idempotents_of(p) + idempotents_of(r)
    acc: dict = {}
    for pairs in partial_bijections(dq, xs, ys, letter):
        phi = {}
        for x, y in pairs:
            phi[x], phi[y] = y, x
        sign = (-1) ** sum(1 for _, y in pairs if dq.in_q(letter(y)))
        mono = make_monomial(tuple(walk(dq, words, phi)[0]) + idems)
        c = HPoly.monomial(len(pairs), Fraction(sign, 2 ** len(pairs)))
        acc[mono] = acc.get(mono, HPoly()) + c
    return SymLElement(dq, acc)


def coproduct_oracle(dq, p):
    """Definition-level coproduct of one monomial."""
    words = words_of(p)
    pos = [(w, j) for w in range(len(words)) for j in range(len(words[w]))]
    letter = lambda x: words[x[0]][x[1]]  # noqa: E731
    qs = [x for x in pos if dq.in_q(letter(x))]
    stars = [x for x in pos if not dq.in_q(letter(x))]
    acc: dict = {}
    for pairs in partial_bijections(dq, qs, stars, letter):
        phi = {}
        for x, y in pairs:
            phi[x], phi[y] = y, x
        necks, orbit = walk(dq, words, phi)
        necks = necks + list(idempotents_of(p))
        for c in product((1, 2), repeat=len(necks)):
            s = 1
            for x, _ in pairs:
                nxt = (x[0], (x[1] + 1) % len(words[x[0]]))
                a, b = c[orbit[x]], c[orbit[nxt]]
                s *= 0 if a == b else (1 if a < b else -1)
            if not s:
                continue
            left = make_monomial([n for n, ci in zip(necks, c) if ci == 1])
            right = make_monomial([n for n, ci in zip(necks, c) if ci == 2])
            coeff = HPoly.monomial(len(pairs), Fraction(s, 2 ** len(pairs)))
            acc[(left, right)] = acc.get((left, right), HPoly()) + coeff
    return TensorElement(dq, 2, acc)


def random_reppoly(rng, dq, dims, max_degree=4, terms=3):
    """Random polynomial in the matrix coordinates with small integer coefficients."""
    from necklace.reppoly import RepPoly, coordinates

    coords = coordinates(dq, dims)
    acc = {}
    for _ in range(rng.randint(1, terms)):
        vm = {}
        for _ in range(rng.randint(0, max_degree)):
            v = rng.choice(coords)
            vm[v] = vm.get(v, 0) + 1
        key = tuple(sorted(vm.items()))
        acc[key] = acc.get(key, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return RepPoly(dq, dims, acc)


def apply_operator(op, poly: dict) -> dict:
    """Act with a normally ordered operator on ``{monomial: coefficient}``."""
    out: dict = {}
    for (xs, ds), c in op.items():
        for m, q in poly.items():
            md = dict(m)
            n = 1
            for v, k in ds:
                e = md.get(v, 0)
                if e < k:
                    n = 0
                    break
                for t in range(k):
                    n *= e - t
                md[v] = e - k
            if not n:
                continue
            for v, k in xs:
                md[v] = md.get(v, 0) + k
            key = tuple(sorted((v, e) for v, e in md.items() if e))
            out[key] = out.get(key, 0) + c * q * n
    return {k: v for k, v in out.items() if v}
