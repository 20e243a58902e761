"""Check suites run by the CLI: random trials or exhaustive basis sweeps.

Cases are generated up front from the seed, evaluated (optionally by a
process pool), and merged in case order, so a report never depends on the
number of workers.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import hopf, lie, rep, sweeps
from .generate import monomial_tuples, monomials, necklaces_up_to, random_element, random_necklaces
from .necklaces import format_monomial
from .quiver import DoubleQuiver
from .report import CheckResult
from .symalg import SymLElement

SUITES = (
    "assoc",
    "coassoc",
    "bialgebra",
    "antipode",
    "counit",
    "classical",
    "liebialg",
    "diagram",
    "transport",
    "poisson",
)

WORKERS_ENV = "NECKLACE_WORKERS"


@dataclass
class SuiteReport:
    suite: str
    mode: str
    cases: int
    failures: list = field(default_factory=list)  # (case index, report text)

    @property
    def ok(self) -> bool:
        return not self.failures


def default_dims(dq: DoubleQuiver) -> list[tuple]:
    """Every dimension vector with entries in {1, 2}."""
    return list(product((1, 2), repeat=dq.num_vertices))


def _neck_len(n) -> int:
    return 0 if n[0] < 0 else len(n)


def _necklace_tuples(dq: DoubleQuiver, arity: int, max_total: int):
    buckets: dict = {}
    for n in necklaces_up_to(dq, max_total):
        buckets.setdefault(_neck_len(n), []).append(n)

    def rec(budget, acc):
        if len(acc) == arity:
            yield tuple(acc)
            return
        for k in sorted(buckets):
            if k <= budget:
                for n in buckets[k]:
                    acc.append(n)
                    yield from rec(budget - k, acc)
                    acc.pop()

    return rec(max_total, [])


def random_cases(suite, dq, trials, seed, max_edges, dims_list):
    rng = random.Random(seed)
    elem = lambda: random_element(rng, dq, max_edges=max_edges)  # noqa: E731
    arity = {"assoc": 3, "bialgebra": 2, "diagram": 2}.get(suite, 1)
    out = []
    for i in range(trials):
        if suite in ("classical", "poisson"):
            args = random_necklaces(rng, dq, 2, max_edges)
        elif suite == "liebialg":
            args = random_necklaces(rng, dq, 3, max_edges)
        else:
            args = tuple(elem() for _ in range(arity))
        if suite in ("diagram", "transport", "poisson"):
            args = args + (dims_list[i % len(dims_list)],)
        out.append(args)
    return out


def exhaustive_cases(suite, dq, max_edges, dims_list):
    if suite == "assoc":
        return list(monomial_tuples(dq, 3, max_edges))
    if suite in ("bialgebra",):
        return list(monomial_tuples(dq, 2, max_edges))
    if suite == "diagram":
        return [t + (d,) for d in dims_list for t in monomial_tuples(dq, 2, max_edges)]
    if suite in ("coassoc", "antipode", "counit"):
        return [(m,) for m in monomials(dq, max_edges)]
    if suite == "transport":
        return [(m, d) for d in dims_list for m in monomials(dq, max_edges)]
    if suite == "classical":
        return list(_necklace_tuples(dq, 2, max_edges))
    if suite == "poisson":
        return [t + (d,) for d in dims_list for t in _necklace_tuples(dq, 2, max_edges)]
    if suite == "liebialg":
        return [("jacobi",) + t for t in _necklace_tuples(dq, 3, max_edges)] + [
            ("pair",) + t for t in _necklace_tuples(dq, 2, max_edges)
        ]
    raise ValueError(f"unknown suite {suite!r}")


def _lie_case(dq, f, g, k=None) -> CheckResult:
    checks = [
        lie.check_antisymmetry(dq, f, g),
        lie.check_cocycle(dq, f, g),
        lie.check_coantisymmetry(dq, f),
        lie.check_cojacobi(dq, f),
    ]
    if k is not None:
        checks.append(lie.check_jacobi(dq, f, g, k))
    for c in checks:
        if not c.ok:
            return c
    return CheckResult("liebialg", True)


def evaluate_random(dq: DoubleQuiver, suite: str, args) -> CheckResult:
    if suite == "assoc":
        return hopf.check_associativity(*args)
    if suite == "coassoc":
        return hopf.check_coassociativity(*args)
    if suite == "bialgebra":
        return hopf.check_bialgebra(*args)
    if suite == "antipode":
        return hopf.check_antipode(*args)
    if suite == "counit":
        return hopf.check_counit(*args)
    if suite == "classical":
        return hopf.check_classical_limits(dq, *args)
    if suite == "liebialg":
        return _lie_case(dq, *args)
    if suite == "diagram":
        return rep.check_diagram(*args)
    if suite == "transport":
        return rep.check_transport(*args)
    if suite == "poisson":
        return rep.check_poisson_hom(dq, *args)
    raise ValueError(f"unknown suite {suite!r}")


def _sweep_result(dq, name, sides, monos, dims=None) -> CheckResult:
    if all(s == sides[-1] for s in sides):
        return CheckResult(name, True)
    text = ", ".join(format_monomial(dq, m) for m in monos)
    if dims is not None:
        text += ", l=(" + ",".join(map(str, dims)) + ")"
    detail = "\n".join(f"  side {i}: {s}" for i, s in enumerate(sides))
    return CheckResult(name, False, 1, f"basis inputs {text}\n{detail}")


def evaluate_exhaustive(dq: DoubleQuiver, suite: str, args) -> CheckResult:
    if suite == "assoc":
        return _sweep_result(dq, suite, sweeps.associativity(dq, *args), args)
    if suite == "bialgebra":
        return _sweep_result(dq, suite, sweeps.bialgebra(dq, *args), args)
    if suite == "coassoc":
        return _sweep_result(dq, suite, sweeps.coassociativity(dq, *args), args)
    if suite == "counit":
        return _sweep_result(dq, suite, sweeps.counit_law(dq, *args), args)
    if suite == "antipode":
        res = _sweep_result(dq, suite, sweeps.antipode_axiom(dq, *args), args)
        if res.ok:
            p = SymLElement(dq, {args[0]: 1})
            res = _sweep_result(dq, suite, (hopf.antipode(hopf.antipode(p)), p), args)
        return res
    if suite == "diagram":
        p, r, dims = args
        return _sweep_result(dq, suite, sweeps.diagram(dq, p, r, dims), (p, r), dims)
    if suite == "transport":
        p, dims = args
        return _sweep_result(dq, suite, sweeps.transport(dq, p, dims), (p,), dims)
    if suite == "classical":
        return hopf.check_classical_limits(dq, *args)
    if suite == "poisson":
        return rep.check_poisson_hom(dq, *args)
    if suite == "liebialg":
        kind, *necks = args
        if kind == "jacobi":
            return lie.check_jacobi(dq, *necks)
        return _lie_case(dq, *necks)
    raise ValueError(f"unknown suite {suite!r}")


def _run_chunk(job):
    dq, suite, exhaustive, start, cases = job
    fn = evaluate_exhaustive if exhaustive else evaluate_random
    failures = []
    for i, args in enumerate(cases, start):
        res = fn(dq, suite, args)
        if not res.ok:
            failures.append((i, res.counterexample))
    return failures


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None


def run_suite(
    dq: DoubleQuiver,
    suite: str,
    *,
    trials: int = 100,
    seed: int = 0,
    max_edges: int = 4,
    dims_list=None,
    exhaustive: bool = False,
    workers: int | None = None,
) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    dims_list = dims_list or default_dims(dq)
    if exhaustive:
        cases = exhaustive_cases(suite, dq, max_edges, dims_list)
    else:
        cases = random_cases(suite, dq, trials, seed, max_edges, dims_list)
    workers = workers or worker_count()
    if workers == 1 or len(cases) < 2:
        failures = _run_chunk((dq, suite, exhaustive, 0, cases))
    else:
        size = max(1, -(-len(cases) // (workers * 4)))
        jobs = [(dq, suite, exhaustive, i, cases[i : i + size]) for i in range(0, len(cases), size)]
        failures = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_chunk, jobs):
                failures.extend(part)
    return SuiteReport(suite, "exhaustive" if exhaustive else "random", len(cases), failures)

