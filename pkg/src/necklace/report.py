"""Verdicts returned by the identity checkers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    cases: int = 1
    counterexample: str | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"{self.name}: ok ({self.cases} cases)"
        return f"{self.name}: FAILED after {self.cases} cases\n{self.counterexample}"


def compare(name: str, lhs, rhs, context: str) -> CheckResult:
    if lhs == rhs:
        return CheckResult(name, True)
    return CheckResult(name, False, 1, f"{context}\n  lhs = {lhs}\n  rhs = {rhs}")


def combine(name: str, results) -> CheckResult:
    """Fold many single-case results, stopping at the first failure."""
    n = 0
    for r in results:
        n += r.cases
        if not r.ok:
            return CheckResult(name, False, n, r.counterexample)
    return CheckResult(name, True, n)
