"""Brute-force ground truth: optimal solutions, equivalence, maximality.

Everything here enumerates exhaustively and is meant to stay simple
enough to trust; the enforcement algorithm is validated against it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator

from .algebra import FiniteDRL
from .errors import ShapeMismatch, TooLarge
from .model import Assignment, Problem, RawProblem, combined_value

DEFAULT_TUPLE_CAP = 1_000_000


@dataclass(frozen=True)
class Counterexample:
    """Full assignment on which two problems disagree."""

    assignment: Assignment
    value_a: int
    value_b: int


@dataclass
class SolutionSet:
    """Maximal achievable values (an antichain) and the tuples achieving them."""

    optimal_values: list[int]
    solutions: list[Assignment]
    inconsistent: bool


def maximal_elements(algebra: FiniteDRL, values: Iterable[int]) -> list[int]:
    """Distinct input values with no other input value strictly above them."""
    vs = sorted(set(values))
    if not vs:
        raise ValueError("maximal_elements needs a nonempty input")
    leq = algebra.leq
    return [m for m in vs if not any(v != m and leq[m][v] for v in vs)]


def iter_full_assignments(domain_sizes: tuple[int, ...]) -> Iterator[Assignment]:
    return itertools.product(*(range(size) for size in domain_sizes))


def _check_size(domain_sizes: tuple[int, ...], cap: int) -> None:
    if prod(domain_sizes) > cap:
        raise TooLarge(f"{prod(domain_sizes)} assignments exceed the cap {cap}")


def brute_force_solve(problem: Problem | RawProblem, cap: int = DEFAULT_TUPLE_CAP) -> SolutionSet:
    """Enumerate every full assignment and collect the maximal outcomes."""
    _check_size(problem.domain_sizes, cap)
    alg = problem.algebra
    values = [combined_value(problem, t) for t in iter_full_assignments(problem.domain_sizes)]
    optimal = maximal_elements(alg, values)
    chosen = set(optimal)
    solutions = [
        t for t, v in zip(iter_full_assignments(problem.domain_sizes), values) if v in chosen
    ]
    return SolutionSet(optimal, solutions, inconsistent=(optimal == [alg.bottom]))


def check_equivalent(
    a: Problem | RawProblem, b: Problem | RawProblem, cap: int = DEFAULT_TUPLE_CAP
) -> Counterexample | None:
    """Compare combined values on every full assignment.

    Returns None when the problems agree everywhere, else the first
    disagreeing assignment in canonical enumeration order.
    """
    if a.domain_sizes != b.domain_sizes:
        raise ShapeMismatch("problems have different domains")
    if a.algebra != b.algebra:
        raise ShapeMismatch("problems use different algebras")
    _check_size(a.domain_sizes, cap)
    for t in iter_full_assignments(a.domain_sizes):
        va = combined_value(a, t)
        vb = combined_value(b, t)
        if va != vb:
            return Counterexample(t, va, vb)
    return None
