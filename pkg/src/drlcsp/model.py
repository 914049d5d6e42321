"""Soft CSP instances over a finite valuation algebra.

A problem holds one dense value table per constraint scope. Tables are
indexed in row-major order: the last variable of the (sorted) scope
varies fastest. Raw inputs may repeat scopes; `normalize` merges them,
fills in missing unary constraints, and drops domain values whose unary
value is bottom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterator

from .algebra import FiniteDRL

Scope = tuple[int, ...]
Assignment = tuple[int, ...]


@dataclass
class Constraint:
    """A scope (strictly increasing variable ids) plus its value table."""

    scope: Scope
    values: list[int]

    def copy(self) -> "Constraint":
        return Constraint(self.scope, list(self.values))


@dataclass
class Problem:
    """Normalized instance: at most one constraint per scope, keyed by scope."""

    algebra: FiniteDRL
    domain_sizes: tuple[int, ...]
    constraints: dict[Scope, Constraint] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.domain_sizes)

    def unary(self, var: int) -> Constraint:
        return self.constraints[(var,)]

    def copy(self) -> "Problem":
        return Problem(
            self.algebra,
            self.domain_sizes,
            {scope: c.copy() for scope, c in self.constraints.items()},
        )


@dataclass
class RawProblem:
    """Ingestion form: a plain list of constraints, duplicate scopes allowed."""

    algebra: FiniteDRL
    domain_sizes: tuple[int, ...]
    constraints: list[Constraint] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.domain_sizes)


@dataclass(frozen=True)
class Violation:
    """First point where the local consistency equation has no witness."""

    scope: Scope
    variable: int
    value: int


# ---------------------------------------------------------------------------
# Tuple indexing


def scope_sizes(scope: Scope, domain_sizes: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(domain_sizes[v] for v in scope)


def table_len(scope: Scope, domain_sizes: tuple[int, ...]) -> int:
    return prod(scope_sizes(scope, domain_sizes))


def tuple_index(scope: Scope, domain_sizes: tuple[int, ...], assignment: Assignment) -> int:
    """Row-major index of an assignment; the empty assignment maps to 0."""
    if len(assignment) != len(scope):
        raise ValueError(f"assignment of length {len(assignment)} for scope {scope}")
    index = 0
    for var, value in zip(scope, assignment):
        size = domain_sizes[var]
        if not 0 <= value < size:
            raise ValueError(f"value {value} out of range for variable {var} (size {size})")
        index = index * size + value
    return index


def index_tuple(scope: Scope, domain_sizes: tuple[int, ...], index: int) -> Assignment:
    """Inverse of tuple_index."""
    sizes = scope_sizes(scope, domain_sizes)
    total = prod(sizes)
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range for scope {scope}")
    out = [0] * len(scope)
    for pos in range(len(scope) - 1, -1, -1):
        index, out[pos] = divmod(index, sizes[pos])
    return tuple(out)


def project_assignment(assignment: Assignment, scope: Scope, subscope: Scope) -> Assignment:
    """Restrict an assignment over `scope` to the variables in `subscope`."""
    pos = {var: i for i, var in enumerate(scope)}
    return tuple(assignment[pos[v]] for v in subscope)


def extend_assignment(partial: Assignment, rest: Scope, var: int, value: int) -> Assignment:
    """Insert `value` for `var` into an assignment over `rest` (var not in rest)."""
    out = []
    placed = False
    for v, a in zip(rest, partial):
        if not placed and var < v:
            out.append(value)
            placed = True
        out.append(a)
    if not placed:
        out.append(value)
    return tuple(out)


def fiber_indices(scope: Scope, domain_sizes: tuple[int, ...], pos: int, value: int) -> list[int]:
    """Table indices of all assignments fixing coordinate `pos` to `value`.

    The list follows the canonical order of the assignments to the
    remaining coordinates.
    """
    sizes = scope_sizes(scope, domain_sizes)
    strides = [0] * len(scope)
    acc = 1
    for j in range(len(scope) - 1, -1, -1):
        strides[j] = acc
        acc *= sizes[j]
    rest = [j for j in range(len(scope)) if j != pos]
    base = value * strides[pos]
    out = []
    for combo in itertools.product(*(range(sizes[j]) for j in rest)):
        out.append(base + sum(v * strides[j] for j, v in zip(rest, combo)))
    return out


# ---------------------------------------------------------------------------
# Normalization


def normalize(problem: RawProblem) -> Problem | None:
    """Collapse a raw constraint list into a normalized problem.

    Duplicate scopes merge pointwise under the combination product,
    missing unary constraints are added as constant top, and domain
    values whose unary value is bottom are removed (all tables are
    re-projected onto the surviving values). Returns None when a domain
    empties, which makes the instance unsatisfiable outright.
    """
    alg = problem.algebra
    otimes = alg.otimes
    merged: dict[Scope, list[int]] = {}
    for c in problem.constraints:
        prior = merged.get(c.scope)
        if prior is None:
            merged[c.scope] = list(c.values)
        else:
            for i, v in enumerate(c.values):
                prior[i] = otimes[prior[i]][v]

    sizes = problem.domain_sizes
    for var, size in enumerate(sizes):
        merged.setdefault((var,), [alg.top] * size)

    keep = [
        [a for a in range(size) if merged[(var,)][a] != alg.bottom]
        for var, size in enumerate(sizes)
    ]
    if any(not k for k in keep):
        return None

    if all(len(k) == s for k, s in zip(keep, sizes)):
        constraints = {scope: Constraint(scope, vals) for scope, vals in merged.items()}
        return Problem(alg, sizes, constraints)

    new_sizes = tuple(len(k) for k in keep)
    constraints = {}
    for scope, vals in merged.items():
        old_strides = _strides(scope_sizes(scope, sizes))
        new_vals = []
        for combo in itertools.product(*(range(len(keep[v])) for v in scope)):
            old_index = sum(keep[v][a] * s for v, a, s in zip(scope, combo, old_strides))
            new_vals.append(vals[old_index])
        constraints[scope] = Constraint(scope, new_vals)
    return Problem(alg, new_sizes, constraints)


def _strides(sizes: tuple[int, ...]) -> list[int]:
    strides = [0] * len(sizes)
    acc = 1
    for j in range(len(sizes) - 1, -1, -1):
        strides[j] = acc
        acc *= sizes[j]
    return strides


# ---------------------------------------------------------------------------
# Valuation


def iter_constraints(problem: Problem | RawProblem) -> Iterator[Constraint]:
    store = problem.constraints
    if isinstance(store, dict):
        for scope in sorted(store):
            yield store[scope]
    else:
        yield from store


def combined_value(problem: Problem | RawProblem, assignment: Assignment) -> int:
    """Fold the combination product over every constraint's value at the tuple."""
    if len(assignment) != problem.n:
        raise ValueError("assignment must cover every variable")
    sizes = problem.domain_sizes
    otimes = problem.algebra.otimes
    acc = problem.algebra.top
    for c in iter_constraints(problem):
        index = 0
        for var in c.scope:
            index = index * sizes[var] + assignment[var]
        acc = otimes[acc][c.values[index]]
    return acc


# ---------------------------------------------------------------------------
# Local consistency predicate


def is_k_hyperarc_consistent(problem: Problem, k: int) -> Violation | None:
    """Check the consistency equation on every stored scope of arity 2..k.

    For each variable i of such a scope and each domain value a with a
    non-bottom unary value, some extension tuple t must satisfy
    C_i(a) = C_i(a) * C_scope(t . a). Returns None when every point has
    a witness, else the first violation in canonical order (scopes
    sorted, then variable, then value).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    alg = problem.algebra
    otimes = alg.otimes
    for scope in sorted(problem.constraints):
        if not 2 <= len(scope) <= k:
            continue
        table = problem.constraints[scope].values
        for pos, var in enumerate(scope):
            unary = problem.unary(var).values
            fibers_cache: list[int] | None = None
            for a in range(problem.domain_sizes[var]):
                ua = unary[a]
                if ua == alg.bottom:
                    continue
                if fibers_cache is None:
                    fibers_cache = fiber_indices(scope, problem.domain_sizes, pos, 0)
                    stride = _strides(scope_sizes(scope, problem.domain_sizes))[pos]
                base = a * stride
                if not any(otimes[ua][table[r + base]] == ua for r in fibers_cache):
                    return Violation(scope, var, a)
    return None
