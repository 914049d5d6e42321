"""k-hyperarc consistency enforcement.

The algorithm pops variables from a FIFO worklist and, for every stored
constraint of arity 2..k containing the popped variable, projects costs
from the constraint table onto the variable's unary constraint: a value
x is chosen from the table entries compatible with each domain value,
the unary entry is multiplied by x, and each table entry v is replaced
by the residuum x -> v. A variable is re-queued whenever one of its
unary values drops to bottom; the run aborts as inconsistent when all
of them do.

How x is chosen is configurable. On totally ordered algebras every
choice coincides (the candidate set has a maximum); on general lattices
the paired regression tests in the suite show that maximal-element
choices can break equivalence while the join choice can stall short of
consistency, so both are provided explicitly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .model import Problem, Scope, fiber_indices, scope_sizes
from .oracle import maximal_elements
from .rng import SplitMix64

_STRATEGY_KINDS = ("maximal-lex", "maximal-seeded", "join")


@dataclass(frozen=True)
class Strategy:
    """Rule for choosing x among the candidate table entries.

    maximal-lex: the maximal element first achieved in canonical tuple
    order. maximal-seeded: uniform among maximal elements, driven by a
    deterministic seeded generator. join: the join of all candidates.
    """

    kind: str
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in _STRATEGY_KINDS:
            raise ValueError(f"unknown strategy {self.kind!r}")
        if (self.kind == "maximal-seeded") != (self.seed is not None):
            raise ValueError("exactly the maximal-seeded strategy takes a seed")


MAXIMAL_LEX = Strategy("maximal-lex")
JOIN = Strategy("join")


def maximal_seeded(seed: int) -> Strategy:
    return Strategy("maximal-seeded", seed)


def parse_strategy(text: str) -> Strategy:
    """Parse 'maximal-lex', 'join', or 'maximal-seeded:SEED'."""
    if text == "maximal-lex":
        return MAXIMAL_LEX
    if text == "join":
        return JOIN
    if text.startswith("maximal-seeded:"):
        return maximal_seeded(int(text.split(":", 1)[1]))
    raise ValueError(f"cannot parse strategy {text!r}")


@dataclass
class Counters:
    main_loop_iterations: int = 0
    project_calls: int = 0
    inner_tuple_iterations: int = 0


@dataclass
class EnforcementOutcome:
    """Either an inconsistency verdict or the transformed problem."""

    inconsistent: bool
    problem: Problem | None
    counters: Counters = field(default_factory=Counters)


def _select(algebra, candidates: list[int], strategy: Strategy, rng: SplitMix64 | None) -> int:
    if strategy.kind == "join":
        join = algebra.join
        acc = candidates[0]
        for v in candidates[1:]:
            acc = join[acc][v]
        return acc
    maximals = maximal_elements(algebra, candidates)
    if strategy.kind == "maximal-lex":
        chosen = set(maximals)
        return next(v for v in candidates if v in chosen)
    assert rng is not None
    return maximals[rng.below(len(maximals))]


def project(
    problem: Problem,
    scope: Scope,
    var: int,
    strategy: Strategy = MAXIMAL_LEX,
    *,
    rng: SplitMix64 | None = None,
    counters: Counters | None = None,
) -> bool:
    """Project one constraint onto one of its variables, in place.

    Returns True iff some unary value of `var` dropped to bottom. The
    caller must hold exclusive access to the problem.
    """
    scope = tuple(scope)
    constraint = problem.constraints.get(scope)
    if constraint is None:
        raise ValueError(f"no constraint with scope {scope}")
    if var not in scope:
        raise ValueError(f"variable {var} is not in scope {scope}")
    if len(scope) < 2:
        raise ValueError("projection needs a scope of arity at least 2")
    if rng is None and strategy.kind == "maximal-seeded":
        rng = SplitMix64(strategy.seed)

    alg = problem.algebra
    bottom = alg.bottom
    otimes = alg.otimes
    residuum = alg.residuum
    pos = scope.index(var)
    offsets = fiber_indices(scope, problem.domain_sizes, pos, 0)
    stride = 1
    for size in scope_sizes(scope, problem.domain_sizes)[pos + 1:]:
        stride *= size

    table = constraint.values
    unary = problem.unary(var).values
    shrank = False
    for a in range(problem.domain_sizes[var]):
        if unary[a] == bottom:
            continue
        indices = [off + a * stride for off in offsets]
        candidates = [table[i] for i in indices]
        x = _select(alg, candidates, strategy, rng)
        unary[a] = otimes[unary[a]][x]
        if unary[a] == bottom:
            shrank = True
        imp_x = residuum[x]
        for i in indices:
            table[i] = imp_x[table[i]]
        if counters is not None:
            counters.inner_tuple_iterations += 2 * len(indices)
    return shrank


def enforce_k_hyperarc(
    problem: Problem, k: int, strategy: Strategy = MAXIMAL_LEX
) -> EnforcementOutcome:
    """Run the worklist algorithm on a copy of the problem.

    The queue starts with every variable in id order; popped variables
    are projected against their stored scopes of arity 2..k in sorted
    scope order and re-queued (without duplicates) after any domain
    shrink. Inconsistency is reported as soon as some variable has only
    bottom unary values.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    work = problem.copy()
    bottom = work.algebra.bottom
    counters = Counters()
    rng = SplitMix64(strategy.seed) if strategy.kind == "maximal-seeded" else None

    scopes_by_var: dict[int, list[Scope]] = {i: [] for i in range(work.n)}
    for scope in sorted(work.constraints):
        if 2 <= len(scope) <= k:
            for v in scope:
                scopes_by_var[v].append(scope)

    queue = deque(range(work.n))
    queued = set(queue)
    while queue:
        i = queue.popleft()
        queued.discard(i)
        counters.main_loop_iterations += 1
        for scope in scopes_by_var[i]:
            shrank = project(work, scope, i, strategy, rng=rng, counters=counters)
            counters.project_calls += 1
            unary = work.unary(i).values
            if all(v == bottom for v in unary):
                return EnforcementOutcome(True, None, counters)
            if shrank and i not in queued:
                queue.append(i)
                queued.add(i)
    return EnforcementOutcome(False, work, counters)


def check_counter_bound(counters: Counters, n: int, d: int, e: int) -> bool:
    """Verify the worklist bounds: n(d+1) pops and n(d+1)e projections."""
    budget = n * (d + 1)
    return counters.main_loop_iterations <= budget and counters.project_calls <= budget * e
