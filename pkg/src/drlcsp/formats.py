"""JSON interchange for algebras and problems, plus random instances.

Canonical output is a single line of JSON with sorted keys and no
floats, terminated by a newline, so round-trips are byte-identical.
"""

from __future__ import annotations

import itertools
import json
from math import prod
from pathlib import Path

from .algebra import (
    AxiomCheck,
    AxiomReport,
    FiniteDRL,
    check_axioms,
    derive_lattice,
    residuum_from_tables,
)
from .errors import (
    AxiomViolation,
    NotEnoughScopes,
    ParseError,
    ScopeError,
    TooLarge,
    ValueOutOfRange,
)
from .model import Constraint, Problem, RawProblem, normalize, table_len
from .rng import SplitMix64

MAX_TABLE_ENTRIES = 1_000_000


def _canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# Algebras


def save_algebra(algebra: FiniteDRL) -> str:
    payload = {
        "name": algebra.name,
        "size": algebra.size,
        "top": algebra.top,
        "bottom": algebra.bottom,
        "leq": [[1 if v else 0 for v in row] for row in algebra.leq],
        "meet": [list(row) for row in algebra.meet],
        "join": [list(row) for row in algebra.join],
        "otimes": [list(row) for row in algebra.otimes],
        "residuum": [list(row) for row in algebra.residuum],
    }
    return _canonical(payload)


def _int_table(obj, key: str, size: int) -> tuple[tuple[int, ...], ...]:
    table = obj.get(key)
    if (
        not isinstance(table, list)
        or len(table) != size
        or any(not isinstance(row, list) or len(row) != size for row in table)
        or any(not isinstance(v, int) or isinstance(v, bool) for row in table for v in row)
    ):
        raise ParseError(f"{key!r} must be a {size}x{size} integer table")
    return tuple(tuple(row) for row in table)


def load_algebra(text: str, *, validate: bool = True) -> FiniteDRL:
    """Parse an algebra, deriving any absent meet/join/residuum tables.

    With validate=True (the default), tables present in the file must
    match their derivations exactly and the result must pass the full
    law check; any failure raises AxiomViolation. With validate=False
    the file's tables are taken as given, which lets `algebra check`
    report law failures instead of refusing to load.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("algebra payload must be an object")
    size = obj.get("size")
    if not isinstance(size, int) or size < 1:
        raise ParseError("'size' must be a positive integer")
    for key in ("top", "bottom"):
        v = obj.get(key)
        if not isinstance(v, int) or not 0 <= v < size:
            raise ParseError(f"{key!r} must be an element id below {size}")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise ParseError("'name' must be a string")

    leq_raw = _int_table(obj, "leq", size)
    if any(v not in (0, 1) for row in leq_raw for v in row):
        raise ParseError("'leq' entries must be 0 or 1")
    leq = tuple(tuple(bool(v) for v in row) for row in leq_raw)
    otimes = _int_table(obj, "otimes", size)
    _check_entries(otimes, size, "otimes")
    supplied = {}
    for key in ("meet", "join", "residuum"):
        if key in obj:
            supplied[key] = _int_table(obj, key, size)
            _check_entries(supplied[key], size, key)

    derived = None
    if validate or "meet" not in supplied or "join" not in supplied:
        derived = derive_lattice(leq)
    if validate:
        meet, join, top, bottom = derived
    else:
        meet = supplied["meet"] if "meet" in supplied else derived[0]
        join = supplied["join"] if "join" in supplied else derived[1]
        top, bottom = obj["top"], obj["bottom"]

    mismatches = []
    if validate:
        if top != obj["top"]:
            mismatches.append(AxiomCheck("declared-top", False, (obj["top"], top, 0)))
        if bottom != obj["bottom"]:
            mismatches.append(AxiomCheck("declared-bottom", False, (obj["bottom"], bottom, 0)))
        for key, derived in (("meet", meet), ("join", join)):
            if key in supplied and supplied[key] != derived:
                mismatches.append(
                    AxiomCheck(f"declared-{key}", False, _first_diff(supplied[key], derived))
                )

    if "residuum" in supplied and not validate:
        residuum = supplied["residuum"]
    else:
        residuum = residuum_from_tables(leq, join, otimes)
        if "residuum" in supplied and supplied["residuum"] != residuum:
            mismatches.append(
                AxiomCheck("declared-residuum", False, _first_diff(supplied["residuum"], residuum))
            )
    if mismatches:
        raise AxiomViolation(AxiomReport("load", tuple(mismatches)))

    algebra = FiniteDRL(
        size, leq, meet, join, otimes, residuum, obj["top"], obj["bottom"], name
    )
    if validate:
        report = check_axioms(algebra, "drl")
        if not report.ok:
            raise AxiomViolation(report)
    return algebra


def _check_entries(table, size: int, key: str) -> None:
    if any(not 0 <= v < size for row in table for v in row):
        raise ParseError(f"{key!r} has entries outside the carrier")


def _first_diff(a, b) -> tuple[int, int, int]:
    for x, (ra, rb) in enumerate(zip(a, b)):
        for y, (va, vb) in enumerate(zip(ra, rb)):
            if va != vb:
                return (x, y, 0)
    return (0, 0, 0)


def read_algebra(path: str | Path) -> FiniteDRL:
    return load_algebra(Path(path).read_text())


def write_algebra(algebra: FiniteDRL, path: str | Path) -> None:
    Path(path).write_text(save_algebra(algebra))


# ---------------------------------------------------------------------------
# Problems


def save_problem(problem: Problem | RawProblem) -> str:
    if isinstance(problem, Problem):
        constraints = [problem.constraints[s] for s in sorted(problem.constraints)]
    else:
        constraints = list(problem.constraints)
    payload = {
        "algebra": json.loads(save_algebra(problem.algebra)),
        "domains": list(problem.domain_sizes),
        "constraints": [
            {"scope": list(c.scope), "values": list(c.values)} for c in constraints
        ],
    }
    return _canonical(payload)


def load_problem_raw(
    text: str, algebra: FiniteDRL | None = None, base_dir: str | Path | None = None
) -> RawProblem:
    """Parse a problem without normalizing; duplicate scopes survive.

    The algebra comes from the `algebra` argument when given, otherwise
    from the payload's "algebra" field (an inline object or a path to an
    algebra file, resolved against `base_dir`).
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("problem payload must be an object")

    if algebra is None:
        ref = obj.get("algebra")
        if isinstance(ref, str):
            path = Path(ref)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            algebra = read_algebra(path)
        elif isinstance(ref, dict):
            algebra = load_algebra(json.dumps(ref))
        else:
            raise ParseError("'algebra' must be an inline object or a file path")

    domains = obj.get("domains")
    if (
        not isinstance(domains, list)
        or not domains
        or any(not isinstance(d, int) or d < 1 for d in domains)
    ):
        raise ParseError("'domains' must be a nonempty list of positive sizes")
    domain_sizes = tuple(domains)
    n = len(domain_sizes)

    entries = obj.get("constraints")
    if not isinstance(entries, list):
        raise ParseError("'constraints' must be a list")
    constraints = []
    for entry in entries:
        if not isinstance(entry, dict):
            raise ParseError("each constraint must be an object")
        scope = entry.get("scope")
        if not isinstance(scope, list) or any(not isinstance(v, int) for v in scope):
            raise ScopeError("'scope' must be a list of variable ids")
        if any(not 0 <= v < n for v in scope):
            raise ScopeError(f"scope {scope} mentions unknown variables")
        if any(a >= b for a, b in zip(scope, scope[1:])):
            raise ScopeError(f"scope {scope} must be strictly increasing")
        scope_t = tuple(scope)
        expected = table_len(scope_t, domain_sizes)
        if expected > MAX_TABLE_ENTRIES:
            raise TooLarge(f"table for scope {scope} needs {expected} entries")
        values = entry.get("values")
        if not isinstance(values, list) or len(values) != expected:
            raise ParseError(f"scope {scope} needs exactly {expected} values")
        if any(not isinstance(v, int) or not 0 <= v < algebra.size for v in values):
            raise ValueOutOfRange(f"scope {scope} has values outside the algebra")
        constraints.append(Constraint(scope_t, list(values)))
    return RawProblem(algebra, domain_sizes, constraints)


def load_problem(
    text: str, algebra: FiniteDRL | None = None, base_dir: str | Path | None = None
) -> Problem | None:
    """Parse and normalize; returns None when normalization empties a domain."""
    return normalize(load_problem_raw(text, algebra, base_dir))


def read_problem(path: str | Path) -> Problem | None:
    p = Path(path)
    return load_problem(p.read_text(), base_dir=p.parent)


def read_problem_raw(path: str | Path) -> RawProblem:
    p = Path(path)
    return load_problem_raw(p.read_text(), base_dir=p.parent)


def write_problem(problem: Problem | RawProblem, path: str | Path) -> None:
    Path(path).write_text(save_problem(problem))


# ---------------------------------------------------------------------------
# Random instances


def gen_random_problem(
    algebra: FiniteDRL, n: int, d: int, e: int, max_arity: int, seed: int
) -> Problem:
    """Deterministic random instance: n variables of size d, e constraints.

    All n unary constraints are present with values drawn uniformly over
    the non-bottom elements; the remaining e - n scopes are drawn
    uniformly without replacement from the scopes of arity 2..max_arity,
    with table values uniform over the whole carrier. The same inputs
    always produce the identical problem.
    """
    if n < 1 or d < 1:
        raise ValueError("need at least one variable and one domain value")
    if not 2 <= max_arity <= n:
        raise ValueError("max_arity must lie in [2, n]")
    if e < n:
        raise ValueError("e must cover the n unary constraints")
    if algebra.size < 2:
        raise ValueError("algebra must have a non-bottom element")

    rng = SplitMix64(seed)
    domain_sizes = (d,) * n
    non_bottom = [v for v in range(algebra.size) if v != algebra.bottom]

    constraints = [
        Constraint((i,), [non_bottom[rng.below(len(non_bottom))] for _ in range(d)])
        for i in range(n)
    ]

    pool = [
        scope
        for arity in range(2, max_arity + 1)
        for scope in itertools.combinations(range(n), arity)
    ]
    need = e - n
    if need > len(pool):
        raise NotEnoughScopes(f"{need} scopes requested, only {len(pool)} exist")
    for _ in range(need):
        scope = pool.pop(rng.below(len(pool)))
        length = prod(d for _ in scope)
        constraints.append(
            Constraint(scope, [rng.below(algebra.size) for _ in range(length)])
        )

    problem = normalize(RawProblem(algebra, domain_sizes, constraints))
    assert problem is not None  # unary values are never bottom by construction
    return problem
