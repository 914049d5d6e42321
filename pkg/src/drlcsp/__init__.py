"""Soft constraint solving over finite divisible residuated lattices."""

from .algebra import (
    AxiomCheck,
    AxiomReport,
    FiniteDRL,
    VarietyFlags,
    boolean,
    carrier_cap,
    check_axioms,
    classify,
    derive_lattice,
    direct_product,
    expand_cis,
    godel_chain,
    heyting_from_lattice,
    lukasiewicz_chain,
    make_builtin,
    replay_axiom,
    residuum_from_tables,
    weighted,
)
from .enforce import (
    JOIN,
    MAXIMAL_LEX,
    Counters,
    EnforcementOutcome,
    Strategy,
    check_counter_bound,
    enforce_k_hyperarc,
    maximal_seeded,
    parse_strategy,
    project,
)
from .errors import (
    AlgebraError,
    AxiomViolation,
    FormatError,
    NotACIS,
    NotALattice,
    NotBounded,
    NotDistributive,
    NotEnoughScopes,
    ParseError,
    ResiduationFails,
    ScopeError,
    ShapeMismatch,
    SizeOverflow,
    TooLarge,
    ValueOutOfRange,
)
from .formats import (
    gen_random_problem,
    load_algebra,
    load_problem,
    load_problem_raw,
    read_algebra,
    read_problem,
    read_problem_raw,
    save_algebra,
    save_problem,
    write_algebra,
    write_problem,
)
from .model import (
    Constraint,
    Problem,
    RawProblem,
    Violation,
    combined_value,
    extend_assignment,
    index_tuple,
    is_k_hyperarc_consistent,
    normalize,
    project_assignment,
    tuple_index,
)
from .oracle import (
    Counterexample,
    SolutionSet,
    brute_force_solve,
    check_equivalent,
    maximal_elements,
)

__all__ = [name for name in dir() if not name.startswith("_")]
