"""Logic programs with nested expressions: tightness, completion, solving."""

from .syntax import (
    And,
    ArityWarning,
    Atom,
    Bottom,
    FALSE,
    Formula,
    Lit,
    Literal,
    Not,
    Or,
    ParseError,
    Program,
    Rule,
    Top,
    TRUE,
    all_literals,
    atom_key,
    atom_set_key,
    complement,
    conj_of,
    disj_of,
    eliminate_classical_negation,
    format_literal_set,
    is_normal,
    literal_key,
    literal_set_key,
    merge_programs,
    parse_literals,
    parse_program,
    positive_literals,
    regular_literals,
    render,
    render_formula,
    render_rule,
    term_key,
)
from .semantics import (
    CapacityError,
    EnumerationBoundError,
    enumerate_answer_sets_bruteforce,
    is_answer_set,
    is_closed,
    is_consistent,
    minimal_closed_set,
    reduct,
    reduct_formula,
    satisfies,
)
from .completion import (
    Completion,
    PAnd,
    PFALSE,
    PFalse,
    PIff,
    PNot,
    POr,
    PTRUE,
    PTrue,
    PVar,
    PropFormula,
    completion,
    eval_prop,
    is_supported,
    render_completion,
    render_prop,
    satisfies_completion,
)
from .tightness import (
    Digraph,
    ParentGraph,
    PosDepGraph,
    ancestors,
    is_absolutely_tight,
    is_tight_on,
    lambda_witness,
    parent_graph,
    positive_dependency_graph,
    program_positive_literals,
)
from .sat import (
    Cnf,
    CompletionSolveResult,
    ModelCapError,
    SolveReport,
    SolveStats,
    TAG_ABSOLUTELY_TIGHT,
    TAG_TIGHT_ON_MODEL,
    TAG_VERIFIED,
    answer_sets_via_completion,
    clausify,
    simplify_prop,
    solve_all,
    to_dimacs,
)
from .transitive_closure import (
    DefSpec,
    TightnessPreservationReport,
    check_constrained_acyclicity,
    check_tc_extent,
    check_tightness_preservation,
    def_rules,
    is_wellfounded,
    p_extent,
    tc_extent,
    warshall,
)
from .generators import (
    BlocksSpec,
    QueensSpec,
    blocksworld_above_slices,
    blocksworld_history_count_oracle,
    blocksworld_program,
    queens_count_oracle,
    queens_program,
)

__version__ = "0.1.0"
