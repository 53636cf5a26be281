"""Structure-preserving clausification and an all-models DPLL backend."""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    Atom,
    Literal,
    Program,
    atom_set_key,
    eliminate_classical_negation,
    is_normal,
    literal_set_key,
)
from .semantics import CapacityError, is_answer_set
from .completion import (
    Completion,
    PAnd,
    PFalse,
    PNot,
    POr,
    PropFormula,
    PTRUE,
    PFALSE,
    PTrue,
    PVar,
    completion,
)
from .tightness import is_absolutely_tight, is_tight_on

TAG_ABSOLUTELY_TIGHT = "absolutely-tight"
TAG_TIGHT_ON_MODEL = "tight-on-model"
TAG_VERIFIED = "verified"


class ModelCapError(CapacityError):
    """More models exist than the configured cap allows."""


@dataclass
class Cnf:
    """Clauses over variables 1..num_vars; original atoms form a prefix."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    varmap: dict[Atom, int]


@dataclass
class SolveStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0


@dataclass
class SolveReport:
    models: tuple[frozenset[Atom], ...]
    stats: SolveStats


def simplify_prop(f: PropFormula) -> PropFormula:
    """Constant folding and double-negation removal; off by default in
    clausify so the clause structure mirrors the completion verbatim."""
    if isinstance(f, PNot):
        g = simplify_prop(f.operand)
        if isinstance(g, PNot):
            return g.operand
        if isinstance(g, PTrue):
            return PFALSE
        if isinstance(g, PFalse):
            return PTRUE
        return PNot(g)
    if isinstance(f, PAnd):
        a, b = simplify_prop(f.left), simplify_prop(f.right)
        if isinstance(a, PFalse) or isinstance(b, PFalse):
            return PFALSE
        if isinstance(a, PTrue):
            return b
        if isinstance(b, PTrue):
            return a
        return PAnd(a, b)
    if isinstance(f, POr):
        a, b = simplify_prop(f.left), simplify_prop(f.right)
        if isinstance(a, PTrue) or isinstance(b, PTrue):
            return PTRUE
        if isinstance(a, PFalse):
            return b
        if isinstance(b, PFalse):
            return a
        return POr(a, b)
    return f


def clausify(comp: Completion, simplify: bool = False) -> Cnf:
    """Tseitin translation; every connective gets a definitional variable,
    including each negation, so nested ``not not`` stays visible."""
    atoms = [a for a, _ in comp.entries]
    varmap = {a: i + 1 for i, a in enumerate(atoms)}
    clauses: list[tuple[int, ...]] = []
    cache: dict[PropFormula, int] = {}
    state = {"next": len(atoms), "true": 0}

    def fresh() -> int:
        state["next"] += 1
        return state["next"]

    def emit(lits: tuple[int, ...]) -> None:
        out = []
        seen = set()
        for l in lits:
            if -l in seen:
                return  # tautology
            if l not in seen:
                seen.add(l)
                out.append(l)
        clauses.append(tuple(out))

    def const_true() -> int:
        if not state["true"]:
            state["true"] = fresh()
            clauses.append((state["true"],))
        return state["true"]

    def walk(f: PropFormula) -> int:
        got = cache.get(f)
        if got is not None:
            return got
        if isinstance(f, PVar):
            out = varmap[f.atom]
        elif isinstance(f, PTrue):
            out = const_true()
        elif isinstance(f, PFalse):
            out = -const_true()
        elif isinstance(f, PNot):
            c = walk(f.operand)
            out = fresh()
            emit((-out, -c))
            emit((out, c))
        elif isinstance(f, (PAnd, POr)):
            a = walk(f.left)
            b = walk(f.right)
            out = fresh()
            if isinstance(f, PAnd):
                emit((-out, a))
                emit((-out, b))
                emit((out, -a, -b))
            else:
                emit((out, -a))
                emit((out, -b))
                emit((-out, a, b))
        else:
            raise TypeError(f"cannot clausify {f!r}")
        cache[f] = out
        return out

    for atom, disj in comp.entries:
        d = walk(simplify_prop(disj) if simplify else disj)
        v = varmap[atom]
        emit((-v, d))
        emit((v, -d))
    for body in comp.constraint_bodies:
        b = walk(simplify_prop(body) if simplify else body)
        emit((-b,))
    return Cnf(state["next"], tuple(clauses), varmap)


def _dpll_first(num_vars: int, clauses: list[tuple[int, ...]], stats: SolveStats):
    """First satisfying assignment in deterministic order, or None.

    Branches on the lowest-numbered unassigned variable, false before true.
    """
    assign = [0] * (num_vars + 1)

    def propagate(trail: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned = 0
                last = 0
                satisfied = False
                for lit in clause:
                    v = assign[lit if lit > 0 else -lit]
                    val = v if lit > 0 else -v
                    if val > 0:
                        satisfied = True
                        break
                    if val == 0:
                        unassigned += 1
                        last = lit
                if satisfied:
                    continue
                if unassigned == 0:
                    stats.conflicts += 1
                    return False
                if unassigned == 1:
                    var = abs(last)
                    assign[var] = 1 if last > 0 else -1
                    trail.append(var)
                    stats.propagations += 1
                    changed = True
        return True

    root: list[int] = []
    if not propagate(root):
        return None
    levels: list[list] = []  # [decision var, tried true branch, trail]
    while True:
        var = next((v for v in range(1, num_vars + 1) if assign[v] == 0), None)
        if var is None:
            return assign
        stats.decisions += 1
        assign[var] = -1
        levels.append([var, False, [var]])
        while not propagate(levels[-1][2]):
            while True:
                if not levels:
                    return None
                v, tried, trail = levels[-1]
                for u in trail:
                    assign[u] = 0
                if tried:
                    levels.pop()
                    continue
                levels[-1][1] = True
                assign[v] = 1
                trail.clear()
                trail.append(v)
                break


def solve_all(cnf: Cnf, max_models: int = 10000) -> SolveReport:
    """All models projected onto the original atoms, via blocking clauses
    over the projected variables only."""
    stats = SolveStats()
    clauses = list(cnf.clauses)
    proj = sorted(cnf.varmap.items(), key=lambda kv: kv[1])
    models: list[frozenset[Atom]] = []
    while True:
        assign = _dpll_first(cnf.num_vars, clauses, stats)
        if assign is None:
            break
        models.append(frozenset(a for a, v in proj if assign[v] == 1))
        if len(models) > max_models:
            raise ModelCapError(f"more than {max_models} models")
        if not proj:
            break
        clauses.append(tuple(-v if assign[v] == 1 else v for _, v in proj))
    ordered = sorted(set(models), key=atom_set_key)
    return SolveReport(tuple(ordered), stats)


def to_dimacs(cnf: Cnf) -> str:
    lines = [
        "c var %d = %s" % (v, a)
        for a, v in sorted(cnf.varmap.items(), key=lambda kv: kv[1])
    ]
    lines.append("p cnf %d %d" % (cnf.num_vars, len(cnf.clauses)))
    for clause in cnf.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


@dataclass
class CompletionSolveResult:
    """Answer sets found through the completion, with how each was admitted.

    completion_models holds every projected model (translated back to
    literals); dropped holds the models that failed the answer set check.
    """

    answer_sets: tuple[frozenset[Literal], ...]
    tags: tuple[str, ...]
    dropped: tuple[frozenset[Literal], ...]
    completion_models: tuple[frozenset[Literal], ...]
    stats: SolveStats


def answer_sets_via_completion(
    program: Program, max_models: int = 10000
) -> CompletionSolveResult:
    """Completion, clausification, all-models search, then admission.

    An absolutely tight program admits every completion model outright.
    Otherwise a model is admitted if the program is tight on it, or failing
    that if it passes the reduct fixpoint check; remaining models are dropped.
    Classical negation is eliminated up front and models are mapped back.
    """
    if is_normal(program):
        target, mapping = program, {}
    else:
        target, mapping = eliminate_classical_negation(program)
    comp = completion(target)
    cnf = clausify(comp)
    report = solve_all(cnf, max_models=max_models)
    models = sorted(
        {frozenset(mapping.get(a, Literal(a)) for a in m) for m in report.models},
        key=literal_set_key,
    )
    accepted: list[frozenset[Literal]] = []
    tags: list[str] = []
    dropped: list[frozenset[Literal]] = []
    if is_absolutely_tight(program):
        accepted = models
        tags = [TAG_ABSOLUTELY_TIGHT] * len(models)
    else:
        for x in models:
            if is_tight_on(program, x):
                accepted.append(x)
                tags.append(TAG_TIGHT_ON_MODEL)
            elif is_answer_set(x, program):
                accepted.append(x)
                tags.append(TAG_VERIFIED)
            else:
                dropped.append(x)
    return CompletionSolveResult(
        tuple(accepted), tuple(tags), tuple(dropped), tuple(models), report.stats
    )
