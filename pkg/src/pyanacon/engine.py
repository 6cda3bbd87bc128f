"""Explicit-state conflict analysis.

The contract is stepped one concurrent action step at a time. A state is the
set of clauses still in force; each step turns every clause into what
remains of it (its residual). States are explored breadth first and checked
for the four kinds of normative conflict, so the first conflict found comes
with a shortest trace.

Two things happen when a state is built rather than when it is stepped:
``[1*]C`` stays in force and also puts C in force, and an exclusive choice
is resolved by producing one state per branch.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import chain, combinations, product

from .actions import (
    ActionExpr,
    ActionStep,
    AtomicAction,
    Choice,
    FirstStep,
    MutexRelation,
    Sequence as SequenceAction,
    first_steps,
    is_star_skip,
    mutually_exclusive,
)
from .clauses import (
    BOTTOM,
    TOP,
    And,
    Bottom,
    Box,
    Clause,
    DeonticClause,
    Obligation,
    Permission,
    Prohibition,
    Top,
    XChoice,
    clause_atoms,
    conjoin,
    normalize,
)
from .const import DEFAULT_MAX_DEPTH, DEFAULT_MAX_STATES
from .contract import ContractDocument, SourceSpan
from .english import linearize_re
from .exceptions import InvalidClauseError, StateSpaceExceededError
from .symbolic import print_action, print_cl

_LOGGER = logging.getLogger(__name__)

# A clause in force, with the index of the contract clause it came from.
type StateEntry = tuple[Clause, int]


class Modality(enum.StrEnum):
    OBLIGATION = "O"
    PERMISSION = "P"
    PROHIBITION = "F"


class ConflictKind(enum.StrEnum):
    """The four kinds of normative conflict, in scan order."""

    OBLIGATION_VS_PROHIBITION = "ObligationVsProhibition"
    PERMISSION_VS_PROHIBITION = "PermissionVsProhibition"
    OBLIGATION_VS_OBLIGATION_MUTEX = "ObligationVsObligationMutex"
    PERMISSION_VS_OBLIGATION_MUTEX = "PermissionVsObligationMutex"


@dataclass(frozen=True, slots=True)
class BranchChoice:
    """An exclusive choice and the branch taken on the way to a state."""

    choice: XChoice
    taken: Clause

    def __str__(self) -> str:
        return f"{print_cl(self.taken)} chosen from {print_cl(self.choice)}"


@dataclass(frozen=True, slots=True)
class AnalysisState:
    """Clauses in force after some trace.

    States compare by ``active`` only; ``entries`` keeps source order and
    the contract clause each active clause came from.
    """

    active: frozenset[Clause]
    entries: tuple[StateEntry, ...] = field(default=(), compare=False)
    depth: int = field(default=0, compare=False)

    @property
    def violating(self) -> bool:
        return BOTTOM in self.active

    @property
    def terminal(self) -> bool:
        """Only the violation is left; nothing can happen any more."""
        return self.active == frozenset({BOTTOM})

    def __str__(self) -> str:
        return "{" + ", ".join(print_cl(clause) for clause, _ in self.entries) + "}"


@dataclass(frozen=True, slots=True)
class Transition:
    source: AnalysisState
    step: ActionStep
    target: AnalysisState


@dataclass(slots=True)
class Automaton:
    """The explored part of a contract's state space.

    An exclusive choice in the contract itself gives several initial states.
    ``complete`` is False when a bound stopped the exploration.
    """

    initial: tuple[AnalysisState, ...]
    states: list[AnalysisState]
    transitions: list[Transition]
    alphabet: tuple[AtomicAction, ...]
    complete: bool = True


@dataclass(frozen=True, slots=True)
class DeonticEntry:
    """What one active modality demands, permits or forbids right now."""

    modality: Modality
    atoms: frozenset[AtomicAction]
    wildcard: bool
    source: DeonticClause
    origin: int
    slot: int


@dataclass(frozen=True, slots=True)
class Clash:
    kind: ConflictKind
    left: DeonticEntry
    right: DeonticEntry


@dataclass(frozen=True, slots=True)
class ConflictReport:
    """A conflict, the two clashing statements and how to get there."""

    kind: ConflictKind
    left: DeonticClause
    right: DeonticClause
    trace: tuple[ActionStep, ...] = ()
    choices: tuple[BranchChoice, ...] = ()
    origins: tuple[int, int] = (0, 0)
    spans: tuple[SourceSpan | None, SourceSpan | None] = (None, None)

    @property
    def clash(self) -> tuple[DeonticClause, DeonticClause]:
        return self.left, self.right

    @property
    def as_formula(self) -> Clause:
        """``[trace](left ^ right)``, or just the conjunction for an empty trace."""
        both = And((self.left, self.right))
        if not self.trace:
            return both
        guard = self.trace[0].as_action()
        for step in self.trace[1:]:
            guard = SequenceAction(guard, step.as_action())
        return Box(guard, both)


# A reachable state and the branch choices made to reach it.
type Successor = tuple[AnalysisState, tuple[BranchChoice, ...]]


def _first_step_key(step: FirstStep) -> tuple[tuple[str, ...], bool, str]:
    residual = "" if step.residual is None else print_action(step.residual)
    return tuple(sorted(a.name for a in step.atoms)), step.wildcard, residual


def _ordered_first_steps(action: ActionExpr) -> list[FirstStep]:
    return sorted(first_steps(action), key=_first_step_key)


def _satisfied(action: ActionExpr, step: ActionStep) -> list[FirstStep]:
    return [
        first for first in _ordered_first_steps(action) if first.satisfied_by(step)
    ]


def _unique(clauses: Iterable[Clause]) -> tuple[Clause, ...]:
    return tuple(dict.fromkeys(normalize(clause) for clause in clauses))


def _choice_of(actions: Sequence[ActionExpr]) -> ActionExpr:
    expr = actions[0]
    for action in actions[1:]:
        expr = Choice(expr, action)
    return expr


def step_clause(clause: Clause, step: ActionStep) -> tuple[Clause, ...]:
    """Residuals of *clause* after *step*, one per way the step can be read.

    Raises UnsupportedConstructError for negation or a repeated guard other
    than ``1*``.
    """
    match clause:
        case Top() | Bottom():
            return (clause,)
        case Obligation(action, reparation):
            taken = _satisfied(action, step)
            if not taken:
                return (BOTTOM if reparation is None else normalize(reparation),)
            return _unique(
                TOP
                if first.residual is None
                else Obligation(first.residual, reparation)
                for first in taken
            )
        case Prohibition(action, reparation):
            taken = _satisfied(action, step)
            if any(first.done for first in taken):
                return (BOTTOM if reparation is None else normalize(reparation),)
            partial = [first.residual for first in taken if first.residual is not None]
            if partial:
                return (Prohibition(_choice_of(partial), reparation),)
            return (TOP,)
        case Permission():
            return (TOP,)
        case Box(guard, body):
            if is_star_skip(guard):
                return (clause,)
            taken = _satisfied(guard, step)
            if not taken:
                return (TOP,)
            outcomes = _unique(
                body if first.residual is None else Box(first.residual, body)
                for first in taken
            )
            return (normalize(conjoin(outcomes)),)
        case And(items):
            options = [step_clause(item, step) for item in items]
            return _unique(conjoin(combo) for combo in product(*options))
        case XChoice(left, right):
            return _unique(chain(step_clause(left, step), step_clause(right, step)))


def _variants(
    pending: tuple[StateEntry, ...],
    entries: tuple[StateEntry, ...],
    choices: tuple[BranchChoice, ...],
) -> Iterator[tuple[tuple[StateEntry, ...], tuple[BranchChoice, ...]]]:
    if not pending:
        yield entries, choices
        return
    (clause, origin), rest = pending[0], pending[1:]
    clause = normalize(clause)
    match clause:
        case Top():
            yield from _variants(rest, entries, choices)
        case And(items):
            flat = tuple((item, origin) for item in items)
            yield from _variants(flat + rest, entries, choices)
        case XChoice(left, right):
            for taken in (left, right):
                yield from _variants(
                    ((taken, origin), *rest),
                    entries,
                    (*choices, BranchChoice(clause, taken)),
                )
        case _ if any(clause == present for present, _ in entries):
            yield from _variants(rest, entries, choices)
        case Box(guard, body) if is_star_skip(guard):
            yield from _variants(
                ((body, origin), *rest), (*entries, (clause, origin)), choices
            )
        case _:
            yield from _variants(rest, (*entries, (clause, origin)), choices)


def make_states(items: Iterable[StateEntry], depth: int = 0) -> list[Successor]:
    """Build the states for a collection of clauses in force.

    Conjunctions are flattened, ``T`` dropped, ``[1*]C`` unfolded and every
    exclusive choice split, so more than one state may come back. Each comes
    with the branch choices that produced it.
    """
    states: dict[frozenset[Clause], Successor] = {}
    for entries, choices in _variants(tuple(items), (), ()):
        active = frozenset(clause for clause, _ in entries)
        if active not in states:
            states[active] = (AnalysisState(active, entries, depth), choices)
    return list(states.values())


def initial_states(clauses: Sequence[Clause]) -> list[Successor]:
    """States the contract starts in, one per resolution of its choices."""
    return make_states((clause, index) for index, clause in enumerate(clauses))


def successors(
    state: AnalysisState, step: ActionStep, mutex: MutexRelation
) -> list[Successor]:
    """Every state *step* can lead to from *state*.

    Raises InvalidClauseError if the step performs mutually exclusive
    actions.
    """
    if mutex.excludes(step.atoms):
        raise InvalidClauseError(f"Step {step} performs mutually exclusive actions")
    options = [
        [(result, origin) for result in step_clause(clause, step)]
        for clause, origin in state.entries
    ]
    found: dict[AnalysisState, tuple[BranchChoice, ...]] = {}
    for combo in product(*options):
        for target, choices in make_states(combo, state.depth + 1):
            found.setdefault(target, choices)
    return list(found.items())


def residual(
    state: AnalysisState, step: ActionStep, mutex: MutexRelation
) -> AnalysisState:
    """The first state *step* leads to from *state*.

    When an obligation can be met in several ways, or an exclusive choice
    comes into force, :func:`successors` gives all of them.
    """
    return successors(state, step, mutex)[0][0]


def active_deontics(state: AnalysisState) -> list[DeonticEntry]:
    """Modalities in force now, one entry per way their action can start."""
    result: list[DeonticEntry] = []
    for slot, (clause, origin) in enumerate(state.entries):
        match clause:
            case Obligation(action):
                modality = Modality.OBLIGATION
            case Permission(action):
                modality = Modality.PERMISSION
            case Prohibition(action):
                modality = Modality.PROHIBITION
            case _:
                continue
        result.extend(
            DeonticEntry(modality, first.atoms, first.wildcard, clause, origin, slot)
            for first in _ordered_first_steps(action)
        )
    return result


def _overlaps(entry: DeonticEntry, forbidden: DeonticEntry) -> bool:
    """Doing one of the two necessarily does the other."""
    if forbidden.atoms <= entry.atoms:
        return True
    return not entry.wildcard and entry.atoms <= forbidden.atoms


def check_state(state: AnalysisState, mutex: MutexRelation) -> Clash | None:
    """Return the first conflict in *state*, scanning kinds in order."""
    entries = active_deontics(state)
    by_modality = {
        modality: [entry for entry in entries if entry.modality is modality]
        for modality in Modality
    }
    obligations = by_modality[Modality.OBLIGATION]
    permissions = by_modality[Modality.PERMISSION]
    prohibitions = by_modality[Modality.PROHIBITION]

    for kind, candidates in (
        (ConflictKind.OBLIGATION_VS_PROHIBITION, obligations),
        (ConflictKind.PERMISSION_VS_PROHIBITION, permissions),
    ):
        for forbidden in prohibitions:
            for entry in candidates:
                if _overlaps(entry, forbidden):
                    return Clash(kind, entry, forbidden)

    for first, second in combinations(obligations, 2):
        if first.slot != second.slot and mutually_exclusive(
            first.atoms, second.atoms, mutex
        ):
            return Clash(ConflictKind.OBLIGATION_VS_OBLIGATION_MUTEX, first, second)

    for permitted in permissions:
        for obliged in obligations:
            if permitted.slot != obliged.slot and mutually_exclusive(
                permitted.atoms, obliged.atoms, mutex
            ):
                return Clash(
                    ConflictKind.PERMISSION_VS_OBLIGATION_MUTEX, permitted, obliged
                )
    return None


def iter_steps(
    alphabet: Iterable[AtomicAction], mutex: MutexRelation
) -> Iterator[ActionStep]:
    """Yield every non-empty step without a mutually exclusive pair.

    Larger steps come first; steps of one size follow name order.
    """
    ordered = sorted(set(alphabet))
    for size in range(len(ordered), 0, -1):
        for combo in combinations(ordered, size):
            atoms = frozenset(combo)
            if not mutex.excludes(atoms):
                yield ActionStep(atoms)


@dataclass(slots=True)
class _Node:
    state: AnalysisState
    choices: tuple[BranchChoice, ...]
    parent: _Node | None = None
    step: ActionStep | None = None

    def path(self) -> list[_Node]:
        nodes: list[_Node] = []
        node: _Node | None = self
        while node is not None:
            nodes.append(node)
            node = node.parent
        return nodes[::-1]


class _Explorer:
    """Breadth-first walk over the states of one contract."""

    def __init__(
        self,
        clauses: Sequence[Clause],
        alphabet: Iterable[AtomicAction],
        mutex: MutexRelation,
        *,
        max_states: int,
        max_depth: int,
        spans: Sequence[SourceSpan | None] = (),
    ) -> None:
        self.clauses = tuple(clauses)
        self.alphabet = tuple(sorted(set(alphabet)))
        self.mutex = mutex
        self.max_states = max_states
        self.max_depth = max_depth
        self.spans = tuple(spans)
        self.visited: dict[AnalysisState, _Node] = {}
        self.roots: list[_Node] = []
        self.transitions: list[Transition] = []
        self.state_limit_hit = False
        self.depth_limit_hit = False
        self._queue: deque[_Node] = deque()
        self.steps = tuple(iter_steps(self.alphabet, mutex))

    def run(self, *, stop_on_conflict: bool, record: bool) -> ConflictReport | None:
        for state, choices in initial_states(self.clauses):
            node = _Node(state, choices)
            self.roots.append(node)
            report = self._admit(node, stop_on_conflict)
            if report is not None:
                return report
        while self._queue and not self.state_limit_hit:
            node = self._queue.popleft()
            if node.state.terminal:
                continue
            report = self._expand(node, stop_on_conflict, record)
            if report is not None:
                return report
            _LOGGER.debug(
                "Explored %d states, %d queued", len(self.visited), len(self._queue)
            )
        return None

    def _admit(self, node: _Node, stop_on_conflict: bool) -> ConflictReport | None:
        self.visited[node.state] = node
        self._queue.append(node)
        if stop_on_conflict:
            clash = check_state(node.state, self.mutex)
            if clash is not None:
                return self._report(node, clash)
        return None

    def _expand(
        self, node: _Node, stop_on_conflict: bool, record: bool
    ) -> ConflictReport | None:
        state = node.state
        at_bound = state.depth >= self.max_depth
        relevant = frozenset(
            chain.from_iterable(clause_atoms(clause) for clause, _ in state.entries)
        )
        # Only the relevant part of a step can change the outcome.
        cache: dict[frozenset[AtomicAction], list[Successor]] = {}
        for step in self.steps:
            key = step.atoms & relevant
            if key not in cache:
                cache[key] = successors(state, step, self.mutex)
            for target, choices in cache[key]:
                known = self.visited.get(target)
                if known is not None:
                    if record:
                        self.transitions.append(Transition(state, step, known.state))
                    continue
                if at_bound:
                    self.depth_limit_hit = True
                    if record:
                        continue
                    return None
                if len(self.visited) >= self.max_states:
                    self.state_limit_hit = True
                    return None
                child = _Node(target, choices, node, step)
                if record:
                    self.transitions.append(Transition(state, step, target))
                report = self._admit(child, stop_on_conflict)
                if report is not None:
                    return report
        return None

    def _report(self, node: _Node, clash: Clash) -> ConflictReport:
        path = node.path()
        trace = tuple(item.step for item in path if item.step is not None)
        choices = tuple(chain.from_iterable(item.choices for item in path))
        origins = (clash.left.origin, clash.right.origin)
        report = ConflictReport(
            kind=clash.kind,
            left=clash.left.source,
            right=clash.right.source,
            trace=trace,
            choices=choices,
            origins=origins,
            spans=(self._span(origins[0]), self._span(origins[1])),
        )
        _LOGGER.info(
            "%s conflict after %d steps (%d states explored)",
            report.kind,
            len(trace),
            len(self.visited),
        )
        return report

    def _span(self, origin: int) -> SourceSpan | None:
        return self.spans[origin] if origin < len(self.spans) else None

    def raise_if_inconclusive(self) -> None:
        if self.state_limit_hit:
            err = StateSpaceExceededError(
                "max_states", self.max_states, len(self.visited)
            )
        elif self.depth_limit_hit:
            err = StateSpaceExceededError(
                "max_depth", self.max_depth, len(self.visited)
            )
        else:
            return
        _LOGGER.warning("Exploration stopped without a verdict: %s", err)
        raise err


def check_contract(
    clauses: Sequence[Clause],
    mutex: MutexRelation | None = None,
    *,
    alphabet: Iterable[AtomicAction] | None = None,
    max_states: int = DEFAULT_MAX_STATES,
    max_depth: int = DEFAULT_MAX_DEPTH,
    spans: Sequence[SourceSpan | None] = (),
) -> ConflictReport | None:
    """Look for a conflict in the conjunction of *clauses*.

    *alphabet* defaults to the actions the clauses mention. Returns None
    when the whole reachable state space is conflict-free. Raises
    StateSpaceExceededError when a bound stops the search first.
    """
    if mutex is None:
        mutex = MutexRelation()
    if alphabet is None:
        alphabet = chain.from_iterable(clause_atoms(clause) for clause in clauses)
    explorer = _Explorer(
        clauses,
        alphabet,
        mutex,
        max_states=max_states,
        max_depth=max_depth,
        spans=spans,
    )
    _LOGGER.debug(
        "Checking %d clauses over %d actions (%d steps per state)",
        len(explorer.clauses),
        len(explorer.alphabet),
        len(explorer.steps),
    )
    report = explorer.run(stop_on_conflict=True, record=False)
    if report is not None:
        return report
    explorer.raise_if_inconclusive()
    _LOGGER.debug("No conflict in %d states", len(explorer.visited))
    return None


def build_and_check(
    doc: ContractDocument,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ConflictReport | None:
    """Look for a conflict in a validated contract document.

    Steps range over the dictionary's actions and respect its
    contradictions.
    """
    return check_contract(
        doc.clauses,
        doc.mutex,
        alphabet=doc.actions,
        max_states=max_states,
        max_depth=max_depth,
        spans=doc.source_spans,
    )


def build_automaton(
    doc: ContractDocument,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Automaton:
    """Explore the document's state space without stopping at conflicts."""
    explorer = _Explorer(
        doc.clauses,
        doc.actions,
        doc.mutex,
        max_states=max_states,
        max_depth=max_depth,
        spans=doc.source_spans,
    )
    explorer.run(stop_on_conflict=False, record=True)
    return Automaton(
        initial=tuple(node.state for node in explorer.roots),
        states=list(explorer.visited),
        transitions=explorer.transitions,
        alphabet=explorer.alphabet,
        complete=not (explorer.state_limit_hit or explorer.depth_limit_hit),
    )


def _describe_origin(origin: int, span: SourceSpan | None) -> str:
    where = f" ({span})" if span is not None else ""
    return f"clause {origin + 1}{where}"


def report_to_english(report: ConflictReport) -> str:
    """Render a conflict report in restricted English.

    A ``%`` header names the conflict kind and where the clashing clauses
    come from, followed by any exclusive-choice branches taken.
    """
    left, right = (
        _describe_origin(origin, span)
        for origin, span in zip(report.origins, report.spans, strict=True)
    )
    lines = [f"% {report.kind} between {left} and {right}"]
    lines += [f"% choice: {choice}" for choice in report.choices]
    lines.append(linearize_re(report.as_formula))
    return "\n".join(lines) + "\n"
