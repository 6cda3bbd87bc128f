"""Action algebra for CL contracts.

Atomic actions combine with concurrency (``&``), sequence (``.``), choice
(``+``), negation (``!``) and repetition (``*``); ``0`` is the impossible
action and ``1`` the skip action. Star-free, negation-free expressions can be
decomposed step by step with :func:`first_steps`, which is what the conflict
engine uses to advance deontic clauses through a trace. No I/O.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import zip_longest

from .const import AND_MARKER, OR_MARKER, RESERVED_WORDS
from .exceptions import InvalidClauseError, UnsupportedConstructError

_NAME_RE = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True, slots=True, order=True)
class AtomicAction:
    """A named basic action, e.g. ``pay_a_fine``."""

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise InvalidClauseError("Action name must be non-empty")
        if not _NAME_RE.fullmatch(self.name):
            raise InvalidClauseError(
                f"Invalid action name {self.name!r}; "
                "use letters, digits and underscores only"
            )
        if AND_MARKER in self.name or OR_MARKER in self.name:
            raise InvalidClauseError(
                f"Action name {self.name!r} contains a reserved infix marker"
            )
        if self.name in RESERVED_WORDS:
            raise InvalidClauseError(f"Action name {self.name!r} is a reserved word")

    def __str__(self) -> str:
        return self.name


def is_valid_action_name(name: str) -> bool:
    """Return True if *name* can be used as an atomic action."""
    try:
        AtomicAction(name)
    except InvalidClauseError:
        return False
    return True


@dataclass(frozen=True, slots=True)
class Impossible:
    """The impossible action ``0``; it has no trace."""


@dataclass(frozen=True, slots=True)
class Skip:
    """The skip action ``1``, matching any step."""


@dataclass(frozen=True, slots=True)
class Atom:
    """A single atomic action."""

    action: AtomicAction

    @property
    def name(self) -> str:
        return self.action.name


@dataclass(frozen=True, slots=True)
class Concurrent:
    """``left & right``: both performed in the same steps."""

    left: ActionExpr
    right: ActionExpr


@dataclass(frozen=True, slots=True)
class Sequence:
    """``left . right``: left first, then right."""

    left: ActionExpr
    right: ActionExpr


@dataclass(frozen=True, slots=True)
class Choice:
    """``left + right``: either one."""

    left: ActionExpr
    right: ActionExpr


@dataclass(frozen=True, slots=True)
class Negation:
    """``! operand``, restricted to atoms and concurrent atoms."""

    operand: ActionExpr

    def __post_init__(self) -> None:
        if not _is_concurrent_atoms(self.operand):
            raise InvalidClauseError(
                "Negation applies to an atom or a concurrent set of atoms only"
            )


@dataclass(frozen=True, slots=True)
class Star:
    """``operand *``: repetition, only allowed in box guards."""

    operand: ActionExpr


type ActionExpr = (
    Impossible | Skip | Atom | Concurrent | Sequence | Choice | Negation | Star
)

IMPOSSIBLE = Impossible()
SKIP = Skip()
STAR_SKIP = Star(SKIP)


def atom(name: str) -> Atom:
    """Build an :class:`Atom` from a bare name."""
    return Atom(AtomicAction(name))


def _is_concurrent_atoms(expr: ActionExpr) -> bool:
    match expr:
        case Atom():
            return True
        case Concurrent(left, right):
            return _is_concurrent_atoms(left) and _is_concurrent_atoms(right)
        case _:
            return False


def children(expr: ActionExpr) -> tuple[ActionExpr, ...]:
    """Return the direct sub-expressions of *expr*."""
    match expr:
        case Concurrent(left, right) | Sequence(left, right) | Choice(left, right):
            return (left, right)
        case Negation(operand) | Star(operand):
            return (operand,)
        case _:
            return ()


def walk(expr: ActionExpr) -> Iterator[ActionExpr]:
    """Yield *expr* and every sub-expression, pre-order, left to right."""
    yield expr
    for child in children(expr):
        yield from walk(child)


def iter_atoms(expr: ActionExpr) -> Iterator[AtomicAction]:
    """Yield the atomic actions of *expr* in source order (with repeats)."""
    for node in walk(expr):
        if isinstance(node, Atom):
            yield node.action


def contains_star(expr: ActionExpr) -> bool:
    return any(isinstance(node, Star) for node in walk(expr))


def contains_negation(expr: ActionExpr) -> bool:
    return any(isinstance(node, Negation) for node in walk(expr))


def is_star_skip(expr: ActionExpr) -> bool:
    """Return True for the ``1*`` guard used by temporal clauses."""
    return expr == STAR_SKIP


def concurrent_of(actions: Iterable[AtomicAction]) -> ActionExpr:
    """Fold actions (sorted by name) into a left-nested concurrent expression."""
    ordered = sorted(set(actions))
    if not ordered:
        return SKIP
    expr: ActionExpr = Atom(ordered[0])
    for action in ordered[1:]:
        expr = Concurrent(expr, Atom(action))
    return expr


@dataclass(frozen=True, slots=True)
class ActionStep:
    """Atomic actions performed concurrently in one time step."""

    atoms: frozenset[AtomicAction]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise InvalidClauseError("An action step needs at least one action")

    @classmethod
    def of(cls, *names: str) -> ActionStep:
        return cls(frozenset(AtomicAction(name) for name in names))

    @property
    def names(self) -> tuple[str, ...]:
        """Action names, sorted."""
        return tuple(sorted(action.name for action in self.atoms))

    def as_action(self) -> ActionExpr:
        """The step as a concurrent action expression."""
        return concurrent_of(self.atoms)

    def __str__(self) -> str:
        return "{" + ", ".join(self.names) + "}"


@dataclass(frozen=True, slots=True)
class MutexRelation:
    """Unordered pairs of actions that cannot occur in the same step."""

    pairs: frozenset[frozenset[AtomicAction]] = frozenset()

    def __post_init__(self) -> None:
        for pair in self.pairs:
            if len(pair) != 2:
                raise InvalidClauseError(
                    "A mutually exclusive pair needs two distinct actions"
                )

    @classmethod
    def of(cls, *pairs: tuple[str, str]) -> MutexRelation:
        return cls(
            frozenset(
                frozenset({AtomicAction(left), AtomicAction(right)})
                for left, right in pairs
            )
        )

    @property
    def actions(self) -> frozenset[AtomicAction]:
        return frozenset(action for pair in self.pairs for action in pair)

    def excludes(self, atoms: frozenset[AtomicAction]) -> bool:
        """Return True if *atoms* contains a mutually exclusive pair."""
        return any(pair <= atoms for pair in self.pairs)

    def with_pair(self, left: AtomicAction, right: AtomicAction) -> MutexRelation:
        return MutexRelation(self.pairs | {frozenset({left, right})})


def mutually_exclusive(
    first: frozenset[AtomicAction],
    second: frozenset[AtomicAction],
    mutex: MutexRelation,
) -> bool:
    """Return True if some action of *first* excludes some action of *second*."""
    return any(
        frozenset({a, b}) in mutex.pairs for a in first for b in second if a != b
    )


@dataclass(frozen=True, slots=True)
class FirstStep:
    """One way to perform the first step of an action.

    ``atoms`` must all be performed now; ``wildcard`` means any step will do
    (the skip action). ``residual`` is what remains afterwards, or None once
    the action is fully consumed.
    """

    atoms: frozenset[AtomicAction]
    wildcard: bool
    residual: ActionExpr | None

    @property
    def done(self) -> bool:
        return self.residual is None

    def satisfied_by(self, step: ActionStep) -> bool:
        return step_satisfies(step, self.atoms, self.wildcard)


_SKIP_STEP = FirstStep(frozenset(), True, None)


def step_satisfies(
    step: ActionStep, required: frozenset[AtomicAction], wildcard: bool
) -> bool:
    """Return True if *step* performs the *required* actions.

    Performing extra actions in the same step still performs the required
    ones.
    """
    return wildcard or required <= step.atoms


def _merge(left: FirstStep, right: FirstStep) -> FirstStep:
    if left.residual is None:
        residual = right.residual
    elif right.residual is None:
        residual = left.residual
    else:
        residual = Concurrent(left.residual, right.residual)
    return FirstStep(
        left.atoms | right.atoms, left.wildcard and right.wildcard, residual
    )


def first_steps(alpha: ActionExpr) -> frozenset[FirstStep]:
    """Decompose *alpha* into its possible first steps and their residuals.

    Raises UnsupportedConstructError for star or negation.
    """
    match alpha:
        case Impossible():
            return frozenset()
        case Skip():
            return frozenset({_SKIP_STEP})
        case Atom(action):
            return frozenset({FirstStep(frozenset({action}), False, None)})
        case Choice(left, right):
            return first_steps(left) | first_steps(right)
        case Sequence(left, right):
            return frozenset(
                FirstStep(
                    step.atoms,
                    step.wildcard,
                    right if step.residual is None else Sequence(step.residual, right),
                )
                for step in first_steps(left)
            )
        case Concurrent(left, right):
            right_steps = first_steps(right)
            return frozenset(
                _merge(lstep, rstep)
                for lstep in first_steps(left)
                for rstep in right_steps
            )
        case Negation():
            raise UnsupportedConstructError(
                "Negated actions cannot be decomposed into steps"
            )
        case Star():
            raise UnsupportedConstructError(
                "Repeated (starred) actions cannot be decomposed into steps"
            )


type Trace = tuple[frozenset[AtomicAction], ...]


def traces(alpha: ActionExpr) -> frozenset[Trace]:
    """Return every complete execution trace of a star-free action.

    A skip step is represented by the empty set.
    """
    match alpha:
        case Impossible():
            return frozenset()
        case Skip():
            return frozenset({(frozenset(),)})
        case Atom(action):
            return frozenset({(frozenset({action}),)})
        case Choice(left, right):
            return traces(left) | traces(right)
        case Sequence(left, right):
            right_traces = traces(right)
            return frozenset(
                first + second for first in traces(left) for second in right_traces
            )
        case Concurrent(left, right):
            right_traces = traces(right)
            return frozenset(
                tuple(
                    a | b
                    for a, b in zip_longest(first, second, fillvalue=frozenset())
                )
                for first in traces(left)
                for second in right_traces
            )
        case Negation():
            raise UnsupportedConstructError("Negated actions have no trace set")
        case Star():
            raise UnsupportedConstructError("Repeated actions have no finite trace set")
