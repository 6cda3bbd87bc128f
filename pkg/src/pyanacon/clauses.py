"""CL clause abstract syntax and normalization.

A contract is a tree of deontic clauses (obligation, prohibition,
permission), dynamic boxes ``[beta]C``, conjunctions and exclusive choices,
with ``T`` (trivially satisfied) and ``_|_`` (violated) at the leaves.
Invariants are checked at construction, so every value of these types is
well-formed.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .actions import (
    ActionExpr,
    AtomicAction,
    contains_negation,
    contains_star,
    is_star_skip,
    iter_atoms,
)
from .exceptions import InvalidClauseError


def _check_modal_action(kind: str, action: ActionExpr) -> None:
    if contains_star(action):
        raise InvalidClauseError(f"Repetition (*) is not allowed inside {kind}")


@dataclass(frozen=True, slots=True)
class Top:
    """The trivially satisfied contract."""


@dataclass(frozen=True, slots=True)
class Bottom:
    """The violating contract."""


@dataclass(frozen=True, slots=True)
class Obligation:
    """``O_C(alpha)``: alpha must be performed, otherwise C applies."""

    action: ActionExpr
    reparation: Clause | None = None

    def __post_init__(self) -> None:
        _check_modal_action("an obligation", self.action)


@dataclass(frozen=True, slots=True)
class Prohibition:
    """``F_C(alpha)``: alpha must not be performed, otherwise C applies."""

    action: ActionExpr
    reparation: Clause | None = None

    def __post_init__(self) -> None:
        _check_modal_action("a prohibition", self.action)


@dataclass(frozen=True, slots=True)
class Permission:
    """``P(alpha)``."""

    action: ActionExpr

    def __post_init__(self) -> None:
        _check_modal_action("a permission", self.action)


@dataclass(frozen=True, slots=True)
class Box:
    """``[guard]body``: body applies once guard has been performed."""

    guard: ActionExpr
    body: Clause


@dataclass(frozen=True, slots=True)
class And:
    """Conjunction of two or more clauses."""

    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if len(self.clauses) < 2:
            raise InvalidClauseError("A conjunction needs at least two clauses")


class ChoiceKind(enum.StrEnum):
    """Clause family an exclusive choice ranges over."""

    OBLIGATION = "obligation"
    PERMISSION = "permission"


@dataclass(frozen=True, slots=True)
class XChoice:
    """Exclusive choice between two obligations or two permissions."""

    left: Clause
    right: Clause
    kind: ChoiceKind

    def __post_init__(self) -> None:
        if family(self.left) is not self.kind or family(self.right) is not self.kind:
            raise InvalidClauseError(
                f"Exclusive choice of kind {self.kind} needs two {self.kind} clauses"
            )


type Clause = (
    Top | Bottom | Obligation | Prohibition | Permission | Box | And | XChoice
)

TOP = Top()
BOTTOM = Bottom()

type DeonticClause = Obligation | Prohibition | Permission


def family(clause: Clause) -> ChoiceKind | None:
    """Return the exclusive-choice family of *clause*, if it has one."""
    match clause:
        case Obligation():
            return ChoiceKind.OBLIGATION
        case Permission():
            return ChoiceKind.PERMISSION
        case XChoice(kind=kind):
            return kind
        case _:
            return None


def xchoice(left: Clause, right: Clause) -> XChoice:
    """Build an exclusive choice, deriving its kind from the operands."""
    kind = family(left)
    if kind is None or family(right) is not kind:
        raise InvalidClauseError(
            "Exclusive choice combines two obligations or two permissions only"
        )
    return XChoice(left, right, kind)


def conjoin(clauses: Iterable[Clause]) -> Clause:
    """Conjoin *clauses*: T for none, the clause itself for one."""
    items = tuple(clauses)
    if not items:
        return TOP
    if len(items) == 1:
        return items[0]
    return And(items)


def normalize(clause: Clause) -> Clause:
    """Flatten conjunctions and simplify T and _|_ inside them.

    Recurses into reparations, box bodies and choice branches. Idempotent.
    """
    match clause:
        case Obligation(action, reparation) if reparation is not None:
            return Obligation(action, normalize(reparation))
        case Prohibition(action, reparation) if reparation is not None:
            return Prohibition(action, normalize(reparation))
        case Box(guard, body):
            return Box(guard, normalize(body))
        case XChoice(left, right, kind):
            return XChoice(normalize(left), normalize(right), kind)
        case And(items):
            flat: list[Clause] = []
            for item in items:
                flat.extend(conjuncts(normalize(item)))
            if any(isinstance(item, Bottom) for item in flat):
                return BOTTOM
            return conjoin(item for item in flat if not isinstance(item, Top))
        case _:
            return clause


def conjuncts(clause: Clause) -> tuple[Clause, ...]:
    """Split a top-level conjunction into its items."""
    if isinstance(clause, And):
        return clause.clauses
    return (clause,)


def walk(clause: Clause) -> Iterator[Clause]:
    """Yield *clause* and every sub-clause, pre-order, in source order."""
    yield clause
    match clause:
        case Obligation(reparation=reparation) | Prohibition(reparation=reparation):
            if reparation is not None:
                yield from walk(reparation)
        case Box(body=body):
            yield from walk(body)
        case And(items):
            for item in items:
                yield from walk(item)
        case XChoice(left, right):
            yield from walk(left)
            yield from walk(right)
        case _:
            pass


class ActionRole(enum.StrEnum):
    """Where an action expression sits in a clause."""

    GUARD = "guard"
    MODALITY = "modality"


def iter_actions(clause: Clause) -> Iterator[tuple[ActionExpr, ActionRole]]:
    """Yield every action expression in *clause* with its role."""
    for node in walk(clause):
        match node:
            case Obligation(action) | Prohibition(action) | Permission(action):
                yield action, ActionRole.MODALITY
            case Box(guard):
                yield guard, ActionRole.GUARD
            case _:
                pass


def clause_atoms(clause: Clause) -> tuple[AtomicAction, ...]:
    """Distinct atomic actions of *clause*, in order of first occurrence."""
    seen: dict[AtomicAction, None] = {}
    for action, _role in iter_actions(clause):
        for item in iter_atoms(action):
            seen.setdefault(item)
    return tuple(seen)


def unsupported_actions(clause: Clause) -> Iterator[tuple[ActionExpr, str]]:
    """Yield action expressions the conflict engine cannot analyze.

    Each item pairs the expression with a short reason.
    """
    for action, role in iter_actions(clause):
        if contains_negation(action):
            yield action, "negated action"
        elif role is ActionRole.GUARD and contains_star(action) and not is_star_skip(
            action
        ):
            yield action, "repetition other than [1*] in a condition"
