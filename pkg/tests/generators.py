"""Seeded random clauses for property tests."""

from __future__ import annotations

import random

from pyanacon.actions import (
    IMPOSSIBLE,
    SKIP,
    STAR_SKIP,
    ActionExpr,
    Choice,
    Concurrent,
    Negation,
    Sequence,
    atom,
)
from pyanacon.clauses import (
    BOTTOM,
    TOP,
    And,
    Box,
    Clause,
    Obligation,
    Permission,
    Prohibition,
    XChoice,
    xchoice,
)

NAMES = ("a", "b", "c", "pay_a_fine", "open_the_check_in_desk")


def random_action(
    rng: random.Random,
    depth: int,
    names: tuple[str, ...] = NAMES,
    *,
    negation: bool = True,
    constants: bool = True,
) -> ActionExpr:
    """A star-free action expression of at most *depth* operators."""
    if depth <= 0 or rng.random() < 0.3:
        if constants and rng.random() < 0.1:
            return rng.choice((SKIP, IMPOSSIBLE))
        return atom(rng.choice(names))
    pick = rng.randrange(4 if negation else 3)
    if pick == 3:
        operand: ActionExpr = atom(rng.choice(names))
        if rng.random() < 0.5:
            operand = Concurrent(operand, atom(rng.choice(names)))
        return Negation(operand)
    build = (Concurrent, Sequence, Choice)[pick]
    return build(
        random_action(rng, depth - 1, names, negation=negation, constants=constants),
        random_action(rng, depth - 1, names, negation=negation, constants=constants),
    )


def _family_clause(
    rng: random.Random,
    depth: int,
    names: tuple[str, ...],
    *,
    obligation: bool,
    negation: bool = True,
    constants: bool = True,
) -> Clause:
    kw = {"negation": negation, "constants": constants}
    if depth > 0 and rng.random() < 0.3:
        return xchoice(
            _family_clause(rng, depth - 1, names, obligation=obligation, **kw),
            _family_clause(rng, depth - 1, names, obligation=obligation, **kw),
        )
    action = random_action(rng, 2, names, **kw)
    return Obligation(action) if obligation else Permission(action)


def random_clause(
    rng: random.Random,
    depth: int = 6,
    names: tuple[str, ...] = NAMES,
    *,
    star: bool = True,
    negation: bool = True,
    constants: bool = True,
) -> Clause:
    """A well-formed clause; repetition only appears as a ``[1*]`` guard."""
    kw = {"negation": negation, "constants": constants}

    def action() -> ActionExpr:
        return random_action(rng, 2, names, **kw)

    def sub() -> Clause:
        return random_clause(rng, depth - 1, names, star=star, **kw)

    if depth <= 0 or rng.random() < 0.2:
        leaf = rng.randrange(5 if constants else 3)
        match leaf:
            case 0:
                return Obligation(action())
            case 1:
                return Prohibition(action())
            case 2:
                return Permission(action())
            case 3:
                return TOP
            case _:
                return BOTTOM
    match rng.randrange(7):
        case 0:
            return Obligation(action(), sub())
        case 1:
            return Prohibition(action(), sub())
        case 2:
            return Permission(action())
        case 3:
            return Box(action(), sub())
        case 4 if star:
            return Box(STAR_SKIP, sub())
        case 5:
            return And(tuple(sub() for _ in range(rng.randint(2, 3))))
        case 6:
            obligation = rng.random() < 0.5
            result = _family_clause(
                rng, depth - 1, names, obligation=obligation, **kw
            )
            if isinstance(result, XChoice):
                return result
            return xchoice(
                result, _family_clause(rng, 0, names, obligation=obligation, **kw)
            )
        case _:
            return Box(action(), sub())


def random_contract(
    rng: random.Random, names: tuple[str, ...] = ("a", "b", "c")
) -> list[Clause]:
    """One to three small analyzable clauses over at most three actions."""
    return [
        random_clause(rng, 3, names, star=False, negation=False, constants=False)
        for _ in range(rng.randint(1, 3))
    ]
