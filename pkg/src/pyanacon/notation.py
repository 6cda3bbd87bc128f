"""Action-expression grammar shared by the symbolic and English syntaxes.

Both concrete syntaxes use the same operator precedence, tightest first:
repetition (postfix), negation (prefix), concurrency, sequence, choice.
Binary operators associate to the left. Only the operator spellings differ,
and they are held in an :class:`ActionNotation`.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .actions import (
    IMPOSSIBLE,
    SKIP,
    ActionExpr,
    Atom,
    Choice,
    Concurrent,
    Impossible,
    Negation,
    Sequence,
    Skip,
    Star,
)
from .exceptions import InvalidClauseError
from .tokens import NAME, Token, TokenStream

_CHOICE = 1
_SEQUENCE = 2
_CONCURRENT = 3
_NEGATION = 4
_STAR = 5
_PRIMARY = 6


@dataclass(frozen=True, slots=True)
class ActionNotation:
    """Spelling of the action operators in one concrete syntax."""

    concurrent: str
    sequence: str
    choice: str
    negation: str
    star: str
    skip: str = "1"
    impossible: str = "0"


def _precedence(expr: ActionExpr) -> int:
    match expr:
        case Choice():
            return _CHOICE
        case Sequence():
            return _SEQUENCE
        case Concurrent():
            return _CONCURRENT
        case Negation():
            return _NEGATION
        case Star():
            return _STAR
        case _:
            return _PRIMARY


def render_action(expr: ActionExpr, notation: ActionNotation) -> list[str]:
    """Render *expr* as tokens, with only the parentheses precedence needs."""
    return _render(expr, notation, 0)


def _render(expr: ActionExpr, notation: ActionNotation, required: int) -> list[str]:
    match expr:
        case Impossible():
            tokens = [notation.impossible]
        case Skip():
            tokens = [notation.skip]
        case Atom(action):
            tokens = [action.name]
        case Concurrent(left, right):
            tokens = _binary(left, right, notation.concurrent, _CONCURRENT, notation)
        case Sequence(left, right):
            tokens = _binary(left, right, notation.sequence, _SEQUENCE, notation)
        case Choice(left, right):
            tokens = _binary(left, right, notation.choice, _CHOICE, notation)
        case Negation(operand):
            tokens = [notation.negation, *_render(operand, notation, _NEGATION)]
        case Star(operand):
            tokens = [*_render(operand, notation, _STAR), notation.star]
    if _precedence(expr) < required:
        return ["(", *tokens, ")"]
    return tokens


def _binary(
    left: ActionExpr,
    right: ActionExpr,
    operator: str,
    precedence: int,
    notation: ActionNotation,
) -> list[str]:
    return [
        *_render(left, notation, precedence),
        operator,
        *_render(right, notation, precedence + 1),
    ]


class ActionParser:
    """Recursive-descent parser for action expressions.

    *make_name* turns a name token into an expression; the English syntax
    uses it to split names on their infix markers.
    """

    def __init__(
        self,
        stream: TokenStream,
        notation: ActionNotation,
        make_name: Callable[[Token], ActionExpr],
    ) -> None:
        self._stream = stream
        self._notation = notation
        self._make_name = make_name

    def parse(self) -> ActionExpr:
        return self._parse_binary(_CHOICE)

    def _parse_binary(self, precedence: int) -> ActionExpr:
        if precedence > _CONCURRENT:
            return self._parse_prefix()
        operator, build = self._operator(precedence)
        left = self._parse_binary(precedence + 1)
        while self._stream.accept(operator):
            right = self._parse_binary(precedence + 1)
            left = build(left, right)
        return left

    def _operator(
        self, precedence: int
    ) -> tuple[str, Callable[[ActionExpr, ActionExpr], ActionExpr]]:
        if precedence == _CHOICE:
            return self._notation.choice, Choice
        if precedence == _SEQUENCE:
            return self._notation.sequence, Sequence
        return self._notation.concurrent, Concurrent

    def _parse_prefix(self) -> ActionExpr:
        token = self._stream.current
        if self._stream.accept(self._notation.negation):
            operand = self._parse_prefix()
            try:
                return Negation(operand)
            except InvalidClauseError as err:
                raise self._stream.error(str(err), token) from err
        return self._parse_postfix()

    def _parse_postfix(self) -> ActionExpr:
        expr = self._parse_primary()
        while self._stream.accept(self._notation.star):
            expr = Star(expr)
        return expr

    def _parse_primary(self) -> ActionExpr:
        stream = self._stream
        if stream.accept("("):
            expr = self.parse()
            stream.expect(")")
            return expr
        if stream.accept(self._notation.skip):
            return SKIP
        if stream.accept(self._notation.impossible):
            return IMPOSSIBLE
        token = stream.current
        if token.kind != NAME:
            raise stream.error(f"Expected an action, found {token.describe()}")
        stream.advance()
        try:
            return self._make_name(token)
        except InvalidClauseError as err:
            raise stream.error(str(err), token) from err
