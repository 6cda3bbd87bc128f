"""Symbolic CL concrete syntax.

Clauses print fully parenthesized with single spaces between tokens::

    ( [ 1 * ] ( [ ( close_the_check_in_desk ) ] ( F ( issue_the_boarding_pass
    + open_the_check_in_desk ) _ ( O ( pay_a_fine ) ) ) ) )

``_`` introduces a reparation, ``^`` (or ``/\\``) conjoins clauses, ``(+)``
is exclusive choice, ``T`` and ``_|_`` are the trivially satisfied and the
violating contract.
"""

from __future__ import annotations

import logging

from .actions import ActionExpr, Atom, AtomicAction, Star, contains_star
from .clauses import (
    BOTTOM,
    TOP,
    And,
    Bottom,
    Box,
    Clause,
    Obligation,
    Permission,
    Prohibition,
    Top,
    XChoice,
    xchoice,
)
from .const import (
    AND_TOKEN,
    AND_TOKEN_ALT,
    BOTTOM_TOKEN,
    REPARATION_TOKEN,
    TOP_TOKEN,
    XCHOICE_TOKEN,
)
from .exceptions import CLSyntaxError, InvalidClauseError
from .notation import ActionNotation, ActionParser, render_action
from .tokens import NAME, PUNCT, Token, TokenStream, scan

_LOGGER = logging.getLogger(__name__)

SYMBOLIC_NOTATION = ActionNotation(
    concurrent="&", sequence=".", choice="+", negation="!", star="*"
)

_PATTERNS: tuple[tuple[str, str], ...] = (
    (PUNCT, r"\(\+\)"),
    (PUNCT, r"_\|_"),
    (PUNCT, r"/\\"),
    (NAME, r"[A-Za-z0-9_]+"),
    (PUNCT, r"[()\[\]^*!&.+]"),
)

_CLAUSE_START = ("(", "O", "F", "P", "[", TOP_TOKEN, BOTTOM_TOKEN)


def tokenize_cl(text: str, *, line_offset: int = 0) -> list[Token]:
    """Split symbolic CL text into tokens."""
    tokens = scan(text, _PATTERNS, CLSyntaxError, line_offset=line_offset)
    # A lone underscore is the reparation marker, not a name.
    return [
        Token(PUNCT, tok.text, tok.line, tok.column)
        if tok.kind == NAME and tok.text == REPARATION_TOKEN
        else tok
        for tok in tokens
    ]


class _ClauseParser:
    def __init__(self, tokens: list[Token]) -> None:
        self._stream = TokenStream(tokens, CLSyntaxError)
        self._actions = ActionParser(self._stream, SYMBOLIC_NOTATION, _make_atom)

    def parse(self) -> Clause:
        clause = self._parse_choice()
        self._stream.expect_end()
        return clause

    def _parse_choice(self) -> Clause:
        left = self._parse_conjunction()
        while self._stream.at(XCHOICE_TOKEN):
            token = self._stream.advance()
            right = self._parse_conjunction()
            try:
                left = xchoice(left, right)
            except InvalidClauseError as err:
                raise self._stream.error(str(err), token) from err
        return left

    def _parse_conjunction(self) -> Clause:
        items = [self._parse_unary()]
        while self._stream.at(AND_TOKEN, AND_TOKEN_ALT):
            self._stream.advance()
            items.append(self._parse_unary())
        if len(items) == 1:
            return items[0]
        return And(tuple(items))

    def _parse_unary(self) -> Clause:
        stream = self._stream
        token = stream.current
        if stream.accept("("):
            clause = self._parse_choice()
            stream.expect(")")
            return clause
        if stream.accept(TOP_TOKEN):
            return TOP
        if stream.accept(BOTTOM_TOKEN):
            return BOTTOM
        if stream.accept("["):
            guard = self._actions.parse()
            stream.expect("]")
            return Box(guard, self._parse_unary())
        if stream.at("O", "F", "P"):
            return self._parse_deontic(stream.advance())
        expected = ", ".join(repr(text) for text in _CLAUSE_START)
        raise stream.error(
            f"Expected a clause (one of {expected}), found {token.describe()}"
        )

    def _parse_deontic(self, keyword: Token) -> Clause:
        stream = self._stream
        stream.expect("(")
        action_token = stream.current
        action = self._actions.parse()
        stream.expect(")")
        if contains_star(action):
            raise stream.error(
                "Repetition (*) is not allowed inside a deontic modality",
                action_token,
            )
        if keyword.text == "P":
            return Permission(action)
        reparation = None
        if stream.accept(REPARATION_TOKEN):
            reparation = self._parse_unary()
        if keyword.text == "O":
            return Obligation(action, reparation)
        return Prohibition(action, reparation)


def _make_atom(token: Token) -> ActionExpr:
    return Atom(AtomicAction(token.text))


def parse_cl(text: str, *, line_offset: int = 0) -> Clause:
    """Parse symbolic CL text into a clause.

    Raises CLSyntaxError with the position of the first problem.
    """
    tokens = tokenize_cl(text, line_offset=line_offset)
    clause = _ClauseParser(tokens).parse()
    _LOGGER.debug("Parsed %d CL tokens", len(tokens) - 1)
    return clause


def print_cl(clause: Clause) -> str:
    """Render *clause* in fully parenthesized symbolic CL."""
    return " ".join(_clause_tokens(clause))


def print_action(action: ActionExpr) -> str:
    """Render an action expression in symbolic CL."""
    return " ".join(render_action(action, SYMBOLIC_NOTATION))


def _modal_tokens(
    keyword: str, action: ActionExpr, reparation: Clause | None
) -> list[str]:
    tokens = [keyword, "(", *render_action(action, SYMBOLIC_NOTATION), ")"]
    if reparation is not None:
        tokens += [REPARATION_TOKEN, *_clause_tokens(reparation)]
    return ["(", *tokens, ")"]


def _clause_tokens(clause: Clause) -> list[str]:
    match clause:
        case Top():
            return [TOP_TOKEN]
        case Bottom():
            return [BOTTOM_TOKEN]
        case Obligation(action, reparation):
            return _modal_tokens("O", action, reparation)
        case Prohibition(action, reparation):
            return _modal_tokens("F", action, reparation)
        case Permission(action):
            return _modal_tokens("P", action, None)
        case Box(guard, body):
            guard_tokens = render_action(guard, SYMBOLIC_NOTATION)
            if not isinstance(guard, Star):
                guard_tokens = ["(", *guard_tokens, ")"]
            return ["(", "[", *guard_tokens, "]", *_clause_tokens(body), ")"]
        case And(items):
            tokens = ["("]
            for index, item in enumerate(items):
                if index:
                    tokens.append(AND_TOKEN)
                tokens += _clause_tokens(item)
            return [*tokens, ")"]
        case XChoice(left, right):
            return [
                "(",
                *_clause_tokens(left),
                XCHOICE_TOKEN,
                *_clause_tokens(right),
                ")",
            ]
