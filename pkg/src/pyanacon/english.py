"""Restricted English concrete syntax.

Every clause is one parenthesized template::

    ( It is mandatory to ( ACT ) )
    ( It is mandatory to ( ACT ) if not ( ACT ) then CLAUSE )
    ( It is prohibited to ( ACT ) )
    ( It is prohibited to ( ACT ) if ( ACT ) then CLAUSE )
    ( It is permitted to ( ACT ) )
    ( If ( ACT ) then CLAUSE )
    ( ( Always | After | When | Before ) ( If ( ACT ) then CLAUSE ) )
    ( CLAUSE and CLAUSE [and CLAUSE ...] )
    ( CLAUSE xor CLAUSE )
    ( trivially satisfied )
    ( trivially violated )

Actions combine with ``and``, ``followed-by``, ``or``, ``not`` and
``repeatedly``. A single name containing ``_and_`` or ``_or_`` is split at
those markers, so ``open_the_desk_and_request_the_manifest`` reads as two
concurrent actions.
"""

from __future__ import annotations

import difflib
import logging
import re

from .actions import (
    STAR_SKIP,
    ActionExpr,
    Atom,
    AtomicAction,
    Choice,
    Concurrent,
    contains_star,
    is_star_skip,
)
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
    BOTTOM_PHRASE,
    DEFAULT_TEMPORAL_WORD,
    OBLIGATION_PHRASE,
    PERMISSION_PHRASE,
    PROHIBITION_PHRASE,
    TEMPORAL_WORDS,
    TOP_PHRASE,
)
from .exceptions import InvalidClauseError, ParseError, RestrictedEnglishError
from .notation import ActionNotation, ActionParser, render_action
from .tokens import EOF, NAME, PUNCT, Token, TokenStream, scan

_LOGGER = logging.getLogger(__name__)

ENGLISH_NOTATION = ActionNotation(
    concurrent="and",
    sequence="followed-by",
    choice="or",
    negation="not",
    star="repeatedly",
)

_PATTERNS: tuple[tuple[str, str], ...] = (
    (PUNCT, r"[()]"),
    (NAME, r"[A-Za-z0-9_]+(?:-[A-Za-z0-9_]+)*"),
)

_MARKER_RE = re.compile(r"_(and|or)_")

_OBLIGATION = tuple(OBLIGATION_PHRASE.split())
_PROHIBITION = tuple(PROHIBITION_PHRASE.split())
_PERMISSION = tuple(PERMISSION_PHRASE.split())
_TOP = tuple(TOP_PHRASE.split())
_BOTTOM = tuple(BOTTOM_PHRASE.split())

# Template heads, each mapped to the full template shown in diagnostics.
_TEMPLATES: dict[str, str] = {
    OBLIGATION_PHRASE: f"( {OBLIGATION_PHRASE} ( ACT ) [if not ( ACT ) then CLAUSE] )",
    PROHIBITION_PHRASE: f"( {PROHIBITION_PHRASE} ( ACT ) [if ( ACT ) then CLAUSE] )",
    PERMISSION_PHRASE: f"( {PERMISSION_PHRASE} ( ACT ) )",
    "If": "( If ( ACT ) then CLAUSE )",
    TOP_PHRASE: f"( {TOP_PHRASE} )",
    BOTTOM_PHRASE: f"( {BOTTOM_PHRASE} )",
}


def split_marked_name(name: str) -> ActionExpr:
    """Turn a name carrying ``_and_`` / ``_or_`` markers into a compound.

    Markers have equal precedence and associate to the left.
    """
    parts = _MARKER_RE.split(name)
    expr: ActionExpr = Atom(AtomicAction(parts[0]))
    for operator, part in zip(parts[1::2], parts[2::2], strict=True):
        right = Atom(AtomicAction(part))
        expr = Concurrent(expr, right) if operator == "and" else Choice(expr, right)
    return expr


def _make_name(token: Token) -> ActionExpr:
    return split_marked_name(token.text)


def tokenize_re(text: str, *, line_offset: int = 0) -> list[Token]:
    """Split restricted English text into tokens."""
    return scan(text, _PATTERNS, RestrictedEnglishError, line_offset=line_offset)


class _EnglishParser:
    def __init__(self, tokens: list[Token]) -> None:
        self._stream = TokenStream(tokens, RestrictedEnglishError)
        self._actions = ActionParser(self._stream, ENGLISH_NOTATION, _make_name)

    def parse(self) -> Clause:
        clause = self._parse_clause()
        self._stream.expect_end()
        return clause

    def _parse_clause(self) -> Clause:
        stream = self._stream
        stream.expect("(")
        clause: Clause
        if stream.at_words(_OBLIGATION):
            clause = self._parse_obligation()
        elif stream.at_words(_PROHIBITION):
            clause = self._parse_prohibition()
        elif stream.at_words(_PERMISSION):
            stream.expect_words(_PERMISSION)
            clause = Permission(self._parse_modal_action()[0])
        elif stream.at("If"):
            clause = self._parse_conditional()
        elif stream.at_words(_TOP):
            stream.expect_words(_TOP)
            clause = TOP
        elif stream.at_words(_BOTTOM):
            stream.expect_words(_BOTTOM)
            clause = BOTTOM
        elif stream.at("(") and stream.at(")", ahead=2):
            clause = self._parse_temporal()
        elif stream.at("("):
            clause = self._parse_compound()
        else:
            raise self._template_mismatch()
        stream.expect(")")
        return clause

    def _parse_modal_action(self) -> tuple[ActionExpr, tuple[str, ...]]:
        """Parse ``( ACT )`` and return the action with its token texts."""
        stream = self._stream
        stream.expect("(")
        token = stream.current
        start = stream.index
        action = self._actions.parse()
        texts = stream.texts_since(start)
        stream.expect(")")
        if contains_star(action):
            raise stream.error(
                "Repetition is not allowed inside a deontic modality", token
            )
        return action, texts

    def _expect_repeated(self, texts: tuple[str, ...]) -> None:
        stream = self._stream
        token = stream.peek(1)
        _action, repeated = self._parse_modal_action()
        if repeated != texts:
            raise stream.error(
                f"Reparation condition '{' '.join(repeated)}' does not repeat "
                f"the action '{' '.join(texts)}'",
                token,
            )
        stream.expect("then")

    def _parse_obligation(self) -> Clause:
        stream = self._stream
        stream.expect_words(_OBLIGATION)
        action, texts = self._parse_modal_action()
        if not stream.at("if"):
            return Obligation(action)
        if not stream.at("not", ahead=1):
            raise stream.error(
                "An obligation's reparation is introduced by 'if not ( ACT ) then'"
            )
        stream.expect_words(("if", "not"))
        self._expect_repeated(texts)
        return Obligation(action, self._parse_clause())

    def _parse_prohibition(self) -> Clause:
        stream = self._stream
        stream.expect_words(_PROHIBITION)
        action, texts = self._parse_modal_action()
        if not stream.at("if"):
            return Prohibition(action)
        if stream.at("not", ahead=1):
            raise stream.error(
                "A prohibition's reparation is introduced by 'if ( ACT ) then'"
            )
        stream.expect("if")
        self._expect_repeated(texts)
        return Prohibition(action, self._parse_clause())

    def _parse_conditional(self) -> Clause:
        stream = self._stream
        stream.expect("If")
        stream.expect("(")
        guard = self._actions.parse()
        stream.expect(")")
        stream.expect("then")
        return Box(guard, self._parse_clause())

    def _parse_temporal(self) -> Clause:
        stream = self._stream
        stream.expect("(")
        word = stream.current
        if word.text not in TEMPORAL_WORDS:
            raise stream.error(
                f"Unknown temporal keyword {word.describe()}; expected one of "
                + ", ".join(TEMPORAL_WORDS)
            )
        stream.advance()
        stream.expect(")")
        stream.expect("(")
        if not stream.at("If"):
            raise stream.error(
                "A temporal keyword is followed by '( If ( ACT ) then CLAUSE )', "
                f"found {stream.current.describe()}"
            )
        conditional = self._parse_conditional()
        stream.expect(")")
        return Box(STAR_SKIP, conditional)

    def _parse_compound(self) -> Clause:
        stream = self._stream
        first = self._parse_clause()
        if stream.at("and"):
            items = [first]
            while stream.accept("and"):
                items.append(self._parse_clause())
            return And(tuple(items))
        if stream.at("xor"):
            token = stream.advance()
            second = self._parse_clause()
            try:
                return xchoice(first, second)
            except InvalidClauseError as err:
                raise stream.error(str(err), token) from err
        # a lone parenthesized clause is grouping
        return first

    def _template_mismatch(self) -> ParseError:
        stream = self._stream
        words: list[str] = []
        for ahead in range(4):
            token = stream.peek(ahead)
            if token.kind == EOF or token.text in ("(", ")"):
                break
            words.append(token.text)
        if not words:
            return stream.error(
                f"Expected a clause template, found {stream.current.describe()}"
            )
        found = " ".join(words)
        heads = list(_TEMPLATES)
        nearest = difflib.get_close_matches(found, heads, n=1, cutoff=0.0)
        template = _TEMPLATES[nearest[0] if nearest else heads[0]]
        return stream.error(
            f"No clause template starts with {found!r}; nearest template: {template}"
        )


def parse_re(text: str, *, line_offset: int = 0) -> Clause:
    """Parse restricted English into a clause.

    Raises RestrictedEnglishError with the position of the first problem.
    """
    tokens = tokenize_re(text, line_offset=line_offset)
    clause = _EnglishParser(tokens).parse()
    _LOGGER.debug("Parsed %d restricted English tokens", len(tokens) - 1)
    return clause


def linearize_re(clause: Clause) -> str:
    """Render *clause* in restricted English."""
    return " ".join(_clause_tokens(clause))


def linearize_action(action: ActionExpr) -> str:
    """Render an action expression in restricted English."""
    return " ".join(render_action(action, ENGLISH_NOTATION))


def _action_tokens(action: ActionExpr) -> list[str]:
    return ["(", *render_action(action, ENGLISH_NOTATION), ")"]


def _clause_tokens(clause: Clause) -> list[str]:
    match clause:
        case Top():
            return ["(", *_TOP, ")"]
        case Bottom():
            return ["(", *_BOTTOM, ")"]
        case Obligation(action, reparation):
            tokens = [*_OBLIGATION, *_action_tokens(action)]
            if reparation is not None:
                tokens += ["if", "not", *_action_tokens(action), "then"]
                tokens += _clause_tokens(reparation)
            return ["(", *tokens, ")"]
        case Prohibition(action, reparation):
            tokens = [*_PROHIBITION, *_action_tokens(action)]
            if reparation is not None:
                tokens += ["if", *_action_tokens(action), "then"]
                tokens += _clause_tokens(reparation)
            return ["(", *tokens, ")"]
        case Permission(action):
            return ["(", *_PERMISSION, *_action_tokens(action), ")"]
        case Box(guard, Box(guard=inner_guard) as inner) if is_star_skip(
            guard
        ) and not is_star_skip(inner_guard):
            return ["(", "(", DEFAULT_TEMPORAL_WORD, ")", *_clause_tokens(inner), ")"]
        case Box(guard, body):
            return [
                "(",
                "If",
                *_action_tokens(guard),
                "then",
                *_clause_tokens(body),
                ")",
            ]
        case And(items):
            tokens = ["("]
            for index, item in enumerate(items):
                if index:
                    tokens.append("and")
                tokens += _clause_tokens(item)
            return [*tokens, ")"]
        case XChoice(left, right):
            return ["(", *_clause_tokens(left), "xor", *_clause_tokens(right), ")"]
