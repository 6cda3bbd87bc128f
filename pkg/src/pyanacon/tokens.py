"""Tokenizing and token-stream helpers shared by the concrete syntaxes."""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass

from .exceptions import ParseError

NAME = "NAME"
PUNCT = "PUNCT"
EOF = "EOF"


@dataclass(frozen=True, slots=True)
class Token:
    """A lexical token with its 1-based source position."""

    kind: str
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == EOF else repr(self.text)


def position(text: str, offset: int) -> tuple[int, int]:
    """Return the 1-based (line, column) of *offset* in *text*."""
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def scan(
    text: str,
    patterns: Sequence[tuple[str, str]],
    error_cls: type[ParseError],
    *,
    line_offset: int = 0,
) -> list[Token]:
    """Split *text* into tokens using ordered ``(kind, regex)`` pairs.

    Whitespace separates tokens and is dropped. The first pattern that
    matches at a position wins. Raises *error_cls* on a character no
    pattern accepts. *line_offset* shifts reported line numbers, for text
    cut out of a larger file.
    """
    master = re.compile(
        "|".join(f"(?P<{kind}_{i}>{regex})" for i, (kind, regex) in enumerate(patterns))
    )
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = master.match(text, pos)
        if match is None or match.lastgroup is None:
            line, column = position(text, pos)
            raise error_cls(
                f"Unexpected character {text[pos]!r}",
                line=line + line_offset,
                column=column,
                text=text[pos],
            )
        kind = match.lastgroup.rsplit("_", 1)[0]
        line, column = position(text, pos)
        tokens.append(Token(kind, match.group(), line + line_offset, column))
        pos = match.end()
    line, column = position(text, len(text))
    tokens.append(Token(EOF, "", line + line_offset, column))
    return tokens


class TokenStream:
    """Cursor over a token list for recursive-descent parsers."""

    def __init__(self, tokens: list[Token], error_cls: type[ParseError]) -> None:
        self._tokens = tokens
        self._pos = 0
        self._error_cls = error_cls

    @property
    def current(self) -> Token:
        return self._tokens[self._pos]

    @property
    def index(self) -> int:
        return self._pos

    def texts_since(self, start: int) -> tuple[str, ...]:
        """Token texts consumed since position *start*."""
        return tuple(token.text for token in self._tokens[start : self._pos])

    def peek(self, ahead: int = 0) -> Token:
        index = min(self._pos + ahead, len(self._tokens) - 1)
        return self._tokens[index]

    def advance(self) -> Token:
        token = self._tokens[self._pos]
        if token.kind != EOF:
            self._pos += 1
        return token

    def at(self, *texts: str, ahead: int = 0) -> bool:
        """Return True if the token *ahead* positions on is one of *texts*."""
        token = self.peek(ahead)
        return token.kind != EOF and token.text in texts

    def at_words(self, words: Sequence[str]) -> bool:
        """Return True if the upcoming tokens spell out *words* in order."""
        return all(self.at(word, ahead=i) for i, word in enumerate(words))

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"Expected {text!r}, found {self.current.describe()}")
        return self.advance()

    def expect_words(self, words: Sequence[str]) -> None:
        for word in words:
            self.expect(word)

    def expect_end(self) -> None:
        if self.current.kind != EOF:
            raise self.error(
                f"Unexpected {self.current.describe()} after the end of the clause"
            )

    def error(self, message: str, token: Token | None = None) -> ParseError:
        token = token or self.current
        return self._error_cls(
            message, line=token.line, column=token.column, text=token.text or None
        )
