"""Contract.txt reading, validation and writing.

A contract file has three sections, each introduced by a header alone on
its line, in this order::

    DICTIONARY
    pay_a_fine : The passenger pays a fine
    ...
    CONTRACT
    ( It is mandatory to ( pay_a_fine ) )

    ( It is prohibited to ( open_the_check_in_desk ) )
    CONTRADICTION
    open_the_check_in_desk # close_the_check_in_desk

Contract clauses are restricted English, one per blank-line separated
block. Lines starting with ``%`` are comments.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Iterator
from dataclasses import dataclass, field

from .actions import AtomicAction, MutexRelation, is_valid_action_name
from .clauses import Clause, clause_atoms, conjoin, normalize, unsupported_actions
from .const import (
    COMMENT_PREFIX,
    CONTRADICTION_SEPARATOR,
    DICTIONARY_SEPARATOR,
    SECTION_CONTRACT,
    SECTION_CONTRADICTION,
    SECTION_DICTIONARY,
    SECTION_HEADERS,
)
from .english import linearize_re, parse_re
from .exceptions import ContractFileError, RestrictedEnglishError
from .symbolic import print_action

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DictionaryEntry:
    """One ``name : description`` line of the dictionary."""

    name: str
    description: str
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class ContradictionEntry:
    """One ``name # name`` line: the two actions cannot share a step."""

    left: str
    right: str
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """Inclusive 1-based line range of a clause in the contract file."""

    start: int
    end: int

    def __str__(self) -> str:
        if self.start == self.end:
            return f"line {self.start}"
        return f"lines {self.start}-{self.end}"


@dataclass(frozen=True, slots=True)
class ContractDocument:
    """A parsed contract file.

    Names are kept as written so that :func:`validate` can report every
    problem with them. ``source_spans[i]`` is the span of ``clauses[i]``.
    """

    dictionary: tuple[DictionaryEntry, ...] = ()
    clauses: tuple[Clause, ...] = ()
    contradictions: tuple[ContradictionEntry, ...] = ()
    source_spans: tuple[SourceSpan, ...] = field(default=(), compare=False)

    @property
    def actions(self) -> tuple[AtomicAction, ...]:
        """Declared actions with valid names, in dictionary order."""
        seen: dict[AtomicAction, None] = {}
        for entry in self.dictionary:
            if is_valid_action_name(entry.name):
                seen.setdefault(AtomicAction(entry.name))
        return tuple(seen)

    @property
    def mutex(self) -> MutexRelation:
        """Contradiction pairs with two distinct, valid names."""
        return MutexRelation(
            frozenset(
                frozenset({AtomicAction(entry.left), AtomicAction(entry.right)})
                for entry in self.contradictions
                if entry.left != entry.right
                and is_valid_action_name(entry.left)
                and is_valid_action_name(entry.right)
            )
        )

    @property
    def contract(self) -> Clause:
        """All clauses conjoined and normalized."""
        return normalize(conjoin(self.clauses))

    def span_of(self, index: int) -> SourceSpan | None:
        if 0 <= index < len(self.source_spans):
            return self.source_spans[index]
        return None


class DiagnosticKind(enum.StrEnum):
    """Problems reported by :func:`validate`."""

    UNDECLARED_ACTION_IN_CONTRACT = "UndeclaredActionInContract"
    UNDECLARED_ACTION_IN_CONTRADICTION = "UndeclaredActionInContradiction"
    DUPLICATE_DICTIONARY_ENTRY = "DuplicateDictionaryEntry"
    EMPTY_STRING = "EmptyString"
    INVALID_ACTION_NAME = "InvalidActionName"
    REFLEXIVE_CONTRADICTION = "ReflexiveContradiction"
    UNSUPPORTED_CONSTRUCT = "UnsupportedConstruct"


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """A single validation finding."""

    kind: DiagnosticKind
    action: str
    line: int | None
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.kind}: {self.message}"


@dataclass(slots=True)
class _Line:
    number: int
    text: str

    @property
    def stripped(self) -> str:
        return self.text.strip()

    @property
    def is_comment(self) -> bool:
        return self.stripped.startswith(COMMENT_PREFIX)

    @property
    def is_blank(self) -> bool:
        return not self.stripped


def _split_sections(text: str) -> dict[str, list[_Line]]:
    """Split the file at its headers, checking presence and order."""
    sections: dict[str, list[_Line]] = {}
    current: list[_Line] | None = None
    expected = iter(SECTION_HEADERS)
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _Line(number, raw)
        if line.stripped in SECTION_HEADERS:
            wanted = next(expected, None)
            if line.stripped != wanted:
                raise ContractFileError(
                    f"Section header {line.stripped!r} is out of order or "
                    f"repeated; expected {wanted!r}"
                    if wanted
                    else f"Section header {line.stripped!r} is repeated",
                    line=number,
                    column=1,
                    text=line.stripped,
                )
            current = sections.setdefault(line.stripped, [])
            continue
        if current is None:
            if line.is_blank or line.is_comment:
                continue
            raise ContractFileError(
                f"Expected the {SECTION_DICTIONARY!r} header before any content",
                line=number,
                column=1,
                text=line.stripped,
            )
        current.append(line)
    for header in SECTION_HEADERS:
        if header not in sections:
            raise ContractFileError(f"Missing section header {header!r}")
    return sections


def _content(lines: list[_Line]) -> Iterator[_Line]:
    return (line for line in lines if not line.is_blank and not line.is_comment)


def _parse_dictionary(lines: list[_Line]) -> tuple[DictionaryEntry, ...]:
    entries: list[DictionaryEntry] = []
    for line in _content(lines):
        name, sep, description = line.text.partition(DICTIONARY_SEPARATOR)
        if not sep:
            raise ContractFileError(
                f"Dictionary line must be 'name {DICTIONARY_SEPARATOR} description'",
                line=line.number,
                column=1,
                text=line.stripped,
            )
        entries.append(DictionaryEntry(name.strip(), description.strip(), line.number))
    return tuple(entries)


def _parse_contradictions(lines: list[_Line]) -> tuple[ContradictionEntry, ...]:
    entries: list[ContradictionEntry] = []
    for line in _content(lines):
        parts = line.text.split(CONTRADICTION_SEPARATOR)
        if len(parts) != 2:
            raise ContractFileError(
                f"Contradiction line must be 'name {CONTRADICTION_SEPARATOR} name'",
                line=line.number,
                column=1,
                text=line.stripped,
            )
        left, right = (part.strip() for part in parts)
        entries.append(ContradictionEntry(left, right, line.number))
    return tuple(entries)


def _clause_blocks(lines: list[_Line]) -> Iterator[list[_Line]]:
    """Group contract lines into blank-line separated blocks."""
    block: list[_Line] = []
    for line in lines:
        if line.is_blank:
            if block:
                yield block
            block = []
        elif not line.is_comment:
            block.append(line)
    if block:
        yield block


def _parse_contract(
    lines: list[_Line],
) -> tuple[tuple[Clause, ...], tuple[SourceSpan, ...]]:
    clauses: list[Clause] = []
    spans: list[SourceSpan] = []
    for block in _clause_blocks(lines):
        start, end = block[0].number, block[-1].number
        # Keep file line numbers: pad the gaps left by dropped comments.
        by_number = {line.number: line.text for line in block}
        text = "\n".join(by_number.get(n, "") for n in range(start, end + 1))
        try:
            clause = parse_re(text, line_offset=start - 1)
        except RestrictedEnglishError as err:
            raise ContractFileError(
                f"Clause at {SourceSpan(start, end)}: {err.message}",
                line=err.line,
                column=err.column,
                text=err.text,
            ) from err
        clauses.append(clause)
        spans.append(SourceSpan(start, end))
    return tuple(clauses), tuple(spans)


def parse_contract_file(text: str) -> ContractDocument:
    """Parse a contract file into an unvalidated document.

    Raises ContractFileError for a missing or misordered header, a
    malformed dictionary or contradiction line, or a clause that does not
    parse; the error carries the file line.
    """
    sections = _split_sections(text)
    dictionary = _parse_dictionary(sections[SECTION_DICTIONARY])
    clauses, spans = _parse_contract(sections[SECTION_CONTRACT])
    contradictions = _parse_contradictions(sections[SECTION_CONTRADICTION])
    _LOGGER.debug(
        "Read %d dictionary entries, %d clauses, %d contradictions",
        len(dictionary),
        len(clauses),
        len(contradictions),
    )
    return ContractDocument(dictionary, clauses, contradictions, spans)


def _check_name(name: str, line: int | None, what: str) -> Diagnostic | None:
    if not name:
        return Diagnostic(
            DiagnosticKind.EMPTY_STRING, name, line, f"Empty action name in {what}"
        )
    if not is_valid_action_name(name):
        return Diagnostic(
            DiagnosticKind.INVALID_ACTION_NAME,
            name,
            line,
            f"{name!r} in {what} is not a valid action name",
        )
    return None


def validate(doc: ContractDocument) -> list[Diagnostic]:
    """Check a document and return every problem found; empty means valid."""
    diagnostics: list[Diagnostic] = []
    declared: set[str] = set()

    for entry in doc.dictionary:
        problem = _check_name(entry.name, entry.line, "the dictionary")
        if problem is not None:
            diagnostics.append(problem)
        if entry.name and not entry.description:
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.EMPTY_STRING,
                    entry.name,
                    entry.line,
                    f"Action {entry.name!r} has an empty description",
                )
            )
        if entry.name and entry.name in declared:
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.DUPLICATE_DICTIONARY_ENTRY,
                    entry.name,
                    entry.line,
                    f"Action {entry.name!r} is declared more than once",
                )
            )
        declared.add(entry.name)

    for index, clause in enumerate(doc.clauses):
        span = doc.span_of(index)
        line = span.start if span is not None else None
        for action in clause_atoms(clause):
            if action.name not in declared:
                diagnostics.append(
                    Diagnostic(
                        DiagnosticKind.UNDECLARED_ACTION_IN_CONTRACT,
                        action.name,
                        line,
                        f"Action {action.name!r} is used but not in the dictionary",
                    )
                )
        for expr, reason in unsupported_actions(clause):
            text = print_action(expr)
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.UNSUPPORTED_CONSTRUCT,
                    text,
                    line,
                    f"Cannot analyze {reason} '{text}'",
                )
            )

    for contradiction in doc.contradictions:
        for name in (contradiction.left, contradiction.right):
            problem = _check_name(name, contradiction.line, "the contradictions")
            if problem is not None:
                diagnostics.append(problem)
            elif name not in declared:
                diagnostics.append(
                    Diagnostic(
                        DiagnosticKind.UNDECLARED_ACTION_IN_CONTRADICTION,
                        name,
                        contradiction.line,
                        f"Contradictory action {name!r} is not in the dictionary",
                    )
                )
        if contradiction.left and contradiction.left == contradiction.right:
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.REFLEXIVE_CONTRADICTION,
                    contradiction.left,
                    contradiction.line,
                    f"Action {contradiction.left!r} cannot contradict itself",
                )
            )

    _LOGGER.debug("Validation found %d problems", len(diagnostics))
    return diagnostics


def format_contract_file(doc: ContractDocument) -> str:
    """Write *doc* back out in contract-file form."""
    lines = [SECTION_DICTIONARY]
    lines += [
        f"{entry.name} {DICTIONARY_SEPARATOR} {entry.description}"
        for entry in doc.dictionary
    ]
    lines.append(SECTION_CONTRACT)
    for index, clause in enumerate(doc.clauses):
        if index:
            lines.append("")
        lines.append(linearize_re(clause))
    lines.append(SECTION_CONTRADICTION)
    lines += [
        f"{entry.left} {CONTRADICTION_SEPARATOR} {entry.right}"
        for entry in doc.contradictions
    ]
    return "\n".join(lines) + "\n"
