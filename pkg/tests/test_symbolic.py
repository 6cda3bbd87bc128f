"""Tests for the symbolic CL syntax."""

import random

import pytest

from pyanacon.actions import (
    IMPOSSIBLE,
    SKIP,
    STAR_SKIP,
    ActionExpr,
    Choice,
    Concurrent,
    Negation,
    Sequence,
    Star,
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
    xchoice,
)
from pyanacon.contract import ContractDocument
from pyanacon.exceptions import CLSyntaxError, InvalidClauseError
from pyanacon.symbolic import parse_cl, print_action, print_cl, tokenize_cl
from tests.generators import random_clause

# The airport check-in contract, one line per clause, as the translator writes it.
CASE_STUDY_CL = [
    "( [ ( two_hours_before_the_flight_leaves ) ] ( O ( open_the_check_in_desk"
    " & request_the_passenger_manifest ) _ ( O ( pay_a_fine ) ) ) )",
    "( [ 1 * ] ( [ ( opening_the_desk_with_the_passenger_manifest ) ] ( O ("
    " reply_to_the_passenger_manifest_request ) _ ( O ( pay_a_fine ) ) ) ) )",
    "( ( [ 1 * ] ( [ ( open_the_check_in_desk ) ] ( O ("
    " check_that_the_passport_details_match_what_is_written_on_the_ticket"
    " & check_the_luggage_is_within_the_weight_limits ) _ ( O ( pay_a_fine ) ) ) ) )"
    " ^ ( [ ( check_that_the_passport_details_match_what_is_written_on_the_ticket"
    " & check_the_luggage_is_within_the_weight_limits ) ] ( O ("
    " issue_the_boarding_pass ) _ ( O ( pay_a_fine ) ) ) ) )",
    "( [ ( the_luggage_weighs_more_than_the_limit ) ] ( O ("
    " collect_payment_for_the_extra_weight & issue_the_boarding_pass ) _ ( O ("
    " pay_a_fine ) ) ) )",
    "( O ( inspect_that_the_details_are_correct_beforehand ) _ ( F ("
    " issue_the_boarding_pass ) _ ( O ( pay_a_fine ) ) ) )",
    "( [ 1 * ] ( [ ( open_the_check_in_desk ) ] ( F ( issue_the_boarding_pass )"
    " _ ( O ( pay_a_fine ) ) ) ) )",
    "( [ 1 * ] ( [ ( 20_minutes_the_flight_is_due_to_leave & not_before ) ] ( O ("
    " close_the_check_in_desk ) _ ( O ( pay_a_fine ) ) ) ) )",
    "( [ 1 * ] ( [ ( close_the_check_in_desk ) ] ( O ("
    " send_the_luggage_information_to_airline ) _ ( O ( pay_a_fine ) ) ) ) )",
    "( [ 1 * ] ( [ ( close_the_check_in_desk ) ] ( F ( issue_the_boarding_pass"
    " + open_the_check_in_desk ) _ ( O ( pay_a_fine ) ) ) ) )",
]


class TestPrint:
    """Rendering clauses and actions."""

    @pytest.mark.parametrize(
        ("clause", "expected"),
        [
            (TOP, "T"),
            (BOTTOM, "_|_"),
            (Obligation(atom("a")), "( O ( a ) )"),
            (Obligation(atom("a"), BOTTOM), "( O ( a ) _ _|_ )"),
            (Permission(atom("a")), "( P ( a ) )"),
            (Box(STAR_SKIP, Prohibition(atom("a"))), "( [ 1 * ] ( F ( a ) ) )"),
            (Box(atom("g"), TOP), "( [ ( g ) ] T )"),
            (
                And((Obligation(atom("a")), Permission(atom("b")))),
                "( ( O ( a ) ) ^ ( P ( b ) ) )",
            ),
            (
                xchoice(Obligation(atom("a")), Obligation(atom("b"))),
                "( ( O ( a ) ) (+) ( O ( b ) ) )",
            ),
        ],
        ids=["top", "bottom", "obligation", "reparation", "permission", "always",
             "box", "and", "xchoice"],
    )
    def test_clause(self, clause: Clause, expected: str) -> None:
        assert print_cl(clause) == expected

    @pytest.mark.parametrize(
        ("action", "expected"),
        [
            (Sequence(Sequence(atom("a"), atom("b")), atom("c")), "a . b . c"),
            (Sequence(atom("a"), Sequence(atom("b"), atom("c"))), "a . ( b . c )"),
            (Concurrent(Choice(atom("a"), atom("b")), atom("c")), "( a + b ) & c"),
            (Choice(Concurrent(atom("a"), atom("b")), atom("c")), "a & b + c"),
            (Negation(Concurrent(atom("a"), atom("b"))), "! ( a & b )"),
            (Star(Sequence(atom("a"), atom("b"))), "( a . b ) *"),
            (Sequence(SKIP, IMPOSSIBLE), "1 . 0"),
        ],
        ids=["left-assoc", "right-nested", "choice-in-concurrent",
             "concurrent-in-choice", "negation", "star", "constants"],
    )
    def test_action(self, action: ActionExpr, expected: str) -> None:
        assert print_action(action) == expected


class TestParse:
    """Reading symbolic CL."""

    def test_alternative_conjunction_token(self) -> None:
        assert parse_cl("O(a) /\\ P(b)") == And(
            (Obligation(atom("a")), Permission(atom("b")))
        )

    def test_whitespace_insensitive(self) -> None:
        assert parse_cl("([1*]([(g)](O(a)_(O(b)))))") == parse_cl(
            "( [ 1 * ] ( [ ( g ) ] ( O ( a ) _ ( O ( b ) ) ) ) )"
        )

    def test_lone_underscore_is_reparation(self) -> None:
        kinds = [(tok.kind, tok.text) for tok in tokenize_cl("_ _|_ a_b")]
        assert kinds[:3] == [("PUNCT", "_"), ("PUNCT", "_|_"), ("NAME", "a_b")]

    def test_underscore_cannot_name_an_action(self) -> None:
        with pytest.raises(InvalidClauseError):
            atom("_")
        with pytest.raises(CLSyntaxError, match="Expected an action"):
            parse_cl("( O ( _ ) )")

    @pytest.mark.parametrize(
        ("text", "match", "column"),
        [
            ("( O ( a ) ", "Expected '\\)'", 11),
            ("O ( a * )", "Repetition", 5),
            ("O ( a ) $", "Unexpected character", 9),
            ("( O ( a ) ) (+) ( F ( b ) )", "Exclusive choice", 13),
            ("O ( If )", "reserved word", 5),
            ("Q ( a )", "Expected a clause", 1),
        ],
        ids=["unclosed", "star-in-modality", "bad-character", "mixed-choice",
             "reserved-name", "unknown-modality"],
    )
    def test_errors(self, text: str, match: str, column: int) -> None:
        with pytest.raises(CLSyntaxError, match=match) as excinfo:
            parse_cl(text)
        assert excinfo.value.line == 1
        assert excinfo.value.column == column

    def test_error_line_offset(self) -> None:
        with pytest.raises(CLSyntaxError) as excinfo:
            parse_cl("O ( a )\n^ ?", line_offset=10)
        assert excinfo.value.line == 12
        assert str(excinfo.value).startswith("line 12, column 3:")


class TestCaseStudy:
    """The check-in desk contract in CL."""

    def test_translation(self, case_study: ContractDocument) -> None:
        assert [print_cl(c) for c in case_study.clauses] == CASE_STUDY_CL

    @pytest.mark.parametrize("index", range(len(CASE_STUDY_CL)))
    def test_parses_to_english_clause(
        self, case_study: ContractDocument, index: int
    ) -> None:
        assert parse_cl(CASE_STUDY_CL[index]) == case_study.clauses[index]


class TestRoundTrip:
    """print_cl and parse_cl are inverse."""

    def test_random_clauses(self) -> None:
        rng = random.Random(2024)
        for _ in range(1000):
            clause = random_clause(rng)
            assert parse_cl(print_cl(clause)) == clause, print_cl(clause)
