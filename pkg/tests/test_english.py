"""Tests for the restricted English syntax."""

import random

import pytest

from pyanacon.actions import STAR_SKIP, Choice, Concurrent, Sequence, atom
from pyanacon.clauses import (
    BOTTOM,
    TOP,
    And,
    Box,
    Obligation,
    Permission,
    Prohibition,
    xchoice,
)
from pyanacon.const import TEMPORAL_WORDS
from pyanacon.english import (
    linearize_action,
    linearize_re,
    parse_re,
    split_marked_name,
)
from pyanacon.exceptions import RestrictedEnglishError
from tests.generators import random_clause

PAY = Obligation(atom("pay_a_fine"))


class TestTemplates:
    """Each clause template."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("( It is mandatory to ( pay_a_fine ) )", PAY),
            (
                "( It is mandatory to ( a ) if not ( a ) then"
                " ( It is mandatory to ( pay_a_fine ) ) )",
                Obligation(atom("a"), PAY),
            ),
            ("( It is prohibited to ( a ) )", Prohibition(atom("a"))),
            (
                "( It is prohibited to ( a ) if ( a ) then ( trivially violated ) )",
                Prohibition(atom("a"), BOTTOM),
            ),
            (
                "( It is permitted to ( a or b ) )",
                Permission(Choice(atom("a"), atom("b"))),
            ),
            ("( If ( g ) then ( trivially satisfied ) )", Box(atom("g"), TOP)),
            (
                "( ( It is permitted to ( a ) ) and ( It is mandatory to ( b ) )"
                " and ( trivially satisfied ) )",
                And((Permission(atom("a")), Obligation(atom("b")), TOP)),
            ),
            (
                "( ( It is mandatory to ( a ) ) xor ( It is mandatory to ( b ) ) )",
                xchoice(Obligation(atom("a")), Obligation(atom("b"))),
            ),
            ("( ( It is permitted to ( a ) ) )", Permission(atom("a"))),
        ],
        ids=[
            "obligation",
            "obligation-reparation",
            "prohibition",
            "prohibition-reparation",
            "permission",
            "conditional",
            "and",
            "xor",
            "grouping",
        ],
    )
    def test_parse(self, text: str, expected: object) -> None:
        assert parse_re(text) == expected

    @pytest.mark.parametrize("word", TEMPORAL_WORDS)
    def test_temporal_words(self, word: str) -> None:
        text = f"( ( {word} ) ( If ( g ) then ( It is mandatory to ( pay_a_fine ) ) ) )"
        assert parse_re(text) == Box(STAR_SKIP, Box(atom("g"), PAY))

    def test_action_operators(self) -> None:
        text = "( It is mandatory to ( a followed-by b and c or d ) )"
        expected = Choice(
            Sequence(atom("a"), Concurrent(atom("b"), atom("c"))), atom("d")
        )
        assert parse_re(text) == Obligation(expected)


class TestMarkedNames:
    """Names carrying _and_ / _or_ markers."""

    @pytest.mark.parametrize(
        ("name", "expected"),
        [
            ("pay_a_fine", atom("pay_a_fine")),
            ("a_and_b", Concurrent(atom("a"), atom("b"))),
            ("a_or_b", Choice(atom("a"), atom("b"))),
            ("a_and_b_or_c", Choice(Concurrent(atom("a"), atom("b")), atom("c"))),
            ("a_or_b_and_c", Concurrent(Choice(atom("a"), atom("b")), atom("c"))),
            (
                "20_minutes_the_flight_is_due_to_leave_and_not_before",
                Concurrent(
                    atom("20_minutes_the_flight_is_due_to_leave"), atom("not_before")
                ),
            ),
        ],
        ids=["plain", "and", "or", "left-assoc", "left-assoc-or", "long"],
    )
    def test_split(self, name: str, expected: object) -> None:
        assert split_marked_name(name) == expected

    def test_split_inside_clause(self) -> None:
        clause = parse_re("( It is permitted to ( open_desk_or_close_desk ) )")
        assert clause == Permission(Choice(atom("open_desk"), atom("close_desk")))

    def test_marker_needs_both_sides(self) -> None:
        with pytest.raises(RestrictedEnglishError):
            parse_re("( It is permitted to ( _and_b ) )")


class TestErrors:
    """Diagnostics for text outside the templates."""

    def test_reparation_must_repeat_action(self) -> None:
        text = (
            "( It is mandatory to ( a ) if not ( b ) then"
            " ( It is mandatory to ( c ) ) )"
        )
        with pytest.raises(RestrictedEnglishError, match="does not repeat") as excinfo:
            parse_re(text)
        assert excinfo.value.column == text.index("( b )") + 3

    def test_repetition_compares_tokens(self) -> None:
        text = (
            "( It is mandatory to ( a_and_b ) if not ( a and b ) then"
            " ( It is mandatory to ( c ) ) )"
        )
        with pytest.raises(RestrictedEnglishError, match="does not repeat"):
            parse_re(text)

    def test_obligation_needs_if_not(self) -> None:
        text = "( It is mandatory to ( a ) if ( a ) then ( trivially violated ) )"
        with pytest.raises(RestrictedEnglishError, match="if not"):
            parse_re(text)

    def test_prohibition_rejects_if_not(self) -> None:
        text = "( It is prohibited to ( a ) if not ( a ) then ( trivially violated ) )"
        with pytest.raises(RestrictedEnglishError, match="prohibition"):
            parse_re(text)

    def test_nearest_template(self) -> None:
        with pytest.raises(
            RestrictedEnglishError,
            match=r"nearest template: \( It is mandatory to",
        ):
            parse_re("( It is mandatry to ( a ) )")

    def test_unknown_temporal_word(self) -> None:
        text = "( ( Sometimes ) ( If ( g ) then ( trivially satisfied ) ) )"
        with pytest.raises(RestrictedEnglishError, match="Unknown temporal keyword"):
            parse_re(text)

    def test_temporal_needs_conditional(self) -> None:
        text = "( ( Always ) ( It is mandatory to ( a ) ) )"
        with pytest.raises(RestrictedEnglishError, match="temporal keyword"):
            parse_re(text)

    def test_repetition_inside_modality(self) -> None:
        with pytest.raises(RestrictedEnglishError, match="Repetition"):
            parse_re("( It is mandatory to ( a repeatedly ) )")

    def test_mixed_xor(self) -> None:
        text = "( ( It is mandatory to ( a ) ) xor ( It is permitted to ( b ) ) )"
        with pytest.raises(RestrictedEnglishError, match="Exclusive choice"):
            parse_re(text)

    def test_trailing_text(self) -> None:
        with pytest.raises(RestrictedEnglishError, match="after the end"):
            parse_re("( trivially satisfied ) extra")

    def test_line_offset(self) -> None:
        with pytest.raises(RestrictedEnglishError) as excinfo:
            parse_re("( It is mandatory to\n( a ; ) )", line_offset=20)
        assert excinfo.value.line == 22


class TestLinearize:
    """Rendering clauses as restricted English."""

    def test_reparation(self) -> None:
        assert linearize_re(Obligation(atom("a"), PAY)) == (
            "( It is mandatory to ( a ) if not ( a ) then"
            " ( It is mandatory to ( pay_a_fine ) ) )"
        )

    def test_always(self) -> None:
        clause = Box(STAR_SKIP, Box(atom("g"), Prohibition(atom("a"))))
        assert linearize_re(clause) == (
            "( ( Always ) ( If ( g ) then ( It is prohibited to ( a ) ) ) )"
        )

    def test_star_guard_without_conditional(self) -> None:
        clause = Box(STAR_SKIP, PAY)
        assert linearize_re(clause) == (
            "( If ( 1 repeatedly ) then ( It is mandatory to ( pay_a_fine ) ) )"
        )
        assert parse_re(linearize_re(clause)) == clause

    def test_action(self) -> None:
        action = Sequence(atom("a"), Choice(atom("b"), atom("c")))
        assert linearize_action(action) == "a followed-by ( b or c )"

    def test_random_round_trip(self) -> None:
        rng = random.Random(99)
        for _ in range(1000):
            clause = random_clause(rng)
            assert parse_re(linearize_re(clause)) == clause, linearize_re(clause)
