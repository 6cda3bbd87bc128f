"""Tests for the XML form of clauses."""

import random

import pytest

from pyanacon.actions import STAR_SKIP, Negation, atom
from pyanacon.clauses import BOTTOM, TOP, Box, Clause, Obligation, Permission
from pyanacon.contract import ContractDocument
from pyanacon.exceptions import XmlSchemaError
from pyanacon.export import from_xml, to_xml
from tests.generators import random_clause

CHECK_IN_XML = (
    "<contract><box>"
    '<guard><atom name="two_hours_before_the_flight_leaves"/></guard>'
    "<obligation><concurrent>"
    '<atom name="open_the_check_in_desk"/>'
    '<atom name="request_the_passenger_manifest"/>'
    "</concurrent><reparation><obligation>"
    '<atom name="pay_a_fine"/>'
    "</obligation></reparation></obligation>"
    "</box></contract>"
)


class TestToXml:
    """Serializing clauses."""

    @pytest.mark.parametrize(
        ("clause", "expected"),
        [
            (
                Obligation(atom("a")),
                '<contract><obligation><atom name="a"/></obligation></contract>',
            ),
            (TOP, "<contract><top/></contract>"),
            (BOTTOM, "<contract><bottom/></contract>"),
            (
                Box(STAR_SKIP, Permission(Negation(atom("a")))),
                "<contract><box><guard><star><skip/></star></guard>"
                '<permission><not><atom name="a"/></not></permission></box></contract>',
            ),
        ],
        ids=["obligation", "top", "bottom", "star-and-negation"],
    )
    def test_serialize(self, clause: Clause, expected: str) -> None:
        assert to_xml(clause) == expected

    def test_case_study_first_clause(self, case_study: ContractDocument) -> None:
        assert to_xml(case_study.clauses[0]) == CHECK_IN_XML


class TestFromXml:
    """Reading clauses back and rejecting anything else."""

    def test_accepts_formatting(self) -> None:
        text = (
            '<?xml version="1.0"?>\n<contract>\n  <!-- note -->\n'
            '  <obligation>\n    <atom name="a"/>\n  </obligation>\n</contract>\n'
        )
        assert from_xml(text) == Obligation(atom("a"))

    def test_accepts_bytes(self) -> None:
        assert from_xml(CHECK_IN_XML.encode()) == from_xml(CHECK_IN_XML)

    @pytest.mark.parametrize(
        ("text", "match", "path"),
        [
            (
                "<contract><obligation><frob/></obligation></contract>",
                "Unknown action element <frob>",
                "/contract/obligation/frob",
            ),
            (
                "<contract><promise/></contract>",
                "Unknown clause element <promise>",
                "/contract/promise",
            ),
            (
                '<contract><obligation><atom name="a"/><extra/>'
                "</obligation></contract>",
                "Expected <reparation>",
                "/contract/obligation/extra",
            ),
            (
                '<contract><obligation><atom name="If"/></obligation></contract>',
                "reserved word",
                "/contract/obligation/atom",
            ),
            (
                "<contract><obligation><atom/></obligation></contract>",
                "name attribute",
                "/contract/obligation/atom",
            ),
            (
                "<contract><and><top/></and></contract>",
                "at least two",
                "/contract/and",
            ),
            (
                '<contract><xchoice><obligation><atom name="a"/></obligation>'
                '<permission><atom name="b"/></permission></xchoice></contract>',
                "Exclusive choice",
                "/contract/xchoice",
            ),
            (
                "<contract>text<top/></contract>",
                "Unexpected text",
                "/contract",
            ),
            ("<clauses><top/></clauses>", "Root element", "/clauses"),
            ("<contract><top/><top/></contract>", "1 child", "/contract"),
        ],
        ids=[
            "unknown-action",
            "unknown-clause",
            "bad-reparation",
            "reserved-name",
            "missing-name",
            "short-and",
            "mixed-xchoice",
            "text",
            "root",
            "two-roots",
        ],
    )
    def test_rejects(self, text: str, match: str, path: str) -> None:
        with pytest.raises(XmlSchemaError, match=match) as excinfo:
            from_xml(text)
        assert excinfo.value.path == path

    def test_malformed(self) -> None:
        with pytest.raises(XmlSchemaError, match="Malformed XML"):
            from_xml("<contract><top></contract>")


class TestRoundTrip:
    """from_xml reads back what to_xml writes."""

    def test_random_clauses(self) -> None:
        rng = random.Random(31)
        for _ in range(1000):
            clause = random_clause(rng)
            assert from_xml(to_xml(clause)) == clause
