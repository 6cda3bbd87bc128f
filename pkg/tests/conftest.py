"""Shared fixtures."""

from pathlib import Path

import pytest

from pyanacon.contract import ContractDocument, parse_contract_file

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def case_study_text() -> str:
    return (FIXTURES / "Contract.txt").read_text(encoding="utf-8")


@pytest.fixture
def case_study(case_study_text: str) -> ContractDocument:
    return parse_contract_file(case_study_text)
