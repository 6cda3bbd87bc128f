"""pyanacon - Conflict analysis for normative contracts written in CL."""

from .actions import (
    ActionExpr,
    ActionStep,
    Atom,
    AtomicAction,
    Choice,
    Concurrent,
    Impossible,
    MutexRelation,
    Negation,
    Sequence,
    Skip,
    Star,
    first_steps,
    mutually_exclusive,
    step_satisfies,
)
from .clauses import (
    And,
    Bottom,
    Box,
    Clause,
    Obligation,
    Permission,
    Prohibition,
    Top,
    XChoice,
    normalize,
    xchoice,
)
from .contract import (
    ContractDocument,
    Diagnostic,
    DiagnosticKind,
    format_contract_file,
    parse_contract_file,
    validate,
)
from .engine import (
    AnalysisState,
    Automaton,
    ConflictKind,
    ConflictReport,
    active_deontics,
    build_and_check,
    build_automaton,
    check_contract,
    check_state,
    report_to_english,
    residual,
)
from .english import linearize_re, parse_re
from .exceptions import (
    AnaconError,
    CLSyntaxError,
    ContractFileError,
    InvalidClauseError,
    ParseError,
    RestrictedEnglishError,
    StateSpaceExceededError,
    UnsupportedConstructError,
    XmlSchemaError,
)
from .export import from_xml, to_xml
from .symbolic import parse_cl, print_cl

__all__ = [
    "ActionExpr",
    "ActionStep",
    "AnaconError",
    "AnalysisState",
    "And",
    "Atom",
    "AtomicAction",
    "Automaton",
    "Bottom",
    "Box",
    "CLSyntaxError",
    "Choice",
    "Clause",
    "Concurrent",
    "ConflictKind",
    "ConflictReport",
    "ContractDocument",
    "ContractFileError",
    "Diagnostic",
    "DiagnosticKind",
    "Impossible",
    "InvalidClauseError",
    "MutexRelation",
    "Negation",
    "Obligation",
    "ParseError",
    "Permission",
    "Prohibition",
    "RestrictedEnglishError",
    "Sequence",
    "Skip",
    "Star",
    "StateSpaceExceededError",
    "Top",
    "UnsupportedConstructError",
    "XChoice",
    "XmlSchemaError",
    "active_deontics",
    "build_and_check",
    "build_automaton",
    "check_contract",
    "check_state",
    "first_steps",
    "format_contract_file",
    "from_xml",
    "linearize_re",
    "mutually_exclusive",
    "normalize",
    "parse_cl",
    "parse_contract_file",
    "parse_re",
    "print_cl",
    "report_to_english",
    "residual",
    "step_satisfies",
    "to_xml",
    "validate",
    "xchoice",
]
