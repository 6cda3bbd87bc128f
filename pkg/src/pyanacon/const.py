"""Tokens, keywords and defaults shared by the pyanacon modules."""

# Words an atomic action may not be named after. The first block belongs to
# the two concrete syntaxes; the second to tokens this package introduces.
RESERVED_WORDS: frozenset[str] = frozenset(
    {
        "O",
        "F",
        "P",
        "If",
        "then",
        "Always",
        "After",
        "When",
        "Before",
        "and",
        "or",
        "not",
        "0",
        "1",
    }
    | {"T", "_", "xor", "repeatedly", "trivially"}
)

# Infix markers that split a single restricted-English name into a compound.
AND_MARKER = "_and_"
OR_MARKER = "_or_"

# Temporal words are free variants of the same "[1*]" guard.
TEMPORAL_WORDS: tuple[str, ...] = ("Always", "After", "When", "Before")
DEFAULT_TEMPORAL_WORD = "Always"

# Symbolic CL tokens
TOP_TOKEN = "T"
BOTTOM_TOKEN = "_|_"
XCHOICE_TOKEN = "(+)"
AND_TOKEN = "^"
AND_TOKEN_ALT = "/\\"
REPARATION_TOKEN = "_"

# Restricted English phrases
OBLIGATION_PHRASE = "It is mandatory to"
PROHIBITION_PHRASE = "It is prohibited to"
PERMISSION_PHRASE = "It is permitted to"
TOP_PHRASE = "trivially satisfied"
BOTTOM_PHRASE = "trivially violated"

# Contract.txt layout
SECTION_DICTIONARY = "DICTIONARY"
SECTION_CONTRACT = "CONTRACT"
SECTION_CONTRADICTION = "CONTRADICTION"
SECTION_HEADERS: tuple[str, ...] = (
    SECTION_DICTIONARY,
    SECTION_CONTRACT,
    SECTION_CONTRADICTION,
)
COMMENT_PREFIX = "%"
DICTIONARY_SEPARATOR = ":"
CONTRADICTION_SEPARATOR = "#"

# Output files
RESULT_CL_FILENAME = "Result_Cl.txt"
RESULT_ENG_FILENAME = "Result_Eng.txt"
XML_FILENAME = "contract.xml"

# Exploration bounds
DEFAULT_MAX_STATES = 100_000
DEFAULT_MAX_DEPTH = 10

# Pipeline phase names, as they appear in --verbose logs
PHASE_PARSE = "Cont_Parser"
PHASE_VALIDATE = "Comparison"
PHASE_TO_CL = "Cont_GF_Cl"
PHASE_TO_XML = "Cl2XML"
PHASE_ANALYZE = "CLAN"
PHASE_TO_ENGLISH = "Cl_GF_ContScript"
