"""The ``anacon`` command.

``anacon Contract.txt`` reads a contract file, validates it, writes its CL
translation to Result_Cl.txt and looks for conflicts; a conflict is written
to Result_Eng.txt in restricted English. ``anacon -cl formula.txt`` turns a
symbolic CL formula into restricted English instead.
"""

from __future__ import annotations

import enum
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import click

from .clauses import Clause
from .const import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_STATES,
    PHASE_ANALYZE,
    PHASE_PARSE,
    PHASE_TO_CL,
    PHASE_TO_ENGLISH,
    PHASE_TO_XML,
    PHASE_VALIDATE,
    RESULT_CL_FILENAME,
    RESULT_ENG_FILENAME,
    XML_FILENAME,
)
from .contract import parse_contract_file, validate
from .engine import build_and_check, report_to_english
from .english import linearize_re
from .exceptions import AnaconError, ParseError, StateSpaceExceededError
from .export import to_xml
from .symbolic import parse_cl, print_cl

_LOGGER = logging.getLogger(__name__)


class ExitCode(enum.IntEnum):
    """Process exit status; each outcome has its own code."""

    NO_CONFLICT = 0
    CONFLICT = 1
    VALIDATION_FAILED = 2
    INCONCLUSIVE = 3
    ERROR = 4


class Mode(enum.StrEnum):
    ANALYZE = "analyze"
    REVERSE = "reverse"


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Options for one run of the pipeline."""

    input_path: Path
    mode: Mode = Mode.ANALYZE
    emit_xml: bool = False
    max_states: int = DEFAULT_MAX_STATES
    max_depth: int = DEFAULT_MAX_DEPTH
    output_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.max_states < 1 or self.max_depth < 1:
            raise ValueError("Exploration bounds must be positive")

    @property
    def out_dir(self) -> Path:
        """Where result files go: --out, or next to the input."""
        return self.output_dir or self.input_path.parent


def _read(path: Path) -> str:
    _LOGGER.info("[%s] Reading %s", PHASE_PARSE, path)
    return path.read_text(encoding="utf-8")


def _write(cfg: RunConfig, name: str, text: str) -> Path:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / name
    path.write_text(text, encoding="utf-8")
    _LOGGER.debug("Wrote %s", path)
    return path


def _write_xml(cfg: RunConfig, clause: Clause) -> None:
    _LOGGER.info("[%s] Exporting XML", PHASE_TO_XML)
    _write(cfg, XML_FILENAME, to_xml(clause) + "\n")


def _fail(message: object) -> ExitCode:
    click.echo(f"Error: {message}", err=True)
    return ExitCode.ERROR


def run_analyze(cfg: RunConfig) -> ExitCode:
    """Validate, translate and check a contract file."""
    try:
        doc = parse_contract_file(_read(cfg.input_path))
    except (OSError, UnicodeDecodeError, ParseError) as err:
        return _fail(err)

    _LOGGER.info("[%s] Checking actions against the dictionary", PHASE_VALIDATE)
    diagnostics = validate(doc)
    if diagnostics:
        for diagnostic in diagnostics:
            click.echo(diagnostic)
        click.echo(f"{len(diagnostics)} problem(s) found; not analyzed")
        return ExitCode.VALIDATION_FAILED

    contract = doc.contract
    _LOGGER.info("[%s] Translating %d clauses to CL", PHASE_TO_CL, len(doc.clauses))
    try:
        _write(cfg, RESULT_CL_FILENAME, print_cl(contract) + "\n")
        if cfg.emit_xml:
            _write_xml(cfg, contract)
    except OSError as err:
        return _fail(err)

    _LOGGER.info(
        "[%s] Looking for conflicts (max %d states, depth %d)",
        PHASE_ANALYZE,
        cfg.max_states,
        cfg.max_depth,
    )
    try:
        report = build_and_check(
            doc, max_states=cfg.max_states, max_depth=cfg.max_depth
        )
    except StateSpaceExceededError as err:
        click.echo(f"INCONCLUSIVE: {err}")
        return ExitCode.INCONCLUSIVE
    except AnaconError as err:
        return _fail(err)

    if report is None:
        click.echo("NO CONFLICT")
        return ExitCode.NO_CONFLICT

    _LOGGER.info("[%s] Writing the counter-example", PHASE_TO_ENGLISH)
    text = report_to_english(report)
    try:
        _write(cfg, RESULT_ENG_FILENAME, text)
    except OSError as err:
        return _fail(err)
    click.echo(f"CONFLICT: {report.kind}")
    click.echo(text.splitlines()[0])
    return ExitCode.CONFLICT


def run_reverse(cfg: RunConfig) -> ExitCode:
    """Turn a symbolic CL formula into restricted English."""
    try:
        clause = parse_cl(_read(cfg.input_path))
    except (OSError, UnicodeDecodeError, ParseError) as err:
        return _fail(err)

    _LOGGER.info("[%s] Linearizing to restricted English", PHASE_TO_ENGLISH)
    text = linearize_re(clause)
    try:
        _write(cfg, RESULT_ENG_FILENAME, text + "\n")
        if cfg.emit_xml:
            _write_xml(cfg, clause)
    except OSError as err:
        return _fail(err)
    click.echo(text)
    return ExitCode.NO_CONFLICT


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger(__package__).setLevel(level)


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.argument("input_path", type=click.Path(path_type=Path, dir_okay=False))
@click.option(
    "-cl",
    "--cl",
    "reverse",
    is_flag=True,
    help="Read a symbolic CL formula and write it as restricted English.",
)
@click.option("--xml", "emit_xml", is_flag=True, help=f"Also write {XML_FILENAME}.")
@click.option(
    "--max-states",
    type=click.IntRange(min=1),
    default=DEFAULT_MAX_STATES,
    show_default=True,
    help="Give up after exploring this many states.",
)
@click.option(
    "--max-depth",
    type=click.IntRange(min=1),
    default=DEFAULT_MAX_DEPTH,
    show_default=True,
    help="Give up on traces longer than this.",
)
@click.option(
    "--out",
    "output_dir",
    type=click.Path(path_type=Path, file_okay=False),
    default=None,
    help="Directory for result files (default: next to the input).",
)
@click.option("-v", "--verbose", is_flag=True, help="Log each pipeline phase.")
@click.version_option(package_name="pyanacon", prog_name="anacon")
@click.pass_context
def cli(
    ctx: click.Context,
    input_path: Path,
    reverse: bool,
    emit_xml: bool,
    max_states: int,
    max_depth: int,
    output_dir: Path | None,
    verbose: bool,
) -> None:
    """Check the contract in INPUT_PATH for normative conflicts."""
    _configure_logging(verbose)
    cfg = RunConfig(
        input_path=input_path,
        mode=Mode.REVERSE if reverse else Mode.ANALYZE,
        emit_xml=emit_xml,
        max_states=max_states,
        max_depth=max_depth,
        output_dir=output_dir,
    )
    code = run_reverse(cfg) if cfg.mode is Mode.REVERSE else run_analyze(cfg)
    ctx.exit(int(code))


def main(argv: Sequence[str] | None = None) -> None:
    """Console entry point.

    Usage errors exit with ExitCode.ERROR rather than click's default 2,
    which is taken by validation failures.
    """
    try:
        code = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="anacon",
            standalone_mode=False,
        )
    except click.ClickException as err:
        err.show()
        sys.exit(ExitCode.ERROR)
    except click.Abort:
        sys.exit(ExitCode.ERROR)
    sys.exit(code or 0)
