# lumpgap/cli.py
"""
Command-line front end.

Exit status: 0 success (for certify: strict gap), 2 certify found no strict
gap, 3 invalid input (parse, constraint, argument or configuration error),
4 internal consistency or numerical failure.
"""
import importlib
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import click
import typer
from rich.console import Console
from rich.panel import Panel
from rich.text import Text

from . import reports
from .certify import run_certificate, scan_grid
from .closedform import diag_bound_check, family_determinants, family_gap_check
from .config import CERTIFIED_TOL, Settings, check_tolerance, load_settings
from .errors import (ConfigError, DomainError, InternalConsistencyError, LumpGapError,
                     NumericalFailure)
from .model import (BlockModelParams, check_constraints, check_regime, derive_spectral,
                    load_model, quotient_L, row_residuals, validate)
from .observability import structured_logger
from .partitions import classify, enumerate_partitions
from .utils import calculate_file_hash, console, print_logo

EXIT_OK = 0
EXIT_NO_GAP = 2
EXIT_INVALID = 3
EXIT_FAILURE = 4

FORMATS = ("text", "json")

err_console = Console(stderr=True)

# newer typer releases dispatch through their own copy of click
_dispatch = importlib.import_module(typer.Exit.__module__)
USAGE_ERRORS = tuple({click.ClickException, _dispatch.ClickException})
ABORTS = tuple({click.Abort, _dispatch.Abort})

app = typer.Typer(
    name="lumpgap",
    help="Spectral compression of the six-state lumpable chain: spectra, closed forms and the gap certificate.",
    add_completion=False,
    no_args_is_help=False,
)


@dataclass(frozen=True)
class CliConfig:
    """Resolved options of one subcommand run; flags override the environment."""
    subcommand: str
    model: Optional[Path] = None
    output_format: str = "text"
    out: Optional[Path] = None
    tol: float = CERTIFIED_TOL
    workers: int = 1

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ConfigError(f"--format must be one of {', '.join(FORMATS)}, got {self.output_format!r}")
        check_tolerance(self.tol)
        if self.workers < 1:
            raise ConfigError(f"--workers must be >= 1, got {self.workers}")

    @classmethod
    def resolve(cls, subcommand: str, settings: Settings, *, model: Optional[Path] = None,
                output_format: str = "text", out: Optional[Path] = None,
                tol: Optional[float] = None, workers: Optional[int] = None) -> "CliConfig":
        return cls(
            subcommand=subcommand,
            model=model,
            output_format=output_format.lower(),
            out=out,
            tol=settings.tol if tol is None else tol,
            workers=settings.workers if workers is None else workers,
        )


def _exit_code(exc: LumpGapError) -> int:
    if isinstance(exc, (InternalConsistencyError, NumericalFailure, DomainError)):
        return EXIT_FAILURE
    return EXIT_INVALID


@contextmanager
def _handled(command: str) -> Iterator[None]:
    """Turn library errors into a red panel, a log event and an exit status."""
    try:
        yield
    except LumpGapError as e:
        structured_logger.log_error(command, type(e).__name__, str(e))
        err_console.print(Panel(Text(str(e)), title=f"[bold red]{type(e).__name__}[/bold red]",
                                border_style="red"))
        raise typer.Exit(code=_exit_code(e))


def _settings(ctx: typer.Context) -> Settings:
    return ctx.obj if isinstance(ctx.obj, Settings) else load_settings()


def _load(path: Path) -> Tuple[BlockModelParams, str]:
    params = load_model(path)
    digest = calculate_file_hash(path)
    structured_logger.log_model_loaded(str(path), digest)
    return params, digest


def _emit(config: CliConfig, render: Callable[[Console], None], document: Dict) -> None:
    """Write the text or JSON form of a report to stdout or --out."""
    if config.output_format == "json":
        payload = reports.to_json(document)
        if config.out is None:
            typer.echo(payload, nl=False)
            return
        try:
            config.out.write_text(payload, encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot write {config.out}: {e}") from None
        return

    if config.out is None:
        render(console)
        return
    try:
        with open(config.out, "w", encoding="utf-8") as fh:
            render(reports.plain_console(fh))
    except OSError as e:
        raise ConfigError(f"cannot write {config.out}: {e}") from None


ModelOption = typer.Option(..., "--model", "-m", help="Model file (key = value per line).")
FormatOption = typer.Option("text", "--format", "-f", help="Output format: text or json.")
OutOption = typer.Option(None, "--out", "-o", help="Write the report to this file instead of stdout.")
TolOption = typer.Option(None, "--tol", help="Certified comparison tolerance, in (0, 1e-3].")
WorkersOption = typer.Option(None, "--workers", "-w", help="Threads used to evaluate partitions.")


@app.callback(invoke_without_command=True)
def main_callback(
    ctx: typer.Context,
    log_dir: Optional[Path] = typer.Option(None, "--log-dir", help="Write JSON and text logs here."),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR."),
):
    """Global options shared by every subcommand."""
    with _handled("startup"):
        settings = load_settings()
        level = (log_level or settings.log_level).upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ConfigError(f"--log-level must be a logging level name, got {log_level!r}")
        structured_logger.configure(log_dir or settings.log_dir, level)
        ctx.obj = settings

    if ctx.invoked_subcommand is None:
        print_logo()
        console.print(ctx.get_help(), markup=False, highlight=False)


@app.command("validate")
def cmd_validate(
    ctx: typer.Context,
    model: Path = ModelOption,
    output_format: str = FormatOption,
    out: Optional[Path] = OutOption,
):
    """Check a model file against the row-sum and bound constraints."""
    with _handled("validate"):
        config = CliConfig.resolve("validate", _settings(ctx), model=model,
                                   output_format=output_format, out=out)
        params, _ = _load(model)
        checks = check_constraints(params)
        passed = all(c.passed for c in checks)
        structured_logger.log_validation(
            str(model), passed, {name: res for name, res in zip(("row1", "row2", "row3"),
                                                                row_residuals(params))},
        )
        _emit(config,
              lambda c: reports.render_validation(c, str(model), checks),
              reports.validation_document(str(model), checks))
    if not passed:
        raise typer.Exit(code=EXIT_INVALID)


@app.command("spectrum")
def cmd_spectrum(
    ctx: typer.Context,
    model: Path = ModelOption,
    output_format: str = FormatOption,
    out: Optional[Path] = OutOption,
):
    """Macro eigenvalues, local modes, relaxed benchmark and regime checks."""
    with _handled("spectrum"):
        config = CliConfig.resolve("spectrum", _settings(ctx), model=model,
                                   output_format=output_format, out=out)
        params, _ = _load(model)
        summary, regime, diag_rows = _spectral(params)
        _emit(config,
              lambda c: reports.render_spectrum(c, summary, regime, diag_rows),
              reports.spectrum_document(summary, regime, diag_rows))


def _spectral(params: BlockModelParams):
    validate(params)
    summary = derive_spectral(params)
    L = quotient_L(params)
    return summary, check_regime(summary, L), diag_bound_check(L, summary.kappa2, summary.kappa3)


@app.command("enumerate")
def cmd_enumerate(
    ctx: typer.Context,
    n: int = typer.Option(6, "--n", help="Number of states (1..12)."),
    k: int = typer.Option(3, "--k", help="Number of cells (1..n)."),
    output_format: str = FormatOption,
    out: Optional[Path] = OutOption,
):
    """List every partition of n states into k cells in canonical order."""
    with _handled("enumerate"):
        config = CliConfig.resolve("enumerate", _settings(ctx), output_format=output_format, out=out)
        partitions = enumerate_partitions(n, k)
        tags = [classify(p) for p in partitions] if (n, k) == (6, 3) else None
        _emit(config,
              lambda c: reports.render_enumeration(c, n, k, partitions, tags),
              reports.enumeration_document(n, k, partitions, tags))


@app.command("certify")
def cmd_certify(
    ctx: typer.Context,
    model: Path = ModelOption,
    output_format: str = FormatOption,
    out: Optional[Path] = OutOption,
    tol: Optional[float] = TolOption,
    workers: Optional[int] = WorkersOption,
):
    """Evaluate all 90 partitions and certify the gap to the relaxed benchmark."""
    with _handled("certify"):
        config = CliConfig.resolve("certify", _settings(ctx), model=model,
                                   output_format=output_format, out=out, tol=tol, workers=workers)
        params, digest = _load(model)
        report = run_certificate(params, tol=config.tol, workers=config.workers,
                                 source=str(model), digest=digest)
        _emit(config,
              lambda c: reports.render_certificate(c, report),
              reports.certificate_document(report))
    if not report.strict_gap:
        raise typer.Exit(code=EXIT_NO_GAP)


@app.command("closed-forms")
def cmd_closed_forms(
    ctx: typer.Context,
    model: Path = ModelOption,
    output_format: str = FormatOption,
    out: Optional[Path] = OutOption,
):
    """Closed-form family determinants, the diagonal bound and the family gap."""
    with _handled("closed-forms"):
        config = CliConfig.resolve("closed-forms", _settings(ctx), model=model,
                                   output_format=output_format, out=out)
        params, _ = _load(model)
        summary, _, diag_rows = _spectral(params)
        families = family_determinants(params)
        gap = family_gap_check(summary, quotient_L(params))
        _emit(config,
              lambda c: reports.render_closed_forms(c, families, diag_rows, gap),
              reports.closed_forms_document(families, diag_rows, gap))


@app.command("scan")
def cmd_scan(
    ctx: typer.Context,
    model: Path = ModelOption,
    radius: float = typer.Option(0.001, "--radius", help="Half-width of the coupling grid."),
    steps: int = typer.Option(3, "--steps", help="Grid points per coupling."),
    output_format: str = FormatOption,
    out: Optional[Path] = OutOption,
    tol: Optional[float] = TolOption,
    workers: Optional[int] = WorkersOption,
):
    """Exploratory grid scan of the couplings around a base model."""
    with _handled("scan"):
        config = CliConfig.resolve("scan", _settings(ctx), model=model,
                                   output_format=output_format, out=out, tol=tol, workers=workers)
        params, _ = _load(model)
        summary = scan_grid(params, radius, steps, tol=config.tol, workers=config.workers)
        _emit(config,
              lambda c: reports.render_scan(c, summary),
              reports.scan_document(summary))


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Run the app and return its exit status; usage errors map to EXIT_INVALID."""
    try:
        code = app(args=argv, prog_name="lumpgap", standalone_mode=False)
    except USAGE_ERRORS as e:
        e.show()
        return EXIT_INVALID
    except ABORTS:
        err_console.print("\nAborted.")
        return EXIT_INVALID
    return code if isinstance(code, int) else EXIT_OK
