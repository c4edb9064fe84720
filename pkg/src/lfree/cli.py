"""Command-line interface for lfree."""

import functools
import logging
import sys
import time
from collections.abc import Callable
from pathlib import Path

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn

from lfree import __version__
from lfree.bounds import best_bound, fmax_lower_exponent, fmax_lower_rate, fmax_upper_rate
from lfree.config import LfreeConfig
from lfree.equation import canonical_triple
from lfree.errors import (
    DomainError,
    EquationSyntaxError,
    GridSpecError,
    LfreeError,
    UnknownSuiteError,
)
from lfree.extremal import (
    MuStarMode,
    hybrid_An,
    interval_In,
    mu_formula,
    mu_formula_multivar,
    mu_star,
    residue_Tn,
)
from lfree.grammar import format_equation, parse_equation
from lfree.link import gm1_matching
from lfree.models import CommandResult, LinearEquation
from lfree.oracle import brute_counts, brute_mu
from lfree.output import render, report_outputs
from lfree.scan import GridScanner
from lfree.solutions import is_free
from lfree.verify import get_suite, get_suite_registry

logger = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)

USAGE_ERRORS = (EquationSyntaxError, GridSpecError, UnknownSuiteError)


def setup_logging(verbose: bool) -> None:
    """Configure logging with rich output on stderr."""
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True)],
    )


def common_options(f: Callable) -> Callable:
    """Options shared by every computing command."""

    @click.option(
        "-c",
        "--config",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        default=None,
        help="Path to configuration file",
    )
    @click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv"]),
        default=None,
        help="Output format (default: from configuration, json)",
    )
    @click.option(
        "--timing",
        is_flag=True,
        default=False,
        help="Include wall-clock timing in the output",
    )
    @click.option(
        "-v",
        "--verbose",
        is_flag=True,
        default=False,
        help="Enable verbose output",
    )
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        return f(*args, **kwargs)

    return wrapper


def execute(
    compute: Callable[[LfreeConfig], tuple[CommandResult, int]],
    config: Path | None,
    fmt: str | None,
    timing: bool,
    verbose: bool,
) -> None:
    """Load configuration, run a command, print its result and exit with its status."""
    setup_logging(verbose)

    try:
        cfg = LfreeConfig.load(config)
        started = time.perf_counter()
        result, status = compute(cfg)
        if timing or cfg.output.timing:
            result.timing = time.perf_counter() - started
        click.echo(render(result, fmt or cfg.output.format, indent=cfg.output.indent))
        sys.exit(status)

    except USAGE_ERRORS as e:
        err_console.print(f"[bold red]Error:[/bold red] {escape(str(e))}")
        sys.exit(2)
    except LfreeError as e:
        err_console.print(f"[bold red]Error:[/bold red] {escape(str(e))}")
        if verbose:
            err_console.print_exception()
        sys.exit(1)


def _equation(text: str) -> tuple[LinearEquation, str]:
    equation = parse_equation(text)
    return equation, format_equation(equation)


def _closed_form(equation: LinearEquation, n: int) -> tuple[int | list[int] | None, str | None]:
    """Closed-form mu (a value, or [low, high] for some multi-variable equations) and its case."""
    if equation.k == 3:
        value = mu_formula(canonical_triple(equation), n)
        if value is None:
            return None, None
        return value.value, value.case.value
    bound = mu_formula_multivar(equation, n)
    if bound is None:
        return None, None
    return (bound.low if bound.exact else [bound.low, bound.high]), bound.case.value


@click.group()
@click.version_option(version=__version__)
def main():
    """lfree - Solution-free sets of integers for linear equations."""
    pass


@main.command()
@click.option("--eq", "eq", required=True, help='Equation, e.g. "x+y=z"')
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Universe [n]")
@click.option(
    "--method",
    type=click.Choice(["formula", "brute", "both"]),
    default="both",
    help="Closed form, exhaustive search, or both",
)
@common_options
def mu(eq: str, n: int, method: str, config, fmt, timing, verbose) -> None:
    """Size of the largest L-free subset of [n]."""

    def compute(cfg: LfreeConfig) -> tuple[CommandResult, int]:
        equation, text = _equation(eq)
        outputs: dict = {}
        if method in ("formula", "both"):
            try:
                formula, case = _closed_form(equation, n)
            except DomainError:
                if method == "formula":
                    raise
                formula, case = None, None
            if formula is None and method == "formula":
                raise DomainError(f"no closed form for mu applies to {text}", clause="cases")
            outputs["formula"] = formula
            outputs["case"] = case
        if method in ("brute", "both"):
            outputs["brute"] = brute_mu(equation, n, cap=cfg.oracle.cap_mu).value
        if method == "both":
            formula = outputs["formula"]
            if isinstance(formula, list):
                outputs["agree"] = formula[0] <= outputs["brute"] <= formula[1]
            else:
                outputs["agree"] = None if formula is None else formula == outputs["brute"]
            if outputs["agree"] is False:
                logger.warning(f"formula and brute disagree for {text}")
        inputs = {"n": n, "method": method}
        return CommandResult("mu", text, inputs, outputs), 0

    execute(compute, config, fmt, timing, verbose)


@main.command()
@click.option("--eq", "eq", required=True, help='Equation, e.g. "x+y=z"')
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Universe [n]")
@click.option(
    "--what",
    type=click.Choice(["free", "maximal"]),
    default="free",
    help="Count L-free or maximal L-free subsets",
)
@common_options
def count(eq: str, n: int, what: str, config, fmt, timing, verbose) -> None:
    """Number of L-free (or maximal L-free) subsets of [n]."""

    def compute(cfg: LfreeConfig) -> tuple[CommandResult, int]:
        equation, text = _equation(eq)
        cap = cfg.oracle.cap_for(what)
        total = brute_counts(equation, n, what, cap=cap)
        return CommandResult("count", text, {"n": n, "what": what}, {"count": total}), 0

    execute(compute, config, fmt, timing, verbose)


@main.command()
@click.option("--eq", "eq", required=True, help='Three-variable equation, e.g. "2x+y=z"')
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Universe [n]")
@click.option(
    "--set",
    "set_name",
    type=click.Choice(["In", "Tn", "An"]),
    default="In",
    help="Interval, residue or hybrid construction",
)
@common_options
def extremal(eq: str, n: int, set_name: str, config, fmt, timing, verbose) -> None:
    """Build one of the candidate extremal sets."""

    def compute(cfg: LfreeConfig) -> tuple[CommandResult, int]:
        equation, text = _equation(eq)
        triple = canonical_triple(equation)
        if set_name == "An":
            if triple.as_tuple() != (3, 2, 2):
                raise DomainError(f"A_n is defined for 3x+2y=2z, not {triple}", clause="(3,2,2)")
            members = hybrid_An(n)
        elif set_name == "Tn":
            members = residue_Tn(triple, n)
        else:
            members = interval_In(triple, n)
        outputs = {
            "set": members.to_list(),
            "size": len(members),
            "free": is_free(triple.equation(), members),
        }
        return CommandResult("extremal", text, {"n": n, "set": set_name}, outputs), 0

    execute(compute, config, fmt, timing, verbose)


@main.command()
@click.option("--eq", "eq", required=True, help='Three-variable equation, e.g. "x+y=z"')
@click.option("--M", "m", type=int, required=True, help="The t-divisible element M")
@common_options
def matching(eq: str, m: int, config, fmt, timing, verbose) -> None:
    """The explicit matching in G_M."""

    def compute(cfg: LfreeConfig) -> tuple[CommandResult, int]:
        equation, text = _equation(eq)
        built = gm1_matching(canonical_triple(equation), m)
        outputs = {
            "size": built.size,
            "pairs": [list(pair) for pair in built.pairs],
            "loops": built.loop_count,
        }
        return CommandResult("matching", text, {"M": m}, outputs), 0

    execute(compute, config, fmt, timing, verbose)


@main.command()
@click.option("--eq", "eq", required=True, help='Three-variable equation, e.g. "2x+2y=z"')
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Optional universe [n]")
@common_options
def bounds(eq: str, n: int | None, config, fmt, timing, verbose) -> None:
    """Rates of the upper bounds on maximal L-free sets and the best of them."""

    def compute(cfg: LfreeConfig) -> tuple[CommandResult, int]:
        equation, text = _equation(eq)
        triple = canonical_triple(equation)
        c, rate = fmax_upper_rate(triple)
        report = best_bound(triple)
        outputs = {
            "C": c,
            "rate": rate,
            "best": report.best.name,
            "case": report.case_label,
            "lower_rate": fmax_lower_rate(triple),
            "applicable": {entry.name: entry.rate for entry in report.applicable},
            "mu_density": report.mu_density,
            "mu_star_density": report.mu_star_density,
        }
        inputs: dict = {}
        if n is not None:
            inputs["n"] = n
            outputs["mu_star"] = mu_star(triple, n, MuStarMode.EXACT_SET)
            outputs["mu_star_formula"] = mu_star(triple, n, MuStarMode.FORMULA)
            if triple.p == triple.q > triple.r:
                outputs["lower_exponent"] = fmax_lower_exponent(triple.q, triple.r, n)
        return CommandResult("bounds", text, inputs, outputs), 0

    execute(compute, config, fmt, timing, verbose)


@main.command()
@click.option(
    "--suite",
    required=True,
    help="Suite name: " + ", ".join(get_suite_registry().names),
)
@click.option("--grid", default=None, help="Grid spec, e.g. p=1..8,q=1..p,r=1..q,M=1..300")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes")
@common_options
def verify(suite: str, grid: str | None, workers: int | None, config, fmt, timing, verbose) -> None:
    """Run a verification suite; exits 1 when any cell fails."""

    def compute(cfg: LfreeConfig) -> tuple[CommandResult, int]:
        battery = get_suite(suite)
        spec = grid or cfg.verify.grids.get(suite)
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            console=err_console,
            transient=True,
            disable=not err_console.is_terminal,
        ) as progress:
            task = progress.add_task(f"Verifying {suite}...", total=None)
            report = battery.run(
                spec,
                workers=workers or cfg.oracle.workers,
                oracle=cfg.oracle,
                on_result=lambda _: progress.advance(task),
            )
        inputs = {"suite": suite, "grid": report.grid}
        result = CommandResult("verify", None, inputs, report_outputs(report))
        return result, 0 if report.passed else 1

    execute(compute, config, fmt, timing, verbose)


@main.command()
@click.option("--p-max", type=click.IntRange(min=1), default=None, help="Largest p")
@click.option("--q-max", type=click.IntRange(min=1), default=None, help="Largest q")
@click.option("--r-max", type=click.IntRange(min=1), default=None, help="Largest r")
@click.option("--n-list", default=None, help="Comma-separated n values, e.g. 10,15,20")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="CSV output path (default: scan.csv)",
)
@common_options
def scan(p_max, q_max, r_max, n_list, out, config, fmt, timing, verbose) -> None:
    """Scan a (p, q, r, n) grid and write a CSV report."""

    def compute(cfg: LfreeConfig) -> tuple[CommandResult, int]:
        if n_list is not None:
            try:
                cfg.scan.n_list = [int(v) for v in n_list.split(",") if v.strip()]
            except ValueError as e:
                raise GridSpecError(f"--n-list must be comma-separated integers: {n_list}") from e
        scanner = GridScanner(cfg, err_console)
        path = out or cfg.scan.out
        rows = scanner.run(
            p_max or cfg.scan.p_max,
            q_max or cfg.scan.q_max,
            r_max or cfg.scan.r_max,
            cfg.scan.n_list,
            path,
        )
        skipped = sum(1 for row in rows if row["brute_mu"] == "skip")
        gaps = sum(1 for row in rows if row["flag_extremal_gap"] == "true")
        outputs = {"out": str(path), "rows": len(rows), "skipped": skipped, "gaps": gaps}
        inputs = {
            "p_max": p_max or cfg.scan.p_max,
            "q_max": q_max or cfg.scan.q_max,
            "r_max": r_max or cfg.scan.r_max,
            "n_list": cfg.scan.n_list,
        }
        return CommandResult("scan", None, inputs, outputs), 0

    execute(compute, config, fmt, timing, verbose)


@main.command()
@click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    default=Path("lfree.yaml"),
    help="Output path for configuration file",
)
@click.option(
    "--force",
    is_flag=True,
    default=False,
    help="Overwrite existing configuration file",
)
def init(output: Path, force: bool) -> None:
    """Initialize a new lfree configuration file."""
    if output.exists() and not force:
        err_console.print(f"[yellow]Configuration file already exists: {output}[/yellow]")
        err_console.print("Use --force to overwrite")
        sys.exit(1)

    config = LfreeConfig()
    config.save(output)

    console.print(f"[green]OK[/green] Created configuration file: {output}")
    console.print("\nEdit this file to change oracle caps and default grids, then run:")
    console.print("  [cyan]lfree verify --suite mu4[/cyan]")


if __name__ == "__main__":
    main()
