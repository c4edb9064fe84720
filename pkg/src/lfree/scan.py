"""Parameter-grid scan comparing mu and f_max with the known constructions and rates."""

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn

from lfree.bounds import conjectured_rate, fmax_upper_rate
from lfree.config import LfreeConfig
from lfree.errors import CapExceededError
from lfree.extremal import interval_In, mu_formula, residue_Tn
from lfree.grid import run_ordered
from lfree.models import CanonicalTriple
from lfree.oracle import brute_counts, brute_mu

logger = logging.getLogger(__name__)

COLUMNS = [
    "p",
    "q",
    "r",
    "n",
    "In",
    "Tn",
    "brute_mu",
    "formula_mu",
    "flag_extremal_gap",
    "fmax",
    "log2_fmax_per_n",
    "conjectured_rate",
    "upper_rate",
]

SKIP = "skip"


@dataclass(frozen=True)
class ScanCell:
    """One (p, q, r, n) cell with the oracle caps it runs under."""

    p: int
    q: int
    r: int
    n: int
    cap_mu: int
    cap_maximal: int


def scan_cell(cell: ScanCell) -> dict[str, Any]:
    """Compute one CSV row."""
    triple = CanonicalTriple(cell.p, cell.q, cell.r)
    n = cell.n
    size_in = len(interval_In(triple, n))
    size_tn = len(residue_Tn(triple, n))
    row: dict[str, Any] = {name: "" for name in COLUMNS}
    row.update(p=cell.p, q=cell.q, r=cell.r, n=n, In=size_in, Tn=size_tn)

    try:
        mu = brute_mu(triple.equation(), n, cap=cell.cap_mu).value
        row["brute_mu"] = mu
        row["flag_extremal_gap"] = str(mu > max(size_in, size_tn)).lower()
    except CapExceededError:
        row["brute_mu"] = SKIP
        row["flag_extremal_gap"] = SKIP

    formula = mu_formula(triple, n)
    if formula is not None:
        row["formula_mu"] = formula.value

    _, rate = fmax_upper_rate(triple)
    row["upper_rate"] = str(rate)
    if cell.p == cell.q > cell.r:
        row["conjectured_rate"] = str(conjectured_rate(cell.q, cell.r))
        try:
            fmax = brute_counts(triple.equation(), n, "maximal", cap=cell.cap_maximal)
            row["fmax"] = fmax
            row["log2_fmax_per_n"] = f"{math.log2(fmax) / n:.6f}"
        except CapExceededError:
            row["fmax"] = SKIP
            row["log2_fmax_per_n"] = SKIP
    return row


def scan_cells(
    p_max: int, q_max: int, r_max: int, n_list: list[int], config: LfreeConfig
) -> list[ScanCell]:
    """Cells with p >= q >= r and gcd(p, q, r) = 1, in grid order."""
    cells: list[ScanCell] = []
    for p in range(1, p_max + 1):
        for q in range(1, min(p, q_max) + 1):
            for r in range(1, min(q, r_max) + 1):
                if math.gcd(p, q, r) != 1:
                    continue
                for n in n_list:
                    cells.append(
                        ScanCell(p, q, r, n, config.oracle.cap_mu, config.oracle.cap_maximal)
                    )
    return cells


class GridScanner:
    """Runs a scan grid and writes the CSV report."""

    def __init__(self, config: LfreeConfig, console: Console | None = None):
        self.config = config
        self.console = console or Console(stderr=True)

    def run(
        self,
        p_max: int,
        q_max: int,
        r_max: int,
        n_list: list[int],
        out_path: Path,
    ) -> list[dict[str, Any]]:
        """Scan every cell and write one row per cell to ``out_path``."""
        cells = scan_cells(p_max, q_max, r_max, n_list, self.config)
        logger.info(f"Scanning {len(cells)} cells into {out_path}")

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            console=self.console,
            transient=True,
            disable=not self.console.is_terminal,
        ) as progress:
            task = progress.add_task("Scanning...", total=len(cells))
            rows = run_ordered(
                scan_cell,
                cells,
                workers=self.config.oracle.workers,
                on_result=lambda _: progress.advance(task),
            )

        write_rows(rows, out_path)
        return rows


def write_rows(rows: list[dict[str, Any]], out_path: Path) -> None:
    """Write scan rows as CSV with a header row."""
    with open(out_path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def scan_grid(
    p_max: int,
    q_max: int,
    r_max: int,
    n_list: list[int],
    out_path: Path,
    config: LfreeConfig | None = None,
) -> list[dict[str, Any]]:
    """Scan a parameter grid and write the CSV report."""
    scanner = GridScanner(config or LfreeConfig())
    return scanner.run(p_max, q_max, r_max, n_list, Path(out_path))
