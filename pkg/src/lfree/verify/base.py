"""Base suite interface."""

import logging
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable
from typing import Any

from lfree.config import OracleConfig
from lfree.errors import CapExceededError, DensityUnknownError, GridSpecError
from lfree.grid import GridSpec, run_ordered
from lfree.models import CellOutcome, CellStatus, VerifyReport

logger = logging.getLogger(__name__)


class BaseSuite(ABC):
    """Abstract base class for verification suites.

    A suite expands a grid into cells and checks each cell independently, so cells can
    run in separate processes.
    """

    required_axes: tuple[str, ...] = ()

    def __init__(self):
        self.oracle = OracleConfig()

    @property
    @abstractmethod
    def name(self) -> str:
        """Name used by ``lfree verify --suite``."""
        pass

    @property
    @abstractmethod
    def default_grid(self) -> str:
        """Grid used when none is given."""
        pass

    @abstractmethod
    def check(self, cell: dict[str, int]) -> CellOutcome:
        """Check one grid cell."""
        pass

    def select(self, cells: Iterable[dict[str, int]]) -> list[dict[str, int]]:
        """Cells of the grid this suite actually runs."""
        return list(cells)

    def validate(self, cell: dict[str, int]) -> None:
        missing = [axis for axis in self.required_axes if axis not in cell]
        if missing:
            raise GridSpecError(f"suite {self.name} needs axes {missing}, cell has {sorted(cell)}")

    def evaluate(self, cell: dict[str, int]) -> CellOutcome:
        """Run ``check`` and turn cap and density errors into skips."""
        try:
            return self.check(cell)
        except (CapExceededError, DensityUnknownError) as e:
            return CellOutcome(cell, CellStatus.SKIP, note=str(e))
        except Exception as e:
            logger.error(f"{self.name} {cell}: {type(e).__name__}: {e}")
            witness = {"error": str(e)}
            return CellOutcome(cell, CellStatus.FAIL, witness=witness, note=type(e).__name__)

    def run(
        self,
        grid: str | None = None,
        workers: int = 1,
        oracle: OracleConfig | None = None,
        on_result: Callable[[CellOutcome], Any] | None = None,
    ) -> VerifyReport:
        """Check every cell of the grid and collect a report in grid order."""
        text = grid or self.default_grid
        cells = self.select(GridSpec.parse(text).cells())
        for cell in cells:
            self.validate(cell)
        self.oracle = oracle or OracleConfig()

        outcomes = run_ordered(self.evaluate, cells, workers=workers, on_result=on_result)
        report = VerifyReport(suite=self.name, grid=text, cells=outcomes)
        logger.info(f"{self.name}: {report.totals}")
        return report
