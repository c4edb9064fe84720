"""lfree: solution-free sets of integers for linear equations."""

__version__ = "0.1.0"
