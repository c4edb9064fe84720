"""Grid-spec mini-language and an ordered worker pool.

A grid is one or more sub-grids separated by ``;``. A sub-grid is a comma-separated list
of axes ``name=value[,value...]`` where a value is an integer or a range ``lo..hi``
whose bounds may name an earlier axis, e.g. ``p=1..8,q=1..p,r=1..q,n=5,10,20``.
Cells are produced with the first axis outermost.
"""

import logging
import re
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, TypeVar

from lfree.errors import GridSpecError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"-?\d+")

Bound = int | str


@dataclass
class Axis:
    """One named axis; each value is a single integer or an inclusive range."""

    name: str
    values: list[tuple[Bound, Bound]] = field(default_factory=list)

    def expand(self, bound: dict[str, int]) -> list[int]:
        out: list[int] = []
        for lo, hi in self.values:
            start = bound[lo] if isinstance(lo, str) else lo
            stop = bound[hi] if isinstance(hi, str) else hi
            out.extend(range(start, stop + 1))
        return out


@dataclass
class GridSpec:
    """A parsed grid specification."""

    text: str
    subgrids: list[list[Axis]] = field(default_factory=list)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        subgrids = [_parse_subgrid(part, text) for part in text.split(";") if part.strip()]
        if not subgrids:
            raise GridSpecError(f"empty grid specification {text!r}")
        return cls(text=text, subgrids=subgrids)

    def cells(self) -> Iterator[dict[str, int]]:
        for axes in self.subgrids:
            yield from _walk(axes, {})

    def __len__(self) -> int:
        return sum(1 for _ in self.cells())


def _parse_bound(raw: str, known: list[str], text: str) -> Bound:
    raw = raw.strip()
    if _INT_RE.fullmatch(raw):
        return int(raw)
    if _NAME_RE.fullmatch(raw):
        if raw not in known:
            raise GridSpecError(f"bound {raw!r} does not name an earlier axis in {text!r}")
        return raw
    raise GridSpecError(f"cannot read value {raw!r} in {text!r}")


def _parse_value(raw: str, known: list[str], text: str) -> tuple[Bound, Bound]:
    if ".." in raw:
        lo, hi = raw.split("..", 1)
        return _parse_bound(lo, known, text), _parse_bound(hi, known, text)
    value = raw.strip()
    if not _INT_RE.fullmatch(value):
        raise GridSpecError(f"single values must be integers, got {value!r} in {text!r}")
    return int(value), int(value)


def _parse_subgrid(part: str, text: str) -> list[Axis]:
    axes: list[Axis] = []
    for token in part.split(","):
        token = token.strip()
        if not token:
            raise GridSpecError(f"empty value in {text!r}")
        if "=" in token:
            name, raw = token.split("=", 1)
            name = name.strip()
            if not _NAME_RE.fullmatch(name):
                raise GridSpecError(f"bad axis name {name!r} in {text!r}")
            if any(axis.name == name for axis in axes):
                raise GridSpecError(f"axis {name!r} repeated in {text!r}")
            known = [axis.name for axis in axes]
            axes.append(Axis(name, [_parse_value(raw, known, text)]))
        elif not axes:
            raise GridSpecError(f"value {token!r} comes before any axis name in {text!r}")
        else:
            known = [axis.name for axis in axes[:-1]]
            axes[-1].values.append(_parse_value(token, known, text))
    return axes


def _walk(axes: list[Axis], bound: dict[str, int]) -> Iterator[dict[str, int]]:
    if not axes:
        yield dict(bound)
        return
    head, rest = axes[0], axes[1:]
    for value in head.expand(bound):
        bound[head.name] = value
        yield from _walk(rest, bound)
    bound.pop(head.name, None)


def run_ordered(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: int = 1,
    on_result: Callable[[R], Any] | None = None,
) -> list[R]:
    """Apply ``fn`` to every item, in parallel when workers > 1, keeping input order."""
    items = list(items)
    results: list[R] = []
    if workers <= 1:
        for item in items:
            result = fn(item)
            results.append(result)
            if on_result is not None:
                on_result(result)
        return results

    logger.debug(f"Running {len(items)} cells on {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for result in pool.map(fn, items):
            results.append(result)
            if on_result is not None:
                on_result(result)
    return results
