"""Data models for lfree."""

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Any

from lfree.errors import DomainError


def _popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class IntegerSet:
    """A subset of [n]; bit v-1 of ``mask`` marks member v."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"universe bound must be non-negative, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise DomainError(f"members outside [1, {self.n}]")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "IntegerSet":
        """Build a set from explicit members."""
        mask = 0
        for v in members:
            if not 1 <= v <= n:
                raise DomainError(f"member {v} outside [1, {n}]")
            mask |= 1 << (v - 1)
        return cls(n, mask)

    @classmethod
    def interval(cls, n: int, lo: int, hi: int) -> "IntegerSet":
        """The set [lo, hi] intersected with [1, n]."""
        lo, hi = max(lo, 1), min(hi, n)
        if lo > hi:
            return cls(n)
        return cls(n, ((1 << (hi - lo + 1)) - 1) << (lo - 1))

    @classmethod
    def full(cls, n: int) -> "IntegerSet":
        return cls(n, (1 << n) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def __iter__(self) -> Iterator[int]:
        mask, v = self.mask, 1
        while mask:
            if mask & 1:
                yield v
            mask >>= 1
            v += 1

    def __len__(self) -> int:
        return _popcount(self.mask)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 1 <= v <= self.n and bool(self.mask >> (v - 1) & 1)

    def __or__(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(max(self.n, other.n), self.mask | other.mask)

    def __and__(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(max(self.n, other.n), self.mask & other.mask)

    def __sub__(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(self.n, self.mask & ~other.mask)

    def issubset(self, other: "IntegerSet") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "IntegerSet") -> bool:
        return self.mask & other.mask == 0

    def to_list(self) -> list[int]:
        return list(self)


@dataclass(frozen=True)
class LinearEquation:
    """The equation a1*x1 + ... + ak*xk = b over the positive integers."""

    coeffs: tuple[int, ...]
    rhs: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) < 2:
            raise DomainError(f"an equation needs at least 2 variables, got {len(self.coeffs)}")
        if any(a == 0 for a in self.coeffs):
            raise DomainError(f"zero coefficient in {self.coeffs}")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def homogeneous(self) -> bool:
        return self.rhs == 0

    @property
    def translation_invariant(self) -> bool:
        return self.rhs == 0 and sum(self.coeffs) == 0

    def evaluate(self, x: Iterable[int]) -> int:
        """Left-hand side value at x."""
        return sum(a * v for a, v in zip(self.coeffs, x, strict=True))

    def satisfied_by(self, x: tuple[int, ...]) -> bool:
        return len(x) == self.k and self.evaluate(x) == self.rhs

    def scaled(self, c: int) -> "LinearEquation":
        """The positive multiple c*L, which has the same solutions."""
        if c <= 0:
            raise DomainError(f"scale factor must be a positive integer, got {c}")
        return LinearEquation(tuple(c * a for a in self.coeffs), c * self.rhs)


@dataclass(frozen=True)
class CanonicalTriple:
    """The normalized three-variable equation px + qy = rz."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        if not (self.p >= self.q >= 1 and self.r >= 1):
            raise DomainError(f"need p >= q >= 1 and r >= 1, got ({self.p}, {self.q}, {self.r})")
        if math.gcd(self.p, self.q, self.r) != 1:
            raise DomainError(f"gcd(p, q, r) must be 1 for ({self.p}, {self.q}, {self.r})")

    @classmethod
    def reduced(cls, p: int, q: int, r: int) -> "CanonicalTriple":
        """Divide out gcd(p, q, r) and order the two left coefficients."""
        g = math.gcd(p, q, r)
        p, q, r = p // g, q // g, r // g
        return cls(max(p, q), min(p, q), r)

    @property
    def t(self) -> int:
        return math.gcd(self.p, self.q)

    @property
    def r1(self) -> int:
        return self.p // self.t

    @property
    def r2(self) -> int:
        return self.q // self.t

    @property
    def ordered(self) -> bool:
        """Whether q >= r also holds."""
        return self.q >= self.r

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def equation(self) -> LinearEquation:
        return LinearEquation((self.p, self.q, -self.r))

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


@dataclass(frozen=True)
class SolutionHypergraph:
    """Support sets of the non-trivial solutions of L inside [n]."""

    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges if len(e) == 1)

    def edge_masks(self) -> list[int]:
        return [sum(1 << (v - 1) for v in e) for e in self.edges]

    def is_independent(self, s: IntegerSet) -> bool:
        return all(m & ~s.mask for m in self.edge_masks())


@dataclass(frozen=True)
class LinkHypergraph:
    """Link hypergraph L_S[B]: vertex set B, edges are B-parts of solutions inside S and B."""

    vertices: IntegerSet
    edges: tuple[tuple[int, ...], ...] = ()
    provenance: dict[tuple[int, ...], tuple[int, ...]] = field(
        default_factory=dict, compare=False, hash=False
    )

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges if len(e) == 1)

    @property
    def is_graph(self) -> bool:
        return all(len(e) <= 2 for e in self.edges)

    def edge_masks(self) -> list[int]:
        return [sum(1 << (v - 1) for v in e) for e in self.edges]


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint pairs (x, y) with x <= y; x == y is a loop."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple(sorted((min(x, y), max(x, y)) for x, y in self.pairs))
        seen: set[int] = set()
        for x, y in pairs:
            if x in seen or y in seen:
                raise DomainError(f"pairs share a vertex near ({x}, {y})")
            seen.update((x, y))
        object.__setattr__(self, "pairs", pairs)

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def loop_count(self) -> int:
        return sum(1 for x, y in self.pairs if x == y)

    @property
    def vertices(self) -> set[int]:
        return {v for pair in self.pairs for v in pair}


@total_ordering
@dataclass(frozen=True)
class RateExpr:
    """The exponent rate lin + log3 * log2(3), compared exactly."""

    lin: Fraction = Fraction(0)
    log3: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lin", Fraction(self.lin))
        object.__setattr__(self, "log3", Fraction(self.log3))

    def compare(self, other: "RateExpr") -> int:
        """Sign of self - other, decided by comparing powers of 2 and 3."""
        a = self.lin - other.lin
        b = other.log3 - self.log3
        d = math.lcm(a.denominator, b.denominator)
        x, y = int(a * d), int(b * d)
        # sign(x - y*log2(3)) == sign(2^x - 3^y)
        lhs = 2 ** max(x, 0) * 3 ** max(-y, 0)
        rhs = 2 ** max(-x, 0) * 3 ** max(y, 0)
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, RateExpr):
            return NotImplemented
        return self.compare(other) < 0

    def __add__(self, other: "RateExpr") -> "RateExpr":
        return RateExpr(self.lin + other.lin, self.log3 + other.log3)

    def __sub__(self, other: "RateExpr") -> "RateExpr":
        return RateExpr(self.lin - other.lin, self.log3 - other.log3)

    def __mul__(self, c: Fraction | int) -> "RateExpr":
        return RateExpr(self.lin * c, self.log3 * c)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.lin) + float(self.log3) * math.log2(3)

    def __str__(self) -> str:
        if self.log3 == 0:
            return str(self.lin)
        log_part = f"{self.log3}*log2(3)"
        if self.lin == 0:
            return log_part
        return f"{self.lin}+{log_part}"


class MuCase(str, Enum):
    """Which closed form for the largest L-free set applies."""

    I = "i"  # noqa: E741
    II = "ii"
    III = "iii"


@dataclass(frozen=True)
class MuValue:
    """A closed-form value of mu together with the case that produced it."""

    value: int
    case: MuCase


@dataclass(frozen=True)
class MultivarMu:
    """Value or two-sided interval for mu of a multi-variable equation."""

    low: int
    high: int
    case: MuCase
    triple: CanonicalTriple
    partition: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def exact(self) -> bool:
        return self.low == self.high


@dataclass(frozen=True)
class MuResult:
    """Output of the brute-force maximum search."""

    value: int
    witnesses: tuple[IntegerSet, ...] = ()


@dataclass(frozen=True)
class BoundEntry:
    """One applicable upper bound on the number of maximal L-free sets."""

    name: str
    rate: RateExpr
    conditions: str = ""


@dataclass(frozen=True)
class BoundReport:
    """All applicable f_max upper-bound rates for a triple and the best of them."""

    equation: CanonicalTriple
    applicable: tuple[BoundEntry, ...]
    best: BoundEntry
    case_label: str | None = None
    mu_density: Fraction = Fraction(0)
    mu_star_density: Fraction = Fraction(0)

    def entry(self, name: str) -> BoundEntry | None:
        return next((e for e in self.applicable if e.name == name), None)


class CellStatus(str, Enum):
    """Outcome of a single verification cell."""

    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    FLAG = "flag"


@dataclass
class CellOutcome:
    """Result of one grid cell of a verification suite."""

    key: dict[str, Any]
    status: CellStatus
    witness: dict[str, Any] | None = None
    note: str = ""


@dataclass
class VerifyReport:
    """Machine-readable result of a verification suite."""

    suite: str
    grid: str
    cells: list[CellOutcome] = field(default_factory=list)

    @property
    def totals(self) -> dict[str, int]:
        counts = {status.value: 0 for status in CellStatus}
        for cell in self.cells:
            counts[cell.status.value] += 1
        counts["cells"] = len(self.cells)
        return counts

    @property
    def passed(self) -> bool:
        return all(cell.status != CellStatus.FAIL for cell in self.cells)

    def failures(self) -> list[CellOutcome]:
        return [cell for cell in self.cells if cell.status == CellStatus.FAIL]


@dataclass
class CommandResult:
    """What a CLI command computed, ready for serialization."""

    command: str
    equation: str | None = None
    inputs: dict[str, Any] = field(default_factory=dict)
    outputs: dict[str, Any] = field(default_factory=dict)
    timing: float | None = None
