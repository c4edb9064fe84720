"""The verification suites."""

import logging
import math
import random
from collections.abc import Iterable
from fractions import Fraction
from functools import lru_cache

from lfree.bounds import DESIGNATED_BOUND, best_bound, fmax_lower_exponent, fmax_upper_rate
from lfree.equation import collapse_variables
from lfree.errors import DomainError
from lfree.extremal import (
    MuStarMode,
    ceil_div,
    mu_cases,
    mu_formula,
    mu_star,
    mu_star_set,
    small_elements_bound,
)
from lfree.grammar import format_equation, format_triple
from lfree.hypergraph import IndependenceSearch, mask_members
from lfree.link import graph_GM, gm1_matching, induced_matching_instance, link_hypergraph
from lfree.models import (
    CanonicalTriple,
    CellOutcome,
    CellStatus,
    IntegerSet,
    LinearEquation,
    RateExpr,
)
from lfree.oracle import (
    brute_counts,
    brute_max_matching,
    brute_mu,
    brute_mu_star,
    free_elements,
)
from lfree.solutions import is_free, solution_hypergraph
from lfree.verify.base import BaseSuite

logger = logging.getLogger(__name__)

# Equations checked exhaustively against the whole-set cap.
CAP_EQUATIONS = ((1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 3, 2))

SCALED_EQUATIONS = ((1, 1, -1), (2, 1, -1), (2, 2, -1))

COLLAPSE_CHAINS = (
    ((1, 1, 1, -1), ((0, 1),)),
    ((1, 1, 1, 1, -2), ((0, 1), (0, 1))),
)


def _triple(cell: dict[str, int]) -> CanonicalTriple:
    return CanonicalTriple(cell["p"], cell["q"], cell["r"])


def _pass(cell: dict[str, int], note: str = "") -> CellOutcome:
    return CellOutcome(cell, CellStatus.PASS, note=note)


def _fail(cell: dict[str, int], note: str, **witness) -> CellOutcome:
    return CellOutcome(cell, CellStatus.FAIL, witness=witness, note=note)


def _free_triples(cells: Iterable[dict[str, int]]) -> list[dict[str, int]]:
    return [c for c in cells if math.gcd(c["p"], c["q"], c["r"]) == 1]


@lru_cache(maxsize=32)
def _maximal_free_sets(coeffs: tuple[int, ...], n: int) -> tuple[int, ...]:
    hypergraph = solution_hypergraph(LinearEquation(coeffs), n)
    search = IndependenceSearch((1 << n) - 1, hypergraph.edge_masks())
    return tuple(search.maximal_sets())


def _greedy_free(
    equation: LinearEquation, rng: random.Random, pool: list[int], start: list[int], n: int
) -> list[int]:
    """Extend ``start`` by the elements of ``pool`` in random order while staying L-free."""
    chosen = list(start)
    order = list(pool)
    rng.shuffle(order)
    for v in order:
        if is_free(equation, IntegerSet.from_members(n, chosen + [v])):
            chosen.append(v)
    return sorted(chosen)


class Mu4Suite(BaseSuite):
    """Closed-form mu against exhaustive search."""

    required_axes = ("p", "q", "r", "n")

    @property
    def name(self) -> str:
        return "mu4"

    @property
    def default_grid(self) -> str:
        return (
            "p=1,q=1,r=1,n=1..40;p=2..3,q=1,r=1,n=1..35;"
            "p=3,q=3,r=2,n=1..30;p=63,q=42,r=41,n=1..25"
        )

    def check(self, cell: dict[str, int]) -> CellOutcome:
        triple, n = _triple(cell), cell["n"]
        cases = {case.value: value for case, value in mu_cases(triple, n).items()}
        if len(set(cases.values())) > 1:
            return _fail(cell, "closed-form cases disagree", equation=str(triple), cases=cases)
        formula = mu_formula(triple, n)
        if formula is None:
            return CellOutcome(cell, CellStatus.SKIP, note="no closed form applies")
        result = brute_mu(triple.equation(), n, cap=self.oracle.cap_mu)
        if result.value != formula.value:
            return _fail(
                cell,
                "closed form differs from exhaustive search",
                equation=format_triple(triple),
                n=n,
                formula=formula.value,
                brute=result.value,
                set=result.witnesses[0].to_list() if result.witnesses else [],
            )
        return _pass(cell, f"case {formula.case.value}")


class Gm1Suite(BaseSuite):
    """The explicit G_M matching against its size formula and a maximum matching."""

    required_axes = ("p", "q", "r", "M")

    @property
    def name(self) -> str:
        return "gm1"

    @property
    def default_grid(self) -> str:
        return "p=1..8,q=1..p,r=1..q,M=1..300"

    def select(self, cells: Iterable[dict[str, int]]) -> list[dict[str, int]]:
        return [c for c in _free_triples(cells) if c["M"] % math.gcd(c["p"], c["q"]) == 0]

    def check(self, cell: dict[str, int]) -> CellOutcome:
        triple, m = _triple(cell), cell["M"]
        matching = gm1_matching(triple, m)
        graph = graph_GM(triple, m)
        edges = set(graph.edges)
        for x, y in matching.pairs:
            edge = (x,) if x == y else (x, y)
            if edge not in edges:
                return _fail(cell, "pair is not an edge of G_M", pair=[x, y])
        maximum = brute_max_matching(graph)
        if maximum < matching.size:
            return _fail(cell, "maximum matching below construction", maximum=maximum)
        return _pass(cell, f"size {matching.size}, maximum {maximum}")


class CapSuite(BaseSuite):
    """Every L-free S obeys the cap given by its largest t-divisible element."""

    required_axes = ("eq", "n")

    @property
    def name(self) -> str:
        return "mainL1"

    @property
    def default_grid(self) -> str:
        return f"eq=1..{len(CAP_EQUATIONS)},n=1..14"

    def check(self, cell: dict[str, int]) -> CellOutcome:
        index, n = cell["eq"], cell["n"]
        if not 1 <= index <= len(CAP_EQUATIONS):
            raise DomainError(f"eq must be in 1..{len(CAP_EQUATIONS)}, got {index}")
        triple = CanonicalTriple(*CAP_EQUATIONS[index - 1])
        t = triple.t
        hypergraph = solution_hypergraph(triple.equation(), n)
        search = IndependenceSearch((1 << n) - 1, hypergraph.edge_masks())
        checked = 0
        for mask in range(1 << n):
            if not search.is_independent(mask):
                continue
            checked += 1
            members = mask_members(mask)
            divisible = [v for v in members if v % t == 0]
            if not divisible:
                cap = ceil_div((t - 1) * n, t)
                if len(members) > cap:
                    return _fail(cell, "no t-divisible element", set=members, cap=cap)
                continue
            cap = small_elements_bound(triple, divisible[-1], n)
            if len(members) > cap:
                return _fail(cell, "whole-set cap exceeded", set=members, M=divisible[-1], cap=cap)
            for m in divisible:
                cap = small_elements_bound(triple, m)
                top = ceil_div(triple.r * m, triple.q)
                if sum(1 for v in members if v < top) > cap:
                    return _fail(cell, "small-element cap exceeded", set=members, M=m, cap=cap)
        return _pass(cell, f"{checked} free sets of {format_triple(triple)}")


class LinkCorrespondenceSuite(BaseSuite):
    """Maximal free sets as maximal independent sets of link hypergraphs.

    Cells without p, q, r take a random maximal x+y=z-free T, split it as S and T - S,
    and check that T - S is maximal independent in L_S[B]. Cells with p, q, r check that
    the link hypergraph on the large part of a random free B has exactly one maximal
    independent set.
    """

    required_axes = ("n", "trial")

    @property
    def name(self) -> str:
        return "link-correspondence"

    @property
    def default_grid(self) -> str:
        return (
            "n=12,trial=1..200;"
            "p=1,q=1,r=1,n=8..24,trial=1..5;"
            "p=2,q=2,r=1,n=8..24,trial=1..5;"
            "p=3,q=3,r=2,n=8..24,trial=1..5"
        )

    def check(self, cell: dict[str, int]) -> CellOutcome:
        if "p" in cell:
            return self._single_mis(cell)
        return self._maximal_split(cell)

    def _maximal_split(self, cell: dict[str, int]) -> CellOutcome:
        n, trial = cell["n"], cell["trial"]
        equation = LinearEquation((1, 1, -1))
        rng = random.Random(f"link-{n}-{trial}")
        maximal = _maximal_free_sets(equation.coeffs, n)
        t_members = mask_members(rng.choice(maximal))
        s = [v for v in t_members if rng.random() < 0.5]
        rest = [v for v in t_members if v not in s]
        outside = [v for v in range(1, n + 1) if v not in t_members]
        b = _greedy_free(equation, rng, outside, rest, n)

        s_set, b_set = IntegerSet.from_members(n, s), IntegerSet.from_members(n, b)
        link = link_hypergraph(equation, s_set, b_set)
        search = IndependenceSearch(b_set.mask, link.edge_masks())
        independent = IntegerSet.from_members(n, rest)
        if not search.is_maximal(independent.mask):
            return _fail(cell, "T - S is not maximal in L_S[B]", T=t_members, S=s, B=b)
        return _pass(cell)

    def _single_mis(self, cell: dict[str, int]) -> CellOutcome:
        triple, n, trial = _triple(cell), cell["n"], cell["trial"]
        p, q, r, t = triple.p, triple.q, triple.r, triple.t
        equation = triple.equation()
        rng = random.Random(f"single-{p}-{q}-{r}-{n}-{trial}")
        everything = list(range(1, n + 1))
        b = _greedy_free(equation, rng, everything, [], n)
        m = max((v for v in b if v % t == 0), default=0)
        u = max(r * m // q, r * n // (2 * q))
        b_large = [v for v in b if v > u]
        s1 = _greedy_free(equation, rng, [v for v in everything if v not in b], [], n)
        s1 = [v for v in s1 if rng.random() < 0.5]
        s12 = _greedy_free(equation, rng, [v for v in b if v <= u], s1, n)

        link = link_hypergraph(
            equation, IntegerSet.from_members(n, s12), IntegerSet.from_members(n, b_large)
        )
        count = IndependenceSearch(
            IntegerSet.from_members(n, b_large).mask, link.edge_masks()
        ).count_maximal()
        if count != 1:
            return _fail(cell, "link hypergraph has several maximal sets", B=b, S=s12, mis=count)
        return _pass(cell, f"M={m}, u={u}")


class ScalingSuite(BaseSuite):
    """Scaling an equation keeps every count; collapsing variables never lowers mu."""

    required_axes = ("n",)

    @property
    def name(self) -> str:
        return "mu6-mu1"

    @property
    def default_grid(self) -> str:
        return (
            f"scale=1..{len(SCALED_EQUATIONS)},c=2..3,n=1..16;"
            f"chain=1..{len(COLLAPSE_CHAINS)},n=1..18"
        )

    def check(self, cell: dict[str, int]) -> CellOutcome:
        if "scale" in cell:
            return self._scaling(cell)
        if "chain" in cell:
            return self._collapse(cell)
        raise DomainError("cells need a scale or a chain axis")

    def _scaling(self, cell: dict[str, int]) -> CellOutcome:
        n = cell["n"]
        equation = LinearEquation(SCALED_EQUATIONS[cell["scale"] - 1])
        scaled = equation.scaled(cell["c"])
        values = {}
        for label, eq in (("base", equation), ("scaled", scaled)):
            values[label] = (
                brute_mu(eq, n, cap=self.oracle.cap_mu).value,
                brute_counts(eq, n, "free", cap=self.oracle.cap_free),
                brute_counts(eq, n, "maximal", cap=self.oracle.cap_maximal),
            )
        if values["base"] != values["scaled"]:
            return _fail(
                cell,
                "scaling changed mu, f or f_max",
                equation=format_equation(equation),
                base=list(values["base"]),
                scaled=list(values["scaled"]),
            )
        return _pass(cell)

    def _collapse(self, cell: dict[str, int]) -> CellOutcome:
        n = cell["n"]
        coeffs, steps = COLLAPSE_CHAINS[cell["chain"] - 1]
        equation = LinearEquation(coeffs)
        previous = brute_mu(equation, n, cap=self.oracle.cap_mu).value
        for i, j in steps:
            collapsed = collapse_variables(equation, i, j)
            value = brute_mu(collapsed, n, cap=self.oracle.cap_mu).value
            if value < previous:
                return _fail(
                    cell,
                    "collapsing variables lowered mu",
                    before=format_equation(equation),
                    after=format_equation(collapsed),
                    mu_before=previous,
                    mu_after=value,
                )
            equation, previous = collapsed, value
        return _pass(cell)


class FmaxLowerSuite(BaseSuite):
    """Induced matchings behind the lower bound for qx + qy = rz."""

    required_axes = ("q", "r", "n")

    @property
    def name(self) -> str:
        return "fmax-lower"

    @property
    def default_grid(self) -> str:
        return "q=2,r=1,n=8..24;q=3,r=2,n=8..24;q=5,r=2,n=8..24"

    def check(self, cell: dict[str, int]) -> CellOutcome:
        q, r, n = cell["q"], cell["r"], cell["n"]
        try:
            _, _, matching = induced_matching_instance(q, r, n)
        except DomainError as e:
            if e.clause == "M exists":
                return CellOutcome(cell, CellStatus.SKIP, note=str(e))
            raise
        exponent = fmax_lower_exponent(q, r, n)
        if n > self.oracle.cap_maximal:
            return _pass(cell, f"|E|={matching.size}, f_max not counted")
        count = brute_counts(LinearEquation((q, q, -r)), n, "maximal", cap=self.oracle.cap_maximal)
        if count < 2 ** max(exponent, 0):
            return _fail(cell, "f_max below the lower bound", fmax=count, exponent=exponent)
        return _pass(cell, f"|E|={matching.size}, f_max={count}")


class MuStarSuite(BaseSuite):
    """Elements in no solution: exhaustive count against the explicit set.

    The explicit set is always solution-free, so a smaller exhaustive count fails the
    cell. The two only have to agree for large n; extra free elements below the
    threshold, and a ceiling expression that differs from the set size, are flagged.
    """

    required_axes = ("p", "q", "r", "n")

    @property
    def name(self) -> str:
        return "mu-star"

    @property
    def default_grid(self) -> str:
        return "p=2,q=2,r=1,n=6..30;p=3,q=3,r=2,n=11..30"

    def check(self, cell: dict[str, int]) -> CellOutcome:
        triple, n = _triple(cell), cell["n"]
        exact = mu_star(triple, n, MuStarMode.EXACT_SET)
        formula = mu_star(triple, n, MuStarMode.FORMULA)
        brute = brute_mu_star(triple.equation(), n, cap=self.oracle.cap_mu_star)
        if brute < exact:
            return _fail(cell, "explicit set meets a solution", brute=brute, exact=exact)
        notes = []
        witness = {"brute": brute, "exact_set": exact, "formula": formula}
        if brute > exact:
            extra = free_elements(triple.equation(), n) - mu_star_set(triple, n)
            witness["extra_free"] = extra.to_list()
            notes.append("free elements outside the explicit set")
        if formula != exact:
            notes.append("ceiling expression differs from the set size")
        if notes:
            return CellOutcome(cell, CellStatus.FLAG, witness=witness, note="; ".join(notes))
        return _pass(cell)


class RatesSuite(BaseSuite):
    """The constant C and the choice of the best upper bound."""

    required_axes = ("p", "q", "r")

    @property
    def name(self) -> str:
        return "rates"

    @property
    def default_grid(self) -> str:
        return "p=1..9,q=1..p,r=1..q"

    def select(self, cells: Iterable[dict[str, int]]) -> list[dict[str, int]]:
        return _free_triples(cells)

    def check(self, cell: dict[str, int]) -> CellOutcome:
        triple = _triple(cell)
        p, q = triple.p, triple.q
        c, rate = fmax_upper_rate(triple)
        if p % q == 0 and c != 1 - Fraction(q, p + q):
            return _fail(cell, "C differs from 1 - q/(p+q)", C=str(c))
        if triple.as_tuple() == (2, 2, 1) and rate != RateExpr(Fraction(1, 4)):
            return _fail(cell, "rate of 2x+2y=z is not 1/4", rate=str(rate))
        if p < 2:
            return _pass(cell, f"C={c}")

        report = best_bound(triple)
        if report.case_label is None:
            return CellOutcome(cell, CellStatus.SKIP, note="no case label applies")
        designated = report.entry(DESIGNATED_BOUND[report.case_label])
        if designated is None:
            return _fail(cell, f"case {report.case_label} names a bound that does not apply")
        if designated.rate.compare(report.best.rate) != 0:
            return _fail(
                cell,
                f"case {report.case_label} does not pick the smallest rate",
                designated=designated.name,
                designated_rate=str(designated.rate),
                best=report.best.name,
                best_rate=str(report.best.rate),
            )
        return _pass(cell, f"case {report.case_label}, best {report.best.name}")


ALL_SUITES = (
    Mu4Suite,
    Gm1Suite,
    CapSuite,
    LinkCorrespondenceSuite,
    ScalingSuite,
    FmaxLowerSuite,
    MuStarSuite,
    RatesSuite,
)
