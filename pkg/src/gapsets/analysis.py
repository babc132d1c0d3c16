"""Sequence laws satisfied by the gapset counts.

Let n_g be the number of gapsets of genus g and n'_g the number of
those with depth at most 3.  Checked here:

* the depth <= 2 slice counts are exactly Fibonacci: F_{g+1}
* 2 F_g <= n'_g <= T_{g+1} for g >= 3 (Fibonacci below, tribonacci
  above, both consequences of the growth-map sandwich), with the
  sharper constants 7.8 F_g and 0.007 T_{g+1} from g = 58 on
* the ratio n'_{g+1} / n_g stays above ~1.38; its minimum over the
  range enumerable at desk scale sits at genus 18

`REFERENCE_DEPTH3_COUNTS` pins n'_g for g <= 60.  The test suite
recomputes the head of the table by enumeration (through genus 35);
whenever an enumerated value and a reference value both exist they are
required to agree, and the reference tail only feeds the asymptotic
checks, never replaces an enumeration.

Ratios are kept as exact `Fraction`s; rendering to 7 significant digits
happens only at the formatting edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import Gapset
from .tree import CountTable, EnumFilter, count, iter_subtree

__all__ = [
    "fibonacci",
    "tribonacci",
    "REFERENCE_DEPTH3_COUNTS",
    "FibonacciReport",
    "fibonacci_report",
    "TribonacciReport",
    "tribonacci_report",
    "RatioReport",
    "ratio_report",
    "SubtreeReport",
    "subtree_levels",
    "format_ratio",
]

_SEQ_LIMIT = 90

# n'_g (depth <= 3 counts) for genus 0..60.  Genus <= 35 is reproduced
# by the enumeration engines in the test suite; the tail anchors the
# asymptotic bound checks, which are far beyond desk-scale enumeration.
REFERENCE_DEPTH3_COUNTS = (
    1, 1, 2, 4, 6, 11, 20, 33, 57, 99,
    168, 287, 487, 824, 1395, 2351, 3954, 6636, 11116, 18593,
    31042, 51780, 86223, 143317, 237936, 394532, 653420, 1080981, 1786328, 2948836,
    4863266, 8013802, 13194529, 21707242, 35684639, 58618136, 96221845, 157840886, 258749944, 423906805,
    694076610, 1135816798, 1857750672, 3037078893, 4962738376, 8105674930, 13233250642, 21595419304, 35227607540, 57443335681,
    93635242237, 152577300884, 248541429293, 404736945777, 658898299876, 1072361202701, 1744802234628, 2838171714880, 4615547228454, 7504199621406,
    12197944701688,
)


@lru_cache(maxsize=1)
def _fib_table():
    t = [0, 1]
    while len(t) <= _SEQ_LIMIT:
        t.append(t[-1] + t[-2])
    return tuple(t)


@lru_cache(maxsize=1)
def _trib_table():
    t = [0, 1, 1]
    while len(t) <= _SEQ_LIMIT:
        t.append(t[-1] + t[-2] + t[-3])
    return tuple(t)


def fibonacci(n: int) -> int:
    """F_n with F_1 = F_2 = 1; domain 0 <= n <= 90."""
    if not 0 <= n <= _SEQ_LIMIT:
        raise ValueError(f"fibonacci index out of range 0..{_SEQ_LIMIT}: {n}")
    return _fib_table()[n]


def tribonacci(n: int) -> int:
    """T_n with T_0 = 0, T_1 = T_2 = 1; domain 0 <= n <= 90."""
    if not 0 <= n <= _SEQ_LIMIT:
        raise ValueError(f"tribonacci index out of range 0..{_SEQ_LIMIT}: {n}")
    return _trib_table()[n]


def format_ratio(r: Fraction) -> str:
    """Exact ratio rendered to 7 significant digits."""
    return f"{float(r):.7g}"


@dataclass(frozen=True)
class FibonacciRow:
    genus: int
    counted: int
    expected: int  # F_{genus + 1}

    @property
    def exact(self) -> bool:
        return self.counted == self.expected


@dataclass
class FibonacciReport:
    rows: list[FibonacciRow]

    @property
    def ok(self) -> bool:
        return all(r.exact for r in self.rows)


def fibonacci_report(max_genus: int, *, workers: int = 1, engine: str = "auto") -> FibonacciReport:
    """Enumerated depth <= 2 counts against F_{g+1}, per genus."""
    tbl = count(EnumFilter(max_genus=max_genus, depth_le=2), workers=workers, engine=engine)
    rows = [
        FibonacciRow(g, tbl.total(g), fibonacci(g + 1)) for g in range(max_genus + 1)
    ]
    return FibonacciReport(rows)


@dataclass(frozen=True)
class TribonacciRow:
    genus: int
    n_prime: int
    lower: int  # 2 F_g
    upper: int  # T_{g+1}
    agree: bool  # enumerated value (when given) matches the reference
    strengthened: bool | None  # 7.8 F_g <= n' <= 0.007 T_{g+1}, tested from g = 58

    @property
    def within(self) -> bool:
        return self.lower <= self.n_prime <= self.upper


@dataclass
class TribonacciReport:
    rows: list[TribonacciRow]

    @property
    def ok(self) -> bool:
        return all(r.within and r.agree and r.strengthened is not False for r in self.rows)


def tribonacci_report(max_genus: int = 60, counts: CountTable | None = None) -> TribonacciReport:
    """Bounds 2 F_g <= n'_g <= T_{g+1} on the reference counts, g >= 3.

    ``counts`` may supply an enumerated depth <= 3 table; its rows must
    then agree with the reference values.  The sharper constants are
    checked (exactly, in integers) for rows with g >= 58.
    """
    if not 3 <= max_genus <= 60:
        raise ValueError("tribonacci_report covers 3 <= max_genus <= 60")
    rows = []
    for g in range(3, max_genus + 1):
        n = REFERENCE_DEPTH3_COUNTS[g]
        agree = True
        if counts is not None and g <= counts.max_genus:
            agree = counts.total(g) == n
        strengthened = None
        if g >= 58:
            # 7.8 F <= n' <= 0.007 T without floats: 78 F <= 10 n', 1000 n' <= 7 T
            strengthened = 78 * fibonacci(g) <= 10 * n and 1000 * n <= 7 * tribonacci(g + 1)
        rows.append(TribonacciRow(g, n, 2 * fibonacci(g), tribonacci(g + 1), agree, strengthened))
    return TribonacciReport(rows)


@dataclass(frozen=True)
class RatioRow:
    genus: int
    n_g: int
    n_prime_next: int
    ratio: Fraction


@dataclass
class RatioReport:
    rows: list[RatioRow]
    min_ratio: Fraction
    argmin_genus: int


def ratio_report(max_genus: int, *, workers: int = 1, engine: str = "auto") -> RatioReport:
    """Exact ratios n'_{g+1} / n_g for 1 <= g <= max_genus, with the minimum.

    Both count sequences come from enumeration, so this is desk-scale
    only (the slice table needs max_genus + 1 <= 60).
    """
    if max_genus < 1:
        raise ValueError("ratio_report needs max_genus >= 1")
    full = count(EnumFilter(max_genus=max_genus), workers=workers, engine=engine)
    sliced = count(
        EnumFilter(max_genus=max_genus + 1, depth_le=3), workers=workers, engine=engine
    )
    rows = []
    for g in range(1, max_genus + 1):
        rows.append(
            RatioRow(g, full.total(g), sliced.total(g + 1), Fraction(sliced.total(g + 1), full.total(g)))
        )
    best = min(rows, key=lambda r: (r.ratio, r.genus))
    return RatioReport(rows, best.ratio, best.genus)


@dataclass(frozen=True)
class SubtreeRow:
    level: int
    count: int
    nondecreasing: bool


@dataclass
class SubtreeReport:
    root: Gapset
    rows: list[SubtreeRow]

    @property
    def ok(self) -> bool:
        return all(r.nondecreasing for r in self.rows)


def subtree_levels(root: Gapset, max_genus: int) -> SubtreeReport:
    """Descendant counts of ``root`` per genus level, flagging decreases."""
    if root.genus > max_genus:
        raise ValueError("max_genus is below the root's genus")
    tallies = [0] * (max_genus + 1)
    for gs in iter_subtree(root, max_genus):
        tallies[gs.genus] += 1
    rows = []
    prev = None
    for level in range(root.genus, max_genus + 1):
        n = tallies[level]
        rows.append(SubtreeRow(level, n, prev is None or n >= prev))
        prev = n
    return SubtreeReport(root, rows)
