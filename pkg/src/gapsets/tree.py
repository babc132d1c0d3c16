"""Enumeration of all gapsets as a rooted tree.

Removing its largest gap from a gapset of genus g yields a gapset of
genus g - 1, so the set of all gapsets forms a tree rooted at the empty
set, with one level per genus.  The children of ``G`` (with conductor c
and multiplicity m) are exactly the sets ``G + {a}`` where

* ``a`` lies in the window ``[c, c + m - 1]`` (below c the result is not
  prefix-ordered, from ``c + m`` on ``a = m + (a - m)`` is always a sum
  of two nonzero non-gaps), and
* ``a`` is not a sum of two nonzero non-gaps, which only needs splits
  ``a = x + (a - x)`` with ``m <= x <= a/2`` checked.

The root has the single child ``{1}`` (its window formula degenerates).
Children are produced in increasing ``a``, so a depth-first walk visits
gapsets in a canonical deterministic order.

Both depth (``ceil(c/m)``) and multiplicity are non-decreasing from
parent to child, which makes ``depth <= b`` and ``multiplicity <= m``
prunable during the walk: once a vertex violates the bound its whole
subtree does.

Two counting engines produce identical tables: a pure Python walk on
int bitmasks (no compilation latency, fine up to a few million nodes)
and a numba kernel on flat arrays (`gapsets._kernel`) for large runs,
parallelized by farming out the subtrees rooted at a fixed split genus
to worker threads.  Both count into (genus, depth, multiplicity) cells;
merging is integer addition, so results do not depend on the worker
count or schedule.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .core import Gapset

__all__ = [
    "EnumFilter",
    "CountTable",
    "parent",
    "children",
    "iter_gapsets",
    "visit_gapsets",
    "iter_subtree",
    "count",
    "MAX_GENUS_LIMIT",
]

# The published reference counts stop at genus 60 and the kernel tallies
# into int64 cells; beyond this the tool refuses rather than risk silent
# nonsense (full-tree counts would also take geological time there).
MAX_GENUS_LIMIT = 60


@dataclass(frozen=True)
class EnumFilter:
    """Which part of the tree to visit.

    ``max_genus`` bounds the walk depth (inclusive).  ``depth_le``
    prunes subtrees, ``depth_eq`` additionally reports only exact
    matches; they are mutually exclusive.  ``multiplicity_eq`` reports
    only exact matches while pruning larger multiplicities.
    """

    max_genus: int
    depth_le: int | None = None
    depth_eq: int | None = None
    multiplicity_eq: int | None = None

    def __post_init__(self):
        if self.max_genus < 0:
            raise ValueError("max_genus must be >= 0")
        if self.depth_le is not None and self.depth_eq is not None:
            raise ValueError("depth_le and depth_eq are mutually exclusive")
        if self.depth_le is not None and self.depth_le < 0:
            raise ValueError("depth_le must be >= 0")
        if self.depth_eq is not None and self.depth_eq < 0:
            raise ValueError("depth_eq must be >= 0")
        if self.multiplicity_eq is not None and self.multiplicity_eq < 1:
            raise ValueError("multiplicity_eq must be >= 1")

    @property
    def depth_cap(self) -> int | None:
        return self.depth_le if self.depth_le is not None else self.depth_eq


def parent(g: Gapset) -> Gapset:
    """The gapset with the largest gap removed."""
    if not g.bits:
        raise ValueError("the empty gapset has no parent")
    return Gapset(g.bits ^ (1 << g.frobenius))


def _valid_candidate(bits, m, a):
    # a is a valid new largest gap iff no split a = x + (a - x) has both
    # parts outside the gap set; parts below m are gaps, so start at m.
    for x in range(m, (a >> 1) + 1):
        if not (bits >> x) & 1 and not (bits >> (a - x)) & 1:
            return False
    return True


def children(g: Gapset) -> list[Gapset]:
    """Children in the enumeration tree, in increasing largest-gap order."""
    if not g.bits:
        return [Gapset(2)]  # {1}
    bits = g.bits
    m = g.multiplicity
    c = g.conductor
    return [
        Gapset(bits | (1 << a))
        for a in range(c, c + m)
        if _valid_candidate(bits, m, a)
    ]


# ── depth-first walk on raw states ──────────────────────────────────
# A state is (bits, genus, multiplicity, conductor, depth); keeping the
# walk on plain ints instead of Gapset objects roughly halves its cost.

_ROOT_STATE = (0, 0, 1, 0, 0)
_GENUS_ONE_STATE = (2, 1, 2, 2, 1)


def _walk_states(start, gmax, depth_cap, mult_cap):
    """DFS preorder from ``start``, pruning by the given caps.

    ``start`` itself is assumed to satisfy the caps and is yielded
    first.  Children appear in increasing largest-gap order.
    """
    stack = [start]
    while stack:
        state = stack.pop()
        yield state
        bits, g, m, c, q = state
        if g >= gmax:
            continue
        if bits == 0:
            child = _GENUS_ONE_STATE
            if (depth_cap is None or 1 <= depth_cap) and (mult_cap is None or 2 <= mult_cap):
                stack.append(child)
            continue
        batch = []
        for a in range(c, c + m):
            half = a >> 1
            ok = True
            for x in range(m, half + 1):
                if not (bits >> x) & 1 and not (bits >> (a - x)) & 1:
                    ok = False
                    break
            if not ok:
                continue
            cm = m + 1 if a == m else m
            if mult_cap is not None and cm > mult_cap:
                continue
            cc = a + 1
            cq = (cc + cm - 1) // cm
            if depth_cap is not None and cq > depth_cap:
                continue
            batch.append((bits | (1 << a), g + 1, cm, cc, cq))
        stack.extend(reversed(batch))


def _walk(flt: EnumFilter):
    cap = flt.depth_cap
    if flt.max_genus >= 0 and (cap is None or cap >= 0):
        yield from _walk_states(_ROOT_STATE, flt.max_genus, cap, flt.multiplicity_eq)


def iter_gapsets(flt: EnumFilter) -> Iterator[Gapset]:
    """All gapsets matching the filter, in canonical DFS order."""
    deq = flt.depth_eq
    meq = flt.multiplicity_eq
    for bits, g, m, c, q in _walk(flt):
        if deq is not None and q != deq:
            continue
        if meq is not None and m != meq:
            continue
        yield Gapset(bits)


def visit_gapsets(flt: EnumFilter, visit: Callable[[Gapset], None] | None = None) -> int:
    """Apply ``visit`` to every matching gapset; returns the visit count."""
    n = 0
    for g in iter_gapsets(flt):
        n += 1
        if visit is not None:
            visit(g)
    return n


def iter_subtree(
    root: Gapset,
    max_genus: int,
    depth_le: int | None = None,
    multiplicity_eq: int | None = None,
) -> Iterator[Gapset]:
    """DFS over the descendants of ``root`` (inclusive) up to ``max_genus``."""
    g = root.genus
    if g > max_genus:
        return
    m = root.multiplicity
    c = root.conductor
    q = root.depth
    if depth_le is not None and q > depth_le:
        return
    if multiplicity_eq is not None and m > multiplicity_eq:
        return
    state = (root.bits, g, m, c, q)
    for bits, *_ in _walk_states(state, max_genus, depth_le, multiplicity_eq):
        yield Gapset(bits)


class CountTable:
    """Counts of matching gapsets per genus row.

    ``cells`` maps (genus, depth, multiplicity) to a count; rows cover
    genus 0 .. max_genus even when zero.  ``totals[g]`` is always the
    sum of row g's cells, so the two views cannot disagree.
    """

    def __init__(self, max_genus: int, cells: dict):
        self.max_genus = max_genus
        self.cells = dict(cells)
        totals = [0] * (max_genus + 1)
        for (g, _q, _m), n in self.cells.items():
            totals[g] += n
        self.totals = totals

    def total(self, genus: int) -> int:
        return self.totals[genus]

    def by_depth(self, genus: int) -> dict[int, int]:
        out: Counter = Counter()
        for (g, q, _m), n in self.cells.items():
            if g == genus:
                out[q] += n
        return dict(sorted(out.items()))

    def by_multiplicity(self, genus: int) -> dict[int, int]:
        out: Counter = Counter()
        for (g, _q, m), n in self.cells.items():
            if g == genus:
                out[m] += n
        return dict(sorted(out.items()))

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        mine = {k: v for k, v in self.cells.items() if v}
        theirs = {k: v for k, v in other.cells.items() if v}
        return self.max_genus == other.max_genus and mine == theirs

    def __repr__(self):
        return f"CountTable(max_genus={self.max_genus}, totals={self.totals})"


def _count_cells_python(flt: EnumFilter, gmax: int):
    cells: Counter = Counter()
    capped = EnumFilter(
        max_genus=gmax,
        depth_le=flt.depth_cap,
        multiplicity_eq=flt.multiplicity_eq,
    )
    for _bits, g, m, _c, q in _walk(capped):
        cells[(g, q, m)] += 1
    return cells


def _collect_frontier(flt: EnumFilter, split: int):
    """Python walk down to the split genus: cells below, subtree roots at it."""
    cells: Counter = Counter()
    frontier = []
    capped = EnumFilter(
        max_genus=split,
        depth_le=flt.depth_cap,
        multiplicity_eq=flt.multiplicity_eq,
    )
    for state in _walk(capped):
        if state[1] == split:
            frontier.append(state)
        else:
            g, q, m = state[1], state[4], state[2]
            cells[(g, q, m)] += 1
    return cells, frontier


def _count_cells_bitset(flt: EnumFilter, workers: int, split: int):
    from concurrent.futures import ThreadPoolExecutor

    import numpy as np

    from . import _kernel

    gmax = flt.max_genus
    cells, frontier = _collect_frontier(flt, split)
    if not frontier:
        return cells
    depth_cap = -1 if flt.depth_cap is None else flt.depth_cap
    mult_cap = -1 if flt.multiplicity_eq is None else flt.multiplicity_eq
    shape = (gmax + 1, gmax + 2, gmax + 2)

    def run(state):
        bits, g, m, c, _q = state
        gapflag = np.zeros(3 * gmax + 4, dtype=np.uint8)
        b = bits
        while b:
            lsb = b & -b
            gapflag[lsb.bit_length() - 1] = 1
            b ^= lsb
        buf = np.zeros(shape, dtype=np.int64)
        _kernel.count_dfs(gapflag, m, c, g, gmax, depth_cap, mult_cap, buf)
        return buf

    total = np.zeros(shape, dtype=np.int64)
    if workers == 1:
        for state in frontier:
            total += run(state)
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            for buf in ex.map(run, frontier):
                total += buf
    for g, q, m in zip(*np.nonzero(total)):
        cells[(int(g), int(q), int(m))] += int(total[g, q, m])
    return cells


def _pick_engine(flt: EnumFilter) -> str:
    # Rough node-count heuristics: full levels grow like 1.62^g, the
    # depth <= 2 slice like Fibonacci.  Crossover measured, not sacred.
    cap = flt.depth_cap
    if cap is not None and cap <= 2:
        return "python" if flt.max_genus <= 26 else "bitset"
    return "python" if flt.max_genus <= 20 else "bitset"


def count(
    flt: EnumFilter,
    *,
    workers: int = 1,
    split_genus: int = 12,
    engine: str = "auto",
) -> CountTable:
    """Count matching gapsets per genus, with depth and multiplicity cells.

    ``engine`` is "python", "bitset" (numba kernel) or "auto".  The
    bitset engine splits the walk at ``split_genus`` and distributes
    subtrees over ``workers`` threads; any worker count gives identical
    tables.
    """
    if flt.max_genus > MAX_GENUS_LIMIT:
        raise ValueError(
            f"max_genus {flt.max_genus} exceeds the supported limit {MAX_GENUS_LIMIT} "
            "(int64 cells and reference data stop there)"
        )
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if split_genus < 1:
        raise ValueError("split_genus must be >= 1")
    if engine == "auto":
        engine = _pick_engine(flt)
    if engine == "python" or (engine == "bitset" and flt.max_genus <= split_genus):
        cells = _count_cells_python(flt, flt.max_genus)
    elif engine == "bitset":
        cells = _count_cells_bitset(flt, workers, split_genus)
    else:
        raise ValueError(f"unknown engine {engine!r} (expected auto, python or bitset)")

    if flt.depth_eq is not None:
        cells = {k: v for k, v in cells.items() if k[1] == flt.depth_eq}
    if flt.multiplicity_eq is not None:
        cells = {k: v for k, v in cells.items() if k[2] == flt.multiplicity_eq}
    return CountTable(flt.max_genus, cells)
