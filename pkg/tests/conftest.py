"""Shared brute-force oracles.

These restate the definitions as directly as possible (plain sets, no
bitmasks, no candidate windows) so the fast implementations are checked
against independent code paths.  Pools are cached per session.
"""

from functools import lru_cache
from itertools import combinations


def oracle_is_gapset(values) -> bool:
    """Definitional check: every gap that splits as x + y keeps a gap part."""
    s = set(values)
    for z in s:
        for x in range(1, z):
            if x not in s and (z - x) not in s:
                return False
    return True


@lru_cache(maxsize=None)
def oracle_gapsets_up_to(max_genus: int) -> tuple[frozenset, ...]:
    """All gapsets of genus <= max_genus, by subset search.

    Independent of the tree walk: a gapset of genus g has no gap above
    2g - 1, so the g-subsets of [1, 2g - 1] are exhaustive.  Index i of
    the result holds the genus-i gapsets.
    """
    levels = [set() for _ in range(max_genus + 1)]
    levels[0].add(frozenset())
    for g in range(1, max_genus + 1):
        for combo in combinations(range(1, 2 * g), g):
            if oracle_is_gapset(combo):
                levels[g].add(frozenset(combo))
    return tuple(frozenset(level) for level in levels)


def oracle_numerical_set(gaps, bound: int) -> set:
    """Complement of the gaps inside [0, bound], always containing 0."""
    return {0} | {x for x in range(1, bound + 1) if x not in set(gaps)}


def oracle_closure(gens, bound: int) -> set:
    """Everything in [0, bound] expressible as a sum of the generators."""
    reachable = [False] * (bound + 1)
    reachable[0] = True
    for x in range(1, bound + 1):
        reachable[x] = any(reachable[x - s] for s in gens if s <= x)
    return {x for x in range(bound + 1) if reachable[x]}
