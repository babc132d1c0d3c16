"""Genus growth maps on gapset filtrations of depth at most 3.

Two maps send a gapset filtration F with multiplicity m to one of
multiplicity m + 1 by inserting m into leading pieces:

* `grow1`: F_0 + {m}, F_1, F_2            (genus + 1)
* `grow2`: F_0 + {m}, F_1 + {m}, F_2      (genus + 2)

Both preserve gapset-ness for inputs of depth <= 3 but not beyond
(inserting the new multiplicity into (1)(1)(1)(1) manufactures a sum of
two non-gaps), hence the hard depth check.  Their images are disjoint
and detectable from piece maxima alone, which classifies every gapset
filtration of genus >= 2:

* max F_0 >  max F_1                ⟺  image of `grow1`
* max F_0 == max F_1 > max F_2      ⟺  image of `grow2`
* all three maxima equal            ⟺  neither image

(`max` of a missing piece is 0.)  The inverses `ungrow1` / `ungrow2`
strip m - 1 back out of the leading pieces.  Since grow1 lands in genus
g + 1 and grow2 in genus g + 2, counting the three classes at genus g
wedges the depth <= 3 counts n'_g between n'_{g-1} + n'_{g-2} and
n'_{g-1} + n'_{g-2} + n'_{g-3}: the third class embeds into genus g - 3
by `trim_maxima`, which removes the largest element of each of the
three pieces.  `verify_sandwich` checks all of this against an actual
enumeration.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import Filtration, format_filtration, to_filtration
from .tree import EnumFilter, iter_gapsets

__all__ = [
    "GrowthKind",
    "GrowthClass",
    "grow1",
    "grow2",
    "ungrow1",
    "ungrow2",
    "classify",
    "trim_maxima",
    "SandwichRow",
    "SandwichReport",
    "verify_sandwich",
]


class GrowthKind(enum.Enum):
    GROW1 = "grow1"
    GROW2 = "grow2"
    NEITHER = "neither"


@dataclass(frozen=True)
class GrowthClass:
    """Classification verdict plus the witnessing piece maxima."""

    kind: GrowthKind
    maxima: tuple[int, int, int]


def _require_shallow(f: Filtration, what: str):
    if f.depth > 3:
        raise ValueError(
            f"{what} is only defined for depth <= 3, got depth {f.depth} "
            f"({format_filtration(f)})"
        )


def grow1(f: Filtration) -> Filtration:
    """Insert the multiplicity into piece 0: genus + 1, multiplicity + 1."""
    _require_shallow(f, "grow1")
    m = f.multiplicity
    return Filtration.from_pieces([f.piece(0) | {m}, f.piece(1), f.piece(2)])


def grow2(f: Filtration) -> Filtration:
    """Insert the multiplicity into pieces 0 and 1: genus + 2, multiplicity + 1."""
    _require_shallow(f, "grow2")
    m = f.multiplicity
    return Filtration.from_pieces([f.piece(0) | {m}, f.piece(1) | {m}, f.piece(2)])


def classify(f: Filtration) -> GrowthClass:
    """Which growth image (if any) a genus >= 2 filtration belongs to."""
    _require_shallow(f, "classify")
    if f.genus < 2:
        raise ValueError(f"classification needs genus >= 2, got genus {f.genus}")
    h = (f.piece_max(0), f.piece_max(1), f.piece_max(2))
    if h[0] > h[1]:
        kind = GrowthKind.GROW1
    elif h[1] > h[2]:
        kind = GrowthKind.GROW2
    else:
        kind = GrowthKind.NEITHER
    return GrowthClass(kind, h)


def ungrow1(f: Filtration) -> Filtration:
    """Inverse of `grow1` on its image (classification enforced)."""
    cls = classify(f)
    if cls.kind is not GrowthKind.GROW1:
        raise ValueError(f"{format_filtration(f)} is not in the grow1 image ({cls.kind.value})")
    top = f.multiplicity - 1
    return Filtration.from_pieces([f.piece(0) - {top}, f.piece(1), f.piece(2)])


def ungrow2(f: Filtration) -> Filtration:
    """Inverse of `grow2` on its image (classification enforced)."""
    cls = classify(f)
    if cls.kind is not GrowthKind.GROW2:
        raise ValueError(f"{format_filtration(f)} is not in the grow2 image ({cls.kind.value})")
    top = f.multiplicity - 1
    return Filtration.from_pieces([f.piece(0) - {top}, f.piece(1) - {top}, f.piece(2)])


def trim_maxima(f: Filtration) -> Filtration:
    """Drop the largest element of each piece of a depth-3 filtration.

    Genus drops by exactly 3 and gapset-ness is preserved; this is the
    embedding used for the upper sandwich bound.  Depth 4 is refused:
    there the construction can leave the gapset world.
    """
    if f.depth != 3:
        raise ValueError(f"trim_maxima requires depth exactly 3, got {f.depth}")
    return Filtration.from_pieces([p - {max(p)} for p in f.pieces])


@dataclass(frozen=True)
class SandwichRow:
    genus: int
    n_prime: int
    x1: int  # grow1 image size, must equal n'_{g-1}
    x2: int  # grow2 image size, must equal n'_{g-2}
    x3: int  # remainder, at most n'_{g-3}
    lower_ok: bool
    upper_ok: bool
    classes_ok: bool


@dataclass
class SandwichReport:
    max_genus: int
    rows: list[SandwichRow]

    @property
    def ok(self) -> bool:
        return all(r.lower_ok and r.upper_ok and r.classes_ok for r in self.rows)

    def first_failure(self) -> SandwichRow | None:
        for r in self.rows:
            if not (r.lower_ok and r.upper_ok and r.classes_ok):
                return r
        return None


def verify_sandwich(max_genus: int) -> SandwichReport:
    """Classify every depth <= 3 gapset filtration up to ``max_genus``.

    For each genus 3 <= g <= max_genus the row records the three class
    sizes and whether n'_{g-1} + n'_{g-2} <= n'_g <= n'_{g-1} + n'_{g-2}
    + n'_{g-3} holds; classes_ok additionally pins the class sizes to
    the neighbouring counts (x1 exact, x2 exact, x3 bounded).
    """
    if max_genus < 3:
        raise ValueError("verify_sandwich needs max_genus >= 3")
    n_prime = [0] * (max_genus + 1)
    x1 = [0] * (max_genus + 1)
    x2 = [0] * (max_genus + 1)
    x3 = [0] * (max_genus + 1)
    for gs in iter_gapsets(EnumFilter(max_genus=max_genus, depth_le=3)):
        g = gs.genus
        n_prime[g] += 1
        if g < 3:
            continue
        kind = classify(to_filtration(gs)).kind
        if kind is GrowthKind.GROW1:
            x1[g] += 1
        elif kind is GrowthKind.GROW2:
            x2[g] += 1
        else:
            x3[g] += 1
    rows = []
    for g in range(3, max_genus + 1):
        lower = n_prime[g - 1] + n_prime[g - 2]
        upper = lower + n_prime[g - 3]
        classes_ok = (
            x1[g] == n_prime[g - 1]
            and x2[g] == n_prime[g - 2]
            and x3[g] <= n_prime[g - 3]
            and x1[g] + x2[g] + x3[g] == n_prime[g]
        )
        rows.append(
            SandwichRow(
                genus=g,
                n_prime=n_prime[g],
                x1=x1[g],
                x2=x2[g],
                x3=x3[g],
                lower_ok=lower <= n_prime[g],
                upper_ok=n_prime[g] <= upper,
                classes_ok=classes_ok,
            )
        )
    return SandwichReport(max_genus, rows)
