"""Closed-form families of gapset filtrations at multiplicity 3 and 4.

Every m-filtration is a weakly decreasing chain of subsets of
``[1, m-1]`` starting at the full interval, so for small m the possible
piece sequences have a rigid shape:

* m = 3:  (12)^a (Z)^b        with Z in {(1), (2)}
* m = 4:  (123)^a (M)^b (Z)^c with M a 2-subset, Z a 1-subset of M

Which shapes are *gapset* filtrations is decided by short inequalities
in the exponents (`is_valid_shape`):

=====  ====  ==========================
 m     tail  condition
=====  ====  ==========================
 3     (1)   b <= a + 1
 3     (2)   b <= a
 4     (12)(1)   b <= a + 1 and c <= a + 1
 4     (12)(2)   b + c <= a + 1 and c <= a + b
 4     (13)(1)   c <= a + 1
 4     (13)(3)   c <= a
 4     (23)(2)   b + c <= a
 4     (23)(3)   b <= a and c <= a
=====  ====  ==========================

`enumerate_family` turns the table into the full list at a given genus
(g = 2a + b resp. 3a + 2b + c), and `cross_check` compares that list
against a brute-force tree enumeration restricted to the multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Filtration, from_filtration, is_gapset_filtration, to_filtration
from .tree import EnumFilter, iter_gapsets

__all__ = [
    "FamilyShape",
    "is_valid_shape",
    "enumerate_family",
    "FamilyRow",
    "FamilyReport",
    "cross_check",
]

_MIDDLES = (frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3}))


@dataclass(frozen=True)
class FamilyShape:
    """Exponent vector of a multiplicity-3 or 4 filtration shape.

    For m = 3 there is no middle run: set ``middle`` to None and
    ``middle_exp`` to 0.  Exponents may be 0 (the run is absent), but
    the head run must be there: ``head_exp >= 1``.
    """

    multiplicity: int
    head_exp: int
    middle: frozenset[int] | None
    middle_exp: int
    tail: frozenset[int]
    tail_exp: int

    def __post_init__(self):
        if self.multiplicity not in (3, 4):
            raise ValueError("only multiplicities 3 and 4 have shape tables")
        if self.head_exp < 1:
            raise ValueError("head exponent must be >= 1")
        if self.middle_exp < 0 or self.tail_exp < 0:
            raise ValueError("exponents must be >= 0")
        if self.multiplicity == 3:
            if self.middle is not None or self.middle_exp:
                raise ValueError("multiplicity 3 shapes have no middle run")
            if self.tail not in (frozenset({1}), frozenset({2})):
                raise ValueError("multiplicity 3 tail must be {1} or {2}")
        else:
            if self.middle not in _MIDDLES:
                raise ValueError("multiplicity 4 middle must be a 2-subset of {1,2,3}")
            if len(self.tail) != 1 or not self.tail <= self.middle:
                raise ValueError("tail must be a singleton subset of the middle piece")

    @classmethod
    def mult3(cls, a: int, tail, b: int) -> "FamilyShape":
        return cls(3, a, None, 0, frozenset(tail), b)

    @classmethod
    def mult4(cls, a: int, middle, b: int, tail, c: int) -> "FamilyShape":
        return cls(4, a, frozenset(middle), b, frozenset(tail), c)

    @property
    def genus(self) -> int:
        if self.multiplicity == 3:
            return 2 * self.head_exp + self.tail_exp
        return 3 * self.head_exp + 2 * self.middle_exp + self.tail_exp

    def to_filtration(self) -> Filtration:
        head = frozenset(range(1, self.multiplicity))
        pieces = [head] * self.head_exp
        if self.multiplicity == 4:
            pieces += [self.middle] * self.middle_exp
        pieces += [self.tail] * self.tail_exp
        return Filtration.from_pieces(pieces)


def is_valid_shape(shape: FamilyShape) -> bool:
    """Closed-form test: does the shape give a gapset filtration?"""
    a, b, c = shape.head_exp, shape.middle_exp, shape.tail_exp
    if shape.multiplicity == 3:
        if shape.tail == frozenset({1}):
            return c <= a + 1
        return c <= a
    key = (tuple(sorted(shape.middle)), min(shape.tail))
    if key == ((1, 2), 1):
        return b <= a + 1 and c <= a + 1
    if key == ((1, 2), 2):
        return b + c <= a + 1 and c <= a + b
    if key == ((1, 3), 1):
        return c <= a + 1
    if key == ((1, 3), 3):
        return c <= a
    if key == ((2, 3), 2):
        return b + c <= a
    if key == ((2, 3), 3):
        return b <= a and c <= a
    raise AssertionError(f"unreachable shape key {key}")


def _sort_key(f: Filtration):
    return tuple(sorted(from_filtration(f)))


def enumerate_family(multiplicity: int, genus: int) -> list[Filtration]:
    """All gapset filtrations of the given multiplicity and genus.

    Built from the shape table, deduplicated (shapes with zero-exponent
    runs describe the same filtration under several labels) and sorted
    by the underlying gap list.
    """
    if multiplicity not in (3, 4):
        raise ValueError("only multiplicities 3 and 4 have shape tables")
    if genus < multiplicity - 1:
        raise ValueError(f"no multiplicity-{multiplicity} gapset below genus {multiplicity - 1}")
    out = set()
    if multiplicity == 3:
        for a in range(1, genus // 2 + 1):
            b = genus - 2 * a
            for tail in ({1}, {2}):
                shape = FamilyShape.mult3(a, tail, b)
                if is_valid_shape(shape):
                    out.add(shape.to_filtration())
    else:
        for a in range(1, genus // 3 + 1):
            rest = genus - 3 * a
            for b in range(rest // 2 + 1):
                c = rest - 2 * b
                for middle in _MIDDLES:
                    for z in middle:
                        shape = FamilyShape.mult4(a, middle, b, {z}, c)
                        if is_valid_shape(shape):
                            out.add(shape.to_filtration())
    return sorted(out, key=_sort_key)


@dataclass(frozen=True)
class FamilyRow:
    multiplicity: int
    genus: int
    closed_form_count: int
    bruteforce_count: int
    match: bool


@dataclass
class FamilyReport:
    rows: list[FamilyRow]
    mismatch: tuple[Filtration, ...] = ()

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.rows)


def cross_check(multiplicity: int, max_genus: int) -> FamilyReport:
    """Closed-form lists vs tree enumeration, per genus, compared as sets."""
    if max_genus < 2:
        raise ValueError("cross_check needs max_genus >= 2")
    by_genus: dict[int, set[Filtration]] = {}
    flt = EnumFilter(max_genus=max_genus, multiplicity_eq=multiplicity)
    for gs in iter_gapsets(flt):
        by_genus.setdefault(gs.genus, set()).add(to_filtration(gs))
    rows = []
    mismatch: tuple[Filtration, ...] = ()
    for g in range(multiplicity - 1, max_genus + 1):
        closed = set(enumerate_family(multiplicity, g))
        brute = by_genus.get(g, set())
        match = closed == brute
        if not match and not mismatch:
            mismatch = tuple(sorted(closed ^ brute, key=_sort_key))
        rows.append(FamilyRow(multiplicity, g, len(closed), len(brute), match))
    return FamilyReport(rows, mismatch)


def bruteforce_is_gapset_filtration(shape: FamilyShape) -> bool:
    """Oracle for `is_valid_shape`: expand the shape and test directly."""
    return is_gapset_filtration(shape.to_filtration())
