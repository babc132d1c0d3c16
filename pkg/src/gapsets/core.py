"""Gapsets: finite complements of numerical semigroups.

A finite set ``G`` of positive integers is a *gapset* when every
``z in G`` that splits as ``z = x + y`` with ``x, y >= 1`` has ``x in G``
or ``y in G``.  Equivalently, the complement ``S = N - G`` is closed
under addition and contains 0, i.e. it is a numerical semigroup with
gap set ``G``.  All classical semigroup data can be read off ``G``:

* multiplicity ``m``        -- least positive integer not in ``G``
* Frobenius number ``f``    -- ``max(G)``, or -1 when ``G`` is empty
* conductor ``c``           -- ``f + 1``
* genus ``g``               -- ``len(G)``
* depth ``q``               -- ``ceil(c / m)``
* embedding dimension ``e`` -- number of minimal generators of ``S``

Cutting ``G`` along multiples of ``m`` gives its canonical partition
``G_i = G & [i*m + 1, (i+1)*m - 1]`` for ``0 <= i < q``.  Shifting block
``i`` down by ``i*m`` produces the pieces ``F_i = G_i - i*m`` of an
*m-filtration*: a weakly decreasing chain of subsets of ``[1, m-1]``
starting from the full interval ``F_0 = [1, m-1]``.  The gapset is
recovered by re-shifting and taking the union, so filtrations are a
lossless and very compact notation.  ``(12)(1)`` means
``F_0 = {1,2}, F_1 = {1}``, i.e. the gapset ``{1, 2, 4}``.  Not every
m-filtration arises from a gapset; `is_gapset_filtration` decides.

Conventions used throughout the package:

* membership is stored as an int bitmask (bit ``i`` set iff ``i in G``),
  so there is no fixed universe bound; for a gapset of genus ``g`` the
  largest gap is at most ``2*g - 1``
* ``max`` of an empty filtration piece is 0
* the empty filtration (genus 0) prints as ``"∅"``
* gapsets order lexicographically by their ascending gap tuple
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Iterable, Iterator

__all__ = [
    "Gapset",
    "GapsetStats",
    "Filtration",
    "FiltrationParseError",
    "is_gapset",
    "canonical_partition",
    "to_filtration",
    "from_filtration",
    "is_gapset_filtration",
    "min_generators",
    "parse_filtration",
    "format_filtration",
]


def _first_violation(bits):
    """First (z, x) with z a gap, z = x + (z-x) and neither part a gap.

    Returns None when ``bits`` encodes a valid gapset.  Checking splits
    only up to z // 2 is enough by symmetry.
    """
    b = bits
    while b:
        lsb = b & -b
        z = lsb.bit_length() - 1
        for x in range(1, z // 2 + 1):
            if not (bits >> x) & 1 and not (bits >> (z - x)) & 1:
                return z, x
        b ^= lsb
    return None


def is_gapset(values: Iterable[int]) -> bool:
    """True iff the finite set of positive integers is a gapset."""
    bits = 0
    for v in values:
        v = operator.index(v)
        if v < 1:
            raise ValueError(f"gap values must be positive integers, got {v}")
        bits |= 1 << v
    return _first_violation(bits) is None


@total_ordering
@dataclass(frozen=True)
class Gapset:
    """Immutable gapset, stored as a membership bitmask.

    The raw constructor trusts its input; use `from_gaps` for anything
    untrusted.  The enumeration code builds children that are valid by
    construction and skips re-validation.
    """

    bits: int = 0

    @classmethod
    def from_gaps(cls, gaps: Iterable[int]) -> "Gapset":
        """Build from an iterable of gap values, validating gapset-ness."""
        bits = 0
        for v in gaps:
            v = operator.index(v)
            if v < 1:
                raise ValueError(f"gap values must be positive integers, got {v}")
            bits |= 1 << v
        bad = _first_violation(bits)
        if bad is not None:
            z, x = bad
            raise ValueError(f"not a gapset: {z} = {x} + {z - x} with neither part a gap")
        return cls(bits)

    def __contains__(self, x) -> bool:
        return x >= 1 and (self.bits >> x) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            lsb = b & -b
            yield lsb.bit_length() - 1
            b ^= lsb

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __lt__(self, other) -> bool:
        if not isinstance(other, Gapset):
            return NotImplemented
        return self.gaps < other.gaps

    def __repr__(self) -> str:
        return f"Gapset({{{', '.join(map(str, self.gaps))}}})"

    @cached_property
    def gaps(self) -> tuple[int, ...]:
        """Gap values in ascending order."""
        return tuple(self)

    @property
    def genus(self) -> int:
        return self.bits.bit_count()

    @property
    def multiplicity(self) -> int:
        m = 1
        while (self.bits >> m) & 1:
            m += 1
        return m

    @property
    def frobenius(self) -> int:
        return self.bits.bit_length() - 1 if self.bits else -1

    @property
    def conductor(self) -> int:
        return self.bits.bit_length() if self.bits else 0

    @property
    def depth(self) -> int:
        m = self.multiplicity
        return (self.conductor + m - 1) // m

    def stats(self) -> "GapsetStats":
        """All derived quantities in one record."""
        return GapsetStats(
            multiplicity=self.multiplicity,
            frobenius=self.frobenius,
            conductor=self.conductor,
            genus=self.genus,
            depth=self.depth,
            embedding_dimension=len(min_generators(self)),
        )


@dataclass(frozen=True)
class GapsetStats:
    multiplicity: int
    frobenius: int
    conductor: int
    genus: int
    depth: int
    embedding_dimension: int


@dataclass(frozen=True)
class Filtration:
    """An m-filtration: pieces F_0 >= F_1 >= ... with F_0 = {1..m-1}.

    Pieces are nonempty frozensets; trailing empty pieces are never
    stored, so ``depth == len(pieces)``.  The empty filtration () is the
    genus-0 object.  Construction enforces the chain invariants; use
    `from_pieces` to normalize looser input (lists, trailing empties).
    """

    pieces: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        prev = None
        for i, piece in enumerate(self.pieces):
            if not piece:
                raise ValueError(f"piece {i} is empty (trailing empties must be dropped)")
            if i == 0:
                if piece != frozenset(range(1, len(piece) + 1)):
                    raise ValueError(
                        f"first piece must be an interval {{1..m-1}}, got {sorted(piece)}"
                    )
            elif not piece <= prev:
                raise ValueError(
                    f"piece {i} {sorted(piece)} is not contained in piece {i - 1} {sorted(prev)}"
                )
            prev = piece

    @classmethod
    def from_pieces(cls, pieces: Iterable[Iterable[int]]) -> "Filtration":
        """Normalize to frozensets and drop trailing empty pieces."""
        normalized = [frozenset(p) for p in pieces]
        while normalized and not normalized[-1]:
            normalized.pop()
        return cls(tuple(normalized))

    @property
    def depth(self) -> int:
        return len(self.pieces)

    @property
    def multiplicity(self) -> int:
        return len(self.pieces[0]) + 1 if self.pieces else 1

    @property
    def genus(self) -> int:
        return sum(len(p) for p in self.pieces)

    def piece(self, i: int) -> frozenset[int]:
        """Piece i, the empty set beyond the stored depth."""
        return self.pieces[i] if 0 <= i < len(self.pieces) else frozenset()

    def piece_max(self, i: int) -> int:
        """Largest element of piece i, 0 when the piece is empty."""
        return max(self.piece(i), default=0)

    def __str__(self) -> str:
        return format_filtration(self)

    def __repr__(self) -> str:
        return f"Filtration({format_filtration(self)!r})"


def canonical_partition(g: Gapset) -> tuple[frozenset[int], ...]:
    """Blocks G_i = G & [i*m+1, (i+1)*m-1], one per depth level."""
    m = g.multiplicity
    blocks = [set() for _ in range(g.depth)]
    for x in g:
        blocks[x // m].add(x)  # multiples of m are never gaps
    return tuple(frozenset(b) for b in blocks)


def to_filtration(g: Gapset) -> Filtration:
    """The m-filtration of a gapset: block i of the partition, shifted down by i*m."""
    m = g.multiplicity
    pieces = [set() for _ in range(g.depth)]
    for x in g:
        pieces[x // m].add(x % m)
    return Filtration(tuple(frozenset(p) for p in pieces))


def from_filtration(f: Filtration) -> frozenset[int]:
    """Union of the re-shifted pieces.

    Total inverse of `to_filtration` on gapset filtrations, but defined
    for every m-filtration; the result need not be a gapset (see
    `is_gapset_filtration`).
    """
    m = f.multiplicity
    out = set()
    for i, piece in enumerate(f.pieces):
        base = i * m
        out.update(base + x for x in piece)
    return frozenset(out)


def is_gapset_filtration(f: Filtration) -> bool:
    """True iff the filtration comes from a gapset."""
    bits = 0
    m = f.multiplicity
    for i, piece in enumerate(f.pieces):
        base = i * m
        for x in piece:
            bits |= 1 << (base + x)
    return _first_violation(bits) is None


def to_gapset(f: Filtration) -> Gapset:
    """The gapset of a gapset filtration; raises on any other filtration."""
    bad = None
    bits = 0
    m = f.multiplicity
    for i, piece in enumerate(f.pieces):
        base = i * m
        for x in piece:
            bits |= 1 << (base + x)
    bad = _first_violation(bits)
    if bad is not None:
        z, x = bad
        raise ValueError(
            f"{format_filtration(f)} is not a gapset filtration: "
            f"{z} = {x} + {z - x} with neither part a gap"
        )
    return Gapset(bits)


def min_generators(g: Gapset) -> tuple[int, ...]:
    """Minimal generators of the complement semigroup, ascending.

    A nonzero element s of S is a generator iff it is not a sum of two
    nonzero elements of S.  Every s >= c + m splits as m + (s - m) with
    s - m >= c, so the search window [m, c + m - 1] is exhaustive.
    """
    bits = g.bits
    if not bits:
        return (1,)
    m = g.multiplicity
    c = g.conductor
    gens = []
    for s in range(m, c + m):
        if (bits >> s) & 1:
            continue
        for x in range(m, s // 2 + 1):
            if not (bits >> x) & 1 and not (bits >> (s - x)) & 1:
                break
        else:
            gens.append(s)
    return tuple(gens)


class FiltrationParseError(ValueError):
    """Malformed filtration text; ``position`` is a 1-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def parse_filtration(text: str) -> Filtration:
    """Parse filtration notation.

    Two piece spellings exist: compact ``(124)`` where every element is
    a single digit 1-9, and comma ``(1,2,4)`` for elements of any size.
    A single string never mixes them, so the presence of a comma
    anywhere selects comma mode for the whole input.  ``^k`` repeats a
    piece.  ``"∅"`` denotes the empty filtration.
    """
    if text == "∅":
        return Filtration(())
    if not text:
        raise FiltrationParseError("empty input", 1)
    comma_mode = "," in text
    pieces: list[frozenset[int]] = []
    starts: list[int] = []  # 1-based start offset of each expanded piece
    i = 0
    n = len(text)
    while i < n:
        piece_start = i + 1
        if text[i] != "(":
            raise FiltrationParseError(f"expected '(', found {text[i]!r}", i + 1)
        i += 1
        elems: list[int] = []
        if comma_mode:
            while True:
                start = i
                while i < n and text[i].isdigit():
                    i += 1
                if i == start:
                    raise FiltrationParseError("expected an integer element", i + 1)
                v = int(text[start:i])
                if v < 1:
                    raise FiltrationParseError("elements must be >= 1", start + 1)
                if v in elems:
                    raise FiltrationParseError(f"duplicate element {v}", start + 1)
                elems.append(v)
                if i < n and text[i] == ",":
                    i += 1
                    continue
                break
        else:
            while i < n and text[i].isdigit():
                v = int(text[i])
                if v == 0:
                    raise FiltrationParseError("0 is not a valid element", i + 1)
                if v in elems:
                    raise FiltrationParseError(f"duplicate element {v}", i + 1)
                elems.append(v)
                i += 1
        if not elems:
            raise FiltrationParseError("empty piece", i + 1)
        if i >= n or text[i] != ")":
            found = repr(text[i]) if i < n else "end of input"
            raise FiltrationParseError(f"expected ')', found {found}", i + 1)
        i += 1
        exponent = 1
        if i < n and text[i] == "^":
            i += 1
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i == start:
                raise FiltrationParseError("expected an exponent after '^'", i + 1)
            exponent = int(text[start:i])
            if exponent < 1:
                raise FiltrationParseError("exponent must be >= 1", start + 1)
        piece = frozenset(elems)
        for _ in range(exponent):
            pieces.append(piece)
            starts.append(piece_start)
    first = pieces[0]
    if first != frozenset(range(1, len(first) + 1)):
        raise FiltrationParseError(
            f"first piece must be an interval {{1..m-1}}, got {sorted(first)}", starts[0]
        )
    for j in range(1, len(pieces)):
        if not pieces[j] <= pieces[j - 1]:
            raise FiltrationParseError(
                f"piece {sorted(pieces[j])} is not contained in {sorted(pieces[j - 1])}",
                starts[j],
            )
    return Filtration(tuple(pieces))


def format_filtration(f: Filtration) -> str:
    """Render filtration notation, compressing runs of equal pieces.

    Compact digits are used when the multiplicity is at most 10 (all
    elements are then single digits); otherwise elements are
    comma-separated, which is what makes `parse_filtration`'s mode
    detection sound.
    """
    if not f.pieces:
        return "∅"
    compact = f.multiplicity <= 10
    chunks = []
    pieces = f.pieces
    i = 0
    while i < len(pieces):
        j = i
        while j < len(pieces) and pieces[j] == pieces[i]:
            j += 1
        elems = sorted(pieces[i])
        body = "".join(map(str, elems)) if compact else ",".join(map(str, elems))
        run = j - i
        chunks.append(f"({body})^{run}" if run > 1 else f"({body})")
        i = j
    return "".join(chunks)
