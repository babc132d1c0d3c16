"""Validity, statistics, partitions, filtrations and notation."""

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import (
    oracle_closure,
    oracle_gapsets_up_to,
    oracle_is_gapset,
    oracle_numerical_set,
)
from gapsets.core import (
    Filtration,
    FiltrationParseError,
    Gapset,
    GapsetStats,
    canonical_partition,
    format_filtration,
    from_filtration,
    is_gapset,
    is_gapset_filtration,
    min_generators,
    parse_filtration,
    to_filtration,
    to_gapset,
)

# multiplicity-3, depth-4 example reused across the suite
WORKED_GAPS = (1, 2, 4, 5, 7, 10)


def test_is_gapset_examples():
    assert is_gapset(set())
    assert is_gapset({1})
    assert is_gapset(WORKED_GAPS)
    assert not is_gapset({1, 2, 4, 7, 10})  # 10 = 5 + 5, both outside
    assert not is_gapset({2})  # 2 = 1 + 1
    assert not is_gapset({1, 4})  # 4 = 2 + 2


def test_is_gapset_rejects_nonpositive():
    with pytest.raises(ValueError):
        is_gapset({0, 1})
    with pytest.raises(ValueError):
        is_gapset({-3})


@given(st.sets(st.integers(min_value=1, max_value=24), max_size=10))
def test_is_gapset_matches_definition(values):
    assert is_gapset(values) == oracle_is_gapset(values)


def test_is_gapset_exhaustive_small_universe():
    for k in range(10):
        for combo in combinations(range(1, 10), k):
            assert is_gapset(combo) == oracle_is_gapset(combo)


def test_stats_worked_example():
    stats = Gapset.from_gaps(WORKED_GAPS).stats()
    assert stats == GapsetStats(
        multiplicity=3,
        frobenius=10,
        conductor=11,
        genus=6,
        depth=4,
        embedding_dimension=3,
    )


def test_stats_degenerate_cases():
    assert Gapset().stats() == GapsetStats(1, -1, 0, 0, 0, 1)
    assert Gapset.from_gaps({1}).stats() == GapsetStats(2, 1, 2, 1, 1, 2)


def test_stats_laws_exhaustive():
    for genus, level in enumerate(oracle_gapsets_up_to(9)):
        for gaps in level:
            g = Gapset.from_gaps(gaps)
            s = g.stats()
            assert s.genus == len(gaps) == genus
            assert s.conductor == s.frobenius + 1
            if gaps:
                assert s.frobenius == max(gaps)
                assert s.frobenius <= 2 * genus - 1
                assert s.depth == -(-s.conductor // s.multiplicity)
            assert s.multiplicity == min(oracle_numerical_set(gaps, 2 * genus + 2) - {0})


def test_prefix_closure():
    # truncating above any threshold preserves gapsetness
    for level in oracle_gapsets_up_to(8):
        for gaps in level:
            for t in range(max(gaps, default=0) + 2):
                assert is_gapset({x for x in gaps if x <= t})


def test_gapset_value_semantics():
    a = Gapset.from_gaps([1, 2, 4])
    b = Gapset.from_gaps((4, 2, 1))
    assert a == b and hash(a) == hash(b)
    assert a.gaps == (1, 2, 4)
    assert 4 in a and 3 not in a
    assert len(a) == 3 and list(a) == [1, 2, 4]
    assert Gapset.from_gaps({1, 2}) < Gapset.from_gaps({1, 3})
    assert Gapset.from_gaps({1, 2, 3}) < Gapset.from_gaps({1, 2, 4})
    assert Gapset() < Gapset.from_gaps({1})


def test_from_gaps_reports_violation():
    with pytest.raises(ValueError, match=r"10 = 5 \+ 5"):
        Gapset.from_gaps({1, 2, 4, 7, 10})


def test_canonical_partition_worked_example():
    g = Gapset.from_gaps(WORKED_GAPS)
    assert canonical_partition(g) == (
        frozenset({1, 2}),
        frozenset({4, 5}),
        frozenset({7}),
        frozenset({10}),
    )


def test_to_filtration_worked_example():
    f = to_filtration(Gapset.from_gaps(WORKED_GAPS))
    assert f.pieces == (
        frozenset({1, 2}),
        frozenset({1, 2}),
        frozenset({1}),
        frozenset({1}),
    )
    assert format_filtration(f) == "(12)^2(1)^2"
    assert (f.multiplicity, f.genus, f.depth) == (3, 6, 4)


def test_round_trip_exhaustive():
    for level in oracle_gapsets_up_to(8):
        for gaps in level:
            g = Gapset.from_gaps(gaps)
            f = to_filtration(g)
            assert from_filtration(f) == gaps
            assert is_gapset_filtration(f)
            assert to_gapset(f) == g
            assert (f.genus, f.multiplicity, f.depth) == (g.genus, g.multiplicity, g.depth)


def test_non_gapset_filtration_detected():
    # valid m-filtration whose gap set splits as a sum of two non-gaps
    f = Filtration.from_pieces([{1, 2}, {1}, {1}, {1}])
    assert from_filtration(f) == frozenset({1, 2, 4, 7, 10})
    assert not is_gapset_filtration(f)
    with pytest.raises(ValueError, match="not a gapset"):
        to_gapset(f)


def test_piece_conventions():
    f = parse_filtration("(12)(1)")
    assert f.piece(0) == frozenset({1, 2})
    assert f.piece(5) == frozenset()
    assert (f.piece_max(0), f.piece_max(1), f.piece_max(2)) == (2, 1, 0)
    empty = parse_filtration("∅")
    assert (empty.depth, empty.genus, empty.multiplicity) == (0, 0, 1)
    assert empty == Filtration()


@pytest.mark.parametrize(
    "pieces",
    [
        ({1, 3},),  # first piece must be an interval from 1
        ({2, 3},),
        ({1, 2}, {3}),  # containment broken
        ({1}, set(), {1}),  # interior piece empty
        ((), {1}),
    ],
)
def test_filtration_rejects_bad_chains(pieces):
    with pytest.raises(ValueError):
        Filtration(tuple(frozenset(p) for p in pieces))


def test_from_pieces_normalizes():
    f = Filtration.from_pieces([[1, 2], [1], [], []])
    assert f.pieces == (frozenset({1, 2}), frozenset({1}))
    assert Filtration.from_pieces([]) == Filtration()


@pytest.mark.parametrize(
    "gaps,gens",
    [
        ((), (1,)),
        ((1,), (2, 3)),
        ((1, 2), (3, 4, 5)),
        ((1, 3, 5), (2, 7)),
        (WORKED_GAPS, (3, 8, 13)),
        ((1, 2, 3, 4, 5, 6), (7, 8, 9, 10, 11, 12, 13)),
    ],
)
def test_min_generators_examples(gaps, gens):
    assert min_generators(Gapset.from_gaps(gaps)) == gens


def test_min_generators_closure_oracle():
    # the generators reproduce the complement, and none is redundant
    for level in oracle_gapsets_up_to(8):
        for gaps in level:
            g = Gapset.from_gaps(gaps)
            gens = min_generators(g)
            bound = g.conductor + 2 * g.multiplicity + 2
            semigroup = oracle_numerical_set(gaps, bound)
            assert oracle_closure(gens, bound) == semigroup
            for skip in gens:
                rest = tuple(x for x in gens if x != skip)
                assert oracle_closure(rest, bound) != semigroup


def test_embedding_dimension_at_most_multiplicity():
    for level in oracle_gapsets_up_to(9):
        for gaps in level:
            s = Gapset.from_gaps(gaps).stats()
            assert 1 <= s.embedding_dimension <= s.multiplicity


@pytest.mark.parametrize(
    "text,pieces",
    [
        ("∅", ()),
        ("(1)", ({1},)),
        ("(12)^2(1)^2", ({1, 2}, {1, 2}, {1}, {1})),
        ("(123)(13)^3", ({1, 2, 3}, {1, 3}, {1, 3}, {1, 3})),
        ("(1,2,3)(1,3)", ({1, 2, 3}, {1, 3})),  # comma mode is always accepted
    ],
)
def test_parse_examples(text, pieces):
    assert parse_filtration(text).pieces == tuple(frozenset(p) for p in pieces)


@pytest.mark.parametrize(
    "text,pos",
    [
        ("", 1),
        ("x", 1),
        ("()", 2),
        ("(0)", 2),
        ("(12", 4),
        ("(12)^", 6),
        ("(12)^0", 6),
        ("(11)", 3),  # duplicate digit
        ("(1,1)", 4),  # duplicate element
        ("(1,)", 4),
        ("(12)(3)", 5),  # containment broken, reported at the piece
        ("(2)", 1),  # first piece not an interval from 1
        ("(12)x", 5),
    ],
)
def test_parse_errors_report_positions(text, pos):
    with pytest.raises(FiltrationParseError) as exc:
        parse_filtration(text)
    assert exc.value.position == pos


def test_format_comma_mode_for_large_multiplicity():
    f = Filtration.from_pieces([range(1, 12), [1, 11]])
    text = format_filtration(f)
    assert text == "(1,2,3,4,5,6,7,8,9,10,11)(1,11)"
    assert parse_filtration(text) == f


def test_format_exponent_grouping():
    assert format_filtration(parse_filtration("(123)(13)(13)(13)")) == "(123)(13)^3"
    assert format_filtration(Filtration()) == "∅"


@st.composite
def m_filtrations(draw):
    m = draw(st.integers(min_value=2, max_value=13))
    pieces = [frozenset(range(1, m))]
    for _ in range(draw(st.integers(min_value=0, max_value=4))):
        prev = sorted(pieces[-1])
        nxt = draw(st.sets(st.sampled_from(prev), min_size=1))
        pieces.append(frozenset(nxt))
    return Filtration(tuple(pieces))


@given(m_filtrations())
def test_notation_round_trip(f):
    assert parse_filtration(format_filtration(f)) == f


@given(st.text(alphabet="()^,0123456789∅x", max_size=14))
def test_parse_never_crashes(text):
    try:
        f = parse_filtration(text)
    except FiltrationParseError as exc:
        assert 1 <= exc.position <= len(text) + 1
    else:
        assert parse_filtration(format_filtration(f)) == f
