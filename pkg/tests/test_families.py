"""Closed-form shape tables at multiplicity 3 and 4."""

import pytest

from gapsets.core import format_filtration, from_filtration
from gapsets.families import (
    FamilyShape,
    bruteforce_is_gapset_filtration,
    cross_check,
    enumerate_family,
    is_valid_shape,
)


def shape_grid(a_max=12, bc_max=14):
    for a in range(1, a_max + 1):
        for b in range(bc_max + 1):
            for tail in ({1}, {2}):
                yield FamilyShape.mult3(a, tail, b)
            for c in range(bc_max + 1):
                for middle in ({1, 2}, {1, 3}, {2, 3}):
                    for z in middle:
                        yield FamilyShape.mult4(a, middle, b, {z}, c)


def test_clause_spot_checks():
    assert is_valid_shape(FamilyShape.mult3(2, {1}, 3))
    assert not is_valid_shape(FamilyShape.mult3(2, {2}, 3))
    assert is_valid_shape(FamilyShape.mult3(2, {2}, 2))
    assert not is_valid_shape(FamilyShape.mult4(1, {2, 3}, 1, {2}, 1))
    assert is_valid_shape(FamilyShape.mult4(1, {2, 3}, 1, {3}, 1))
    assert is_valid_shape(FamilyShape.mult4(1, {1, 3}, 3, {1}, 0))
    assert is_valid_shape(FamilyShape.mult4(1, {1, 3}, 3, {3}, 0))
    assert not is_valid_shape(FamilyShape.mult4(1, {1, 3}, 3, {3}, 2))


def test_clauses_match_bruteforce_on_grid():
    checked = 0
    for shape in shape_grid():
        assert is_valid_shape(shape) == bruteforce_is_gapset_filtration(shape), shape
        checked += 1
    assert checked == 12 * 15 * (2 + 15 * 6)


def test_shape_validation():
    with pytest.raises(ValueError):
        FamilyShape.mult3(0, {1}, 1)  # head run must be present
    with pytest.raises(ValueError):
        FamilyShape.mult3(1, {3}, 1)
    with pytest.raises(ValueError):
        FamilyShape.mult4(1, {1, 4}, 1, {1}, 1)
    with pytest.raises(ValueError):
        FamilyShape.mult4(1, {1, 3}, 1, {2}, 1)  # tail outside middle
    with pytest.raises(ValueError):
        FamilyShape(5, 1, None, 0, frozenset({1}), 0)
    with pytest.raises(ValueError):
        FamilyShape.mult3(1, {1}, -1)


def test_shape_genus_and_filtration_agree():
    for shape in shape_grid(a_max=4, bc_max=4):
        f = shape.to_filtration()
        assert f.genus == shape.genus
        assert f.multiplicity == shape.multiplicity


def test_enumerate_family_genus_six():
    assert [format_filtration(f) for f in enumerate_family(3, 6)] == [
        "(12)^3",
        "(12)^2(1)^2",
        "(12)^2(2)^2",
    ]
    assert [format_filtration(f) for f in enumerate_family(4, 6)] == [
        "(123)^2",
        "(123)(12)(1)",
        "(123)(12)(2)",
        "(123)(13)(1)",
        "(123)(13)(3)",
        "(123)(23)(3)",
    ]


def test_enumerate_family_properties():
    for m in (3, 4):
        for genus in range(m - 1, 15):
            fams = enumerate_family(m, genus)
            assert len(set(fams)) == len(fams)
            gap_lists = [tuple(sorted(from_filtration(f))) for f in fams]
            assert gap_lists == sorted(gap_lists)
            for f in fams:
                assert f.genus == genus and f.multiplicity == m


def test_enumerate_family_guards():
    with pytest.raises(ValueError):
        enumerate_family(5, 6)
    with pytest.raises(ValueError):
        enumerate_family(3, 1)
    with pytest.raises(ValueError):
        enumerate_family(4, 2)
    assert [format_filtration(f) for f in enumerate_family(3, 2)] == ["(12)"]
    assert [format_filtration(f) for f in enumerate_family(4, 3)] == ["(123)"]


def test_cross_check_against_tree():
    for m in (3, 4):
        report = cross_check(m, 16)
        assert report.ok
        assert report.mismatch == ()
        assert [r.genus for r in report.rows] == list(range(m - 1, 17))
        for row in report.rows:
            assert row.closed_form_count == row.bruteforce_count


def test_cross_check_guard():
    with pytest.raises(ValueError):
        cross_check(3, 1)


def test_family_counts_nondecreasing():
    for m in (3, 4):
        sizes = [len(enumerate_family(m, g)) for g in range(m - 1, 21)]
        assert all(x <= y for x, y in zip(sizes, sizes[1:]))
