import numpy as np
import pytest

from galois_quantum_toolkit.coding import cyclic_extension_matrix
from galois_quantum_toolkit.fields import build_field
from galois_quantum_toolkit.geometry import (
    ArcClass,
    NotAnArc,
    NotAPlane,
    SearchMode,
    SearchSpaceTooLarge,
    SpaceTooLarge,
    UnsupportedDimension,
    arc_search,
    bruck_ryser_excluded,
    build_pg,
    classify_arc,
    incidence_equivalent,
    incidence_matrix,
    is_arc,
    is_ovoid,
    line_count,
    line_through,
    max_2,
    max_3,
    plane_report,
    point_count,
    tangent_profile,
)

FANO = build_pg(2, build_field(2))


@pytest.mark.parametrize("delta,p,m", [(2, 2, 1), (2, 3, 1), (2, 2, 2), (2, 5, 1), (3, 2, 1), (3, 3, 1)])
def test_counts(delta, p, m):
    space = build_pg(delta, build_field(p, m))
    q = p**m
    assert space.num_points == point_count(delta, q)
    assert space.num_lines == line_count(delta, q)
    assert space.lines.shape[1] == q + 1
    assert space.verified == (delta == 2)


def test_pg32_counts():
    space = build_pg(3, build_field(2))
    assert (space.num_points, space.num_lines) == (15, 35)


def test_points_are_canonical_and_ordered():
    assert FANO.coordinates(0) == [0, 0, 1]
    assert FANO.coordinates(FANO.num_points - 1) == [1, 1, 1]
    for point in FANO.points:
        assert point[np.argmax(point != 0)] == 1
    assert FANO.point_index([0, 0, 1]) == 0


def test_scalar_multiples_share_a_point():
    space = build_pg(2, build_field(5))
    assert space.point_index([0, 2, 4]) == space.point_index([0, 1, 2])


def test_every_pair_spans_one_line():
    for i in range(FANO.num_points):
        for j in range(i + 1, FANO.num_points):
            line = line_through(FANO, i, j)
            assert i in line and j in line


@pytest.mark.parametrize(
    "p,m,size,classification",
    [
        (2, 1, 4, ArcClass.HYPEROVAL),
        (3, 1, 4, ArcClass.OVAL),
        (2, 2, 6, ArcClass.HYPEROVAL),
    ],
)
def test_exhaustive_arc_search(p, m, size, classification):
    space = build_pg(2, build_field(p, m))
    result = arc_search(space, SearchMode.EXHAUSTIVE)
    assert result.size == size
    assert result.matches_expected
    assert result.classification == classification
    assert is_arc(space.point_set(result.indices)).passed


def test_cap_search_in_pg32():
    result = arc_search(build_pg(3, build_field(2)), "exhaustive", threads=2)
    assert result.kind == "cap"
    assert result.size == 8
    assert result.expected == 8
    assert result.matches_expected
    assert result.note is not None


def test_greedy_search_returns_a_cap():
    for delta, p in [(2, 5), (2, 7), (3, 3)]:
        space = build_pg(delta, build_field(p))
        result = arc_search(space, "Greedy")
        assert result.matches_expected is None
        assert is_arc(space.point_set(result.indices)).no_three_collinear


def test_three_arc_in_fano_plane():
    arc = FANO.point_set_from_coordinates([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert is_arc(arc).passed
    for point in arc.indices:
        assert tangent_profile(arc, point) == 1
    assert classify_arc(arc) == ArcClass.OVAL


def test_collinear_points_are_not_an_arc():
    line = FANO.point_set(FANO.lines[0])
    check = is_arc(line)
    assert not check.passed
    assert check.collinear_triple == [int(p) for p in FANO.lines[0]]
    with pytest.raises(NotAnArc):
        tangent_profile(line, int(FANO.lines[0][0]))


def test_ovoid_in_pg32():
    space = build_pg(3, build_field(2))
    ovoid = space.point_set_from_coordinates(
        [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0], [1, 1, 1, 1]]
    )
    check = is_arc(ovoid)
    assert check.no_three_collinear
    assert is_ovoid(ovoid)
    assert not is_ovoid(space.point_set([0, 1]))


def test_ovoid_and_plane_dimension_checks():
    space = build_pg(3, build_field(2))
    with pytest.raises(UnsupportedDimension):
        is_ovoid(FANO.point_set([0, 1, 2]))
    with pytest.raises(NotAPlane):
        classify_arc(space.point_set([0, 1]))
    with pytest.raises(NotAPlane):
        incidence_matrix(space)


def test_max_formulas():
    assert max_2(3, 2) == 7
    assert max_2(4, 3) == 40
    assert max_3(3, 3) == 4
    assert max_3(3, 4) == 6
    assert max_3(4, 3) == 10
    assert max_3(4, 2) == 8
    assert max_3(5, 2) == 16
    assert max_3(5, 3) is None


def test_bruck_ryser_exclusions():
    excluded = [q for q in range(2, 36) if bruck_ryser_excluded(q)]
    assert excluded == [6, 14, 21, 22, 30, 33]
    with pytest.raises(ValueError):
        bruck_ryser_excluded(1)


def test_incidence_matrix_is_a_plane():
    for p, m in [(2, 1), (3, 1), (2, 2)]:
        report = plane_report(build_pg(2, build_field(p, m)))
        assert report.passed
        assert report.order == p**m


def test_cyclic_extension_is_the_fano_plane():
    extension = cyclic_extension_matrix(7, build_field(2), [1, 1, 0, 1])
    assert incidence_equivalent(extension, incidence_matrix(FANO))
    assert not incidence_equivalent(np.eye(7, dtype=int), incidence_matrix(FANO))


def test_space_errors():
    with pytest.raises(UnsupportedDimension):
        build_pg(4, build_field(2))
    with pytest.raises(SpaceTooLarge):
        build_pg(3, build_field(37))
    with pytest.raises(SearchSpaceTooLarge):
        arc_search(build_pg(2, build_field(5)), SearchMode.EXHAUSTIVE)
    with pytest.raises(ValueError):
        FANO.point_set([0, 7])
