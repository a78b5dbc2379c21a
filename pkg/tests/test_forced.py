import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aperiodic.algebra import has_vertex_in_direction, parse_poly, primitive_ray
from aperiodic.forced import (
    convex_hull_2d,
    edge_normal_rays,
    hyperplane_condition,
    vertex_coverage,
)


def test_hull_of_square_with_interior():
    pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0), (0, 1)]
    hull = convex_hull_2d(pts)
    assert hull == [(0, 0), (2, 0), (2, 2), (0, 2)]


def test_hull_degenerate_inputs():
    assert convex_hull_2d([(3, 4)]) == [(3, 4)]
    assert convex_hull_2d([(0, 0), (2, 2), (0, 0)]) == [(0, 0), (2, 2)]
    # collinear points collapse to the two endpoints
    assert convex_hull_2d([(0, 0), (1, 1), (2, 2), (3, 3)]) == [(0, 0), (3, 3)]


def test_edge_normals_of_square():
    hull = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert edge_normal_rays(hull) == sorted(
        [(0, -1), (1, 0), (0, 1), (-1, 0)])


def test_edge_normals_of_segment_and_point():
    assert edge_normal_rays([(0, 0)]) == []
    assert edge_normal_rays([(0, 0), (2, 4)]) == sorted([(2, -1), (-2, 1)])


def test_triangle_uncovered_directions_pinned():
    triangle = parse_poly("X^(1,0) + X^(0,1) - 1")
    report = vertex_coverage([triangle])
    assert report.mode == "exact-2d"
    assert report.uncovered == [(-1, 0), (0, -1), (1, 1)]
    assert not report.covered_all


def test_second_member_completes_coverage():
    family = [parse_poly("X^(1,0) + X^(0,1) - 1"),
              parse_poly("1 + X^(2,1) + X^(1,1)")]
    report = vertex_coverage(family)
    assert report.covered_all
    assert report.uncovered == []
    assert len(report.members) == 2


def test_uncovered_rays_match_vertex_queries():
    triangle = parse_poly("X^(1,0) + X^(0,1) - 1")
    report = vertex_coverage([triangle])
    rays = set(report.members[0].uncovered_rays)
    for w in [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1),
              (2, 1), (-3, 5)]:
        assert has_vertex_in_direction(triangle, w) == \
            (primitive_ray(w) not in rays)


def test_coverage_one_dimension_is_total():
    report = vertex_coverage([parse_poly("x^3 - x + 1")])
    assert report.mode == "exact-1d"
    assert report.covered_all


def test_coverage_input_validation():
    with pytest.raises(ValueError):
        vertex_coverage([])
    with pytest.raises(ValueError):
        vertex_coverage([parse_poly("x - x")])
    with pytest.raises(ValueError):
        vertex_coverage([parse_poly("x + 1"),
                         parse_poly("X^(1,0) + 1")])


def test_hyperplane_condition_triangle():
    f = parse_poly("X^(1,0) + X^(0,1) - 1")
    ok_dir, bad_dir = (1, 1), (0, 1)
    verdicts = hyperplane_condition(f, [ok_dir, bad_dir])
    assert verdicts[0].ok and verdicts[0].witness is None
    assert not verdicts[1].ok
    assert verdicts[1].witness == (1, 0)


def test_hyperplane_condition_needs_origin():
    f = parse_poly("X^(1,0) + X^(0,1) - X^(1,1)")
    with pytest.raises(ValueError):
        hyperplane_condition(f, [(1, 1)])
    with pytest.raises(ValueError):
        hyperplane_condition(parse_poly("X^(1,0) + 1"), [(0, 0)])


# -- properties -------------------------------------------------------------

point_sets = st.lists(
    st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
    min_size=1, max_size=12, unique=True)


@given(point_sets)
@settings(max_examples=80, deadline=None)
def test_hull_is_subset_and_contains_extremes(pts):
    hull = convex_hull_2d(pts)
    assert set(hull) <= set(pts)
    xs = sorted(pts)
    assert xs[0] in hull and xs[-1] in hull


@given(point_sets, st.randoms())
@settings(max_examples=50, deadline=None)
def test_hull_is_order_insensitive(pts, rng):
    shuffled = list(pts)
    rng.shuffle(shuffled)
    assert convex_hull_2d(shuffled) == convex_hull_2d(pts)


@given(point_sets)
@settings(max_examples=80, deadline=None)
def test_hull_points_maximize_some_direction(pts):
    hull = convex_hull_2d(pts)
    if len(hull) < 3:
        return
    # every hull corner is the unique maximizer of its adjacent-normal sum
    for i, p in enumerate(hull):
        prev_edge = (p[0] - hull[i - 1][0], p[1] - hull[i - 1][1])
        nxt = hull[(i + 1) % len(hull)]
        next_edge = (nxt[0] - p[0], nxt[1] - p[1])
        w = (prev_edge[1] + next_edge[1], -(prev_edge[0] + next_edge[0]))
        best = max(q[0] * w[0] + q[1] * w[1] for q in pts)
        argmax = [q for q in pts if q[0] * w[0] + q[1] * w[1] == best]
        assert argmax == [p]
