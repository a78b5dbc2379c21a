from fractions import Fraction

import pytest

from aperiodic.delone import (
    CONSISTENT,
    FAILS,
    MEYER_OK,
    NOT_MEYER,
    PointCloud,
    class_tests,
    config_from_cloud,
    delone_constants,
    lagarias_test,
    meyer_HT,
    minkowski_flc,
    patch_count,
    patches,
)
from aperiodic.generators import (
    cloud_from_rationals,
    cloud_from_rational_pairs,
    example_set,
    ideal_crystal_1d,
)
from aperiodic.window import Window


def win1(lo, hi):
    return Window(((Fraction(lo), Fraction(hi)),))


def integer_cloud(lo, hi, colors=None):
    return cloud_from_rationals([Fraction(n) for n in range(lo, hi + 1)],
                                win1(lo, hi), colors=colors, label="ints")


def test_packing_and_covering_integers():
    rep = delone_constants(integer_cloud(0, 10))
    assert rep.packing_radius == Fraction(1, 2)
    assert rep.packing_exact
    assert rep.packing_radius_sq == Fraction(1, 4)
    # dim 1 covering is the exact half maximal gap
    assert rep.covering_lower == rep.covering_upper == Fraction(1, 2)
    assert rep.flags["uniformly_discrete"] == CONSISTENT
    assert rep.flags["relatively_dense_in_window"] == CONSISTENT


def test_covering_sees_the_large_gap():
    # the hole 8..12 leaves a gap of 6 between 7 and 13
    values = [Fraction(n) for n in range(0, 21) if not 8 <= n <= 12]
    rep = delone_constants(cloud_from_rationals(values, win1(0, 20)))
    assert rep.covering_lower == rep.covering_upper == Fraction(3)
    assert rep.covering_witness == 10


def test_relative_density_flags_edge_gap():
    # the gap hugs the window edge, so the nested inner window misses it
    values = [Fraction(n) for n in list(range(0, 15)) + [20]]
    rep = delone_constants(cloud_from_rationals(values, win1(0, 20)))
    assert rep.covering_upper == Fraction(3)
    assert rep.flags["relatively_dense_in_window"] == FAILS
    assert "relatively_dense_in_window" in rep.witnesses


def test_packing_bracket_for_irrational_distance():
    window = Window(((Fraction(0), Fraction(4)), (Fraction(0), Fraction(4))))
    cloud = cloud_from_rational_pairs(
        [(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)], window)
    rep = delone_constants(cloud, grid_pitch=Fraction(1, 2))
    assert not rep.packing_exact
    assert rep.packing_radius_sq == Fraction(2, 4)
    # certified lower bound on sqrt(2)/2
    assert rep.packing_radius ** 2 < Fraction(1, 2)
    assert Fraction(1, 2) - rep.packing_radius ** 2 < Fraction(1, 1000)


def test_delone_constants_need_two_points():
    with pytest.raises(ValueError):
        delone_constants(cloud_from_rationals([Fraction(1)], win1(0, 2)))


def oracle_patches(cloud, radius):
    """Brute-force recount: margin-admissible centers, offset contents."""
    scale = cloud.scale
    out = {}
    for c in cloud.points:
        ec = cloud.emb(c)
        if any(Fraction(x, scale) - radius < lo or Fraction(x, scale) + radius > hi
               for x, (lo, hi) in zip(ec, cloud.window.bounds)):
            continue
        content = set()
        for q in cloud.points:
            eq = cloud.emb(q)
            d2 = sum((a - b) ** 2 for a, b in zip(eq, ec))
            if Fraction(d2, scale ** 2) <= radius ** 2:
                content.add(tuple(a - b for a, b in zip(q, c)))
        out[c] = frozenset(content)
    return out


def test_patches_match_bruteforce_oracle():
    cloud = ideal_crystal_1d(Fraction(2), [Fraction(0), Fraction(1, 2)],
                             win1(0, 20))
    expect = oracle_patches(cloud, Fraction(3))
    got = {p.center: p.content for p in patches(cloud, Fraction(3))}
    assert got == expect


def test_patch_count_integers():
    result = patch_count(integer_cloud(0, 10), 2)
    # admissible centers 2..8, all translates of one another
    assert result.centers == 7
    assert result.count == 1
    assert result.lower_bound


def test_patch_count_ignores_colors_in_content():
    plain = integer_cloud(0, 12)
    colored = integer_cloud(0, 12, colors={Fraction(0): Fraction(5)})
    assert patch_count(plain, 2).count == patch_count(colored, 2).count


def test_patches_reject_bad_radius():
    cloud = integer_cloud(0, 10)
    with pytest.raises(ValueError):
        patches(cloud, 0)
    with pytest.raises(ValueError):
        patches(cloud, 6)  # no center keeps a radius-6 ball inside


def test_class_tests_integers_clean():
    report = class_tests(integer_cloud(0, 30))
    assert report.flc.status == CONSISTENT
    assert report.meyer.status == MEYER_OK
    assert report.finitely_generated["verdict"]
    assert report.finitely_generated["rank"] == 1


def test_class_tests_s2_fails_flc():
    report = class_tests(example_set("S2", win1(-30, 30)))
    assert report.flc.status == FAILS
    assert report.flc.witness is not None


def test_class_tests_s3_not_meyer():
    report = class_tests(example_set("S3", win1(-40, 40)))
    assert report.meyer.status == NOT_MEYER
    assert report.meyer.witness is not None


def test_lagarias_triggers_on_periodic_sets():
    cloud = integer_cloud(0, 40)
    report = lagarias_test(cloud, range(1, 9))
    assert report.trigger == 2
    fired = [row for row in report.rows if row["trigger"]]
    assert fired and fired[0]["T"] == 2
    for row in report.rows:
        assert row["trigger"] == (row["count"] < row["threshold"])


def test_lagarias_never_triggers_on_fibonacci():
    cloud = example_set("fibonacci", win1(0, 100))
    report = lagarias_test(cloud, range(1, 21))
    assert report.trigger is None


def test_meyer_inequality_on_crystal():
    cloud = ideal_crystal_1d(Fraction(3), [Fraction(0), Fraction(1)],
                             win1(0, 90))
    for t in range(1, 8):
        rep = meyer_HT(cloud, t)
        assert rep.holds
        assert rep.lhs <= rep.rhs


def test_meyer_inequality_window_too_small():
    with pytest.raises(ValueError):
        meyer_HT(integer_cloud(0, 6), 40)


def test_minkowski_sum_of_integers_stays_consistent():
    cloud = integer_cloud(0, 30)
    report = minkowski_flc(cloud, [(0,), (1,)])
    assert report.input_flc.status == CONSISTENT
    assert report.sum_flc.status == CONSISTENT
    assert report.sum_uniform == CONSISTENT
    assert report.lemma_applies
    assert report.consistent


def test_minkowski_rejects_empty_summand():
    with pytest.raises(ValueError):
        minkowski_flc(integer_cloud(0, 10), [])


def test_cloud_restriction_and_length():
    cloud = integer_cloud(0, 20)
    inner = cloud.restricted(win1(5, 9))
    assert len(inner) == 5
    assert all(5 <= Fraction(inner.emb(p)[0], inner.scale) <= 9
               for p in inner.points)


def test_cloud_rejects_point_outside_window():
    from aperiodic.algebra import ExponentBasis
    basis = ExponentBasis.line_with_generators([Fraction(1)], [(0,)])
    with pytest.raises(ValueError):
        PointCloud(basis, [(5,)], win1(0, 3))


def test_config_from_cloud_reads_colors():
    cloud = integer_cloud(0, 5, colors={Fraction(2): Fraction(9)})
    c = config_from_cloud(cloud)
    two = next(p for p in cloud.points
               if Fraction(cloud.emb(p)[0], cloud.scale) == 2)
    zero = next(p for p in cloud.points
                if cloud.emb(p)[0] == 0)
    assert c.value(two) == 9
    assert c.value(zero) == 1
