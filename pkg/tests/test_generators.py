from fractions import Fraction

import pytest

from aperiodic.generators import (
    EXAMPLE_NAMES,
    cloud_from_rationals,
    cloud_from_rational_pairs,
    example_set,
    fibonacci_chain,
    fibonacci_word,
    ideal_crystal_1d,
    ideal_crystal_2d,
    reciprocal_perturbed_integers,
    slope_lattice_with_gaps,
)
from aperiodic.precision import golden_surrogate
from aperiodic.window import Window


def win1(lo, hi):
    return Window(((Fraction(lo), Fraction(hi)),))


def test_fibonacci_word_substitution_invariants():
    w = fibonacci_word(200)
    assert "bb" not in w
    assert "aaa" not in w
    # every stage is a prefix of the next
    assert w.startswith(fibonacci_word(50))
    counts = (w[:144].count("a"), w[:144].count("b"))
    assert counts == (89, 55)


def test_fibonacci_chain_gap_structure():
    phi = golden_surrogate()
    cloud = fibonacci_chain(win1(0, 40))
    emb = [Fraction(cloud.emb(p)[0], cloud.scale) for p in cloud.points]
    assert emb[0] == 0
    gaps = [b - a for a, b in zip(emb, emb[1:])]
    assert set(gaps) == {Fraction(1), phi}
    # gap letters must follow the substitution word
    word = "".join("a" if g == phi else "b" for g in gaps)
    assert fibonacci_word(len(word) + 5).startswith(word)


def test_fibonacci_chain_needs_positive_window():
    with pytest.raises(ValueError):
        fibonacci_chain(win1(-10, 0))


def test_reciprocal_perturbed_points_match_bruteforce():
    cloud = reciprocal_perturbed_integers(win1(-8, 8))
    got = sorted(Fraction(cloud.emb(p)[0], cloud.scale) for p in cloud.points)
    expect = sorted(
        Fraction(n) + Fraction(1, n)
        for n in range(-10, 11)
        if n != 0 and -8 <= Fraction(n) + Fraction(1, n) <= 8
    )
    assert got == expect
    assert cloud.label == "S1"


def test_slope_lattice_separates_generator_classes():
    a = Fraction(22, 7)
    cloud = slope_lattice_with_gaps(win1(0, 20), a)
    for p in cloud.points:
        k, n = p
        # each point uses exactly one generator
        assert k == 0 or n == 0
        value = Fraction(cloud.emb(p)[0], cloud.scale)
        assert value == k + n * a
        assert 0 <= value <= 20


def test_crystal_1d_matches_bruteforce():
    cloud = ideal_crystal_1d(Fraction(2), [Fraction(0), Fraction(1, 2)],
                             win1(0, 9))
    got = sorted(Fraction(cloud.emb(p)[0], cloud.scale) for p in cloud.points)
    expect = sorted(
        v for n in range(-1, 6)
        for v in (Fraction(2 * n), Fraction(2 * n) + Fraction(1, 2))
        if 0 <= v <= 9
    )
    assert got == expect


def test_crystal_1d_rejects_nonpositive_spacing():
    with pytest.raises(ValueError):
        ideal_crystal_1d(Fraction(0), [0], win1(0, 5))


def test_crystal_2d_membership():
    window = Window(((Fraction(0), Fraction(6)), (Fraction(0), Fraction(6))))
    cloud = ideal_crystal_2d([(2, 0), (0, 3)], [(0, 0), (1, 1)], window)
    got = set()
    for p in cloud.points:
        e = cloud.emb(p)
        got.add((Fraction(e[0], cloud.scale), Fraction(e[1], cloud.scale)))
    expect = set()
    for x in range(7):
        for y in range(7):
            if (x % 2 == 0 and y % 3 == 0) or (x % 2 == 1 and y % 3 == 1):
                expect.add((Fraction(x), Fraction(y)))
    assert got == expect


def test_example_dispatch_labels():
    window = win1(0, 30)
    window2 = Window(((Fraction(0), Fraction(10)), (Fraction(0), Fraction(10))))
    for name in EXAMPLE_NAMES:
        cloud = example_set(name, window2 if name == "Ex7.3" else window)
        assert cloud.label == name
        assert len(cloud) > 0
    with pytest.raises(ValueError):
        example_set("nope", window)


def test_cloud_from_rationals_dedup_and_colors():
    cloud = cloud_from_rationals(
        [Fraction(1, 2), Fraction(1, 2), Fraction(3)],
        win1(0, 5),
        colors={Fraction(3): Fraction(7)},
    )
    assert len(cloud) == 2
    assert cloud.scale == 2
    three = next(p for p in cloud.points
                 if Fraction(cloud.emb(p)[0], cloud.scale) == 3)
    assert cloud.color(three) == 7
    with pytest.raises(ValueError):
        cloud_from_rationals([], win1(0, 1))


def test_cloud_from_rational_pairs_scale():
    window = Window(((Fraction(0), Fraction(2)), (Fraction(0), Fraction(2))))
    cloud = cloud_from_rational_pairs(
        [(Fraction(1, 2), Fraction(0)), (Fraction(1), Fraction(1, 3))], window)
    assert cloud.scale == 6
    values = {tuple(Fraction(x, cloud.scale) for x in cloud.emb(p))
              for p in cloud.points}
    assert values == {(Fraction(1, 2), Fraction(0)),
                      (Fraction(1), Fraction(1, 3))}
