from fractions import Fraction
from math import floor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aperiodic.algebra import ExponentBasis, parse_poly
from aperiodic.configurations import (
    DomainError,
    ExplicitConfig,
    FloorFiberConfig,
    LatticeConfig,
    Pattern,
    PolyAppliedConfig,
    Shape,
    SumConfig,
    TranslateConfig,
    eval_config,
    pattern_complexity,
    patterns,
    torus_components,
    torus_config,
)
from aperiodic.window import Window

Z2 = ExponentBasis.integer_lattice(2)


def torus_oracle(z1, z2, alpha, i, j):
    """Direct Fraction floors, sidestepping the integer fast path."""
    return (floor(z1 + z2 + (i + j) * alpha)
            - floor(z1 + i * alpha) - floor(z2 + j * alpha))


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)
small_points = st.tuples(st.integers(-20, 20), st.integers(-20, 20))


@given(rationals, rationals, rationals, small_points)
@settings(max_examples=150, deadline=None)
def test_torus_value_matches_fraction_oracle(z1, z2, alpha, u):
    c = torus_config((z1, z2), alpha)
    assert c.value(u) == torus_oracle(z1, z2, alpha, *u)


@given(rationals, rationals, rationals, small_points)
@settings(max_examples=100, deadline=None)
def test_torus_values_are_binary(z1, z2, alpha, u):
    assert torus_config((z1, z2), alpha).value(u) in (0, 1)


@given(rationals, rationals, rationals, small_points)
@settings(max_examples=100, deadline=None)
def test_components_sum_to_torus_value(z1, z2, alpha, u):
    c = torus_config((z1, z2), alpha)
    parts = torus_components((z1, z2), alpha)
    assert sum(p.value(u) for p in parts) == c.value(u)


def test_component_invariance_directions():
    parts = torus_components((Fraction(1, 7), Fraction(2, 5)), Fraction(3, 11))
    for part, v in zip(parts, [(1, -1), (0, 1), (1, 0)]):
        for u in [(0, 0), (3, -2), (-4, 5), (10, 10)]:
            assert part.value(u) == part.value((u[0] + v[0], u[1] + v[1]))


def test_torus_known_periods_match_slope_denominator():
    c = torus_config((0, 0), Fraction(5, 9))
    assert c.known_periods() == [(9, 0), (0, 9)]
    for u in [(0, 0), (2, 3), (-1, 4)]:
        assert c.value(u) == c.value((u[0] + 9, u[1]))
        assert c.value(u) == c.value((u[0], u[1] + 9))


def test_torus_rejects_floats():
    with pytest.raises(TypeError):
        torus_config((0.5, 0), Fraction(1, 3))
    with pytest.raises(TypeError):
        torus_config((0, 0), 0.25)


def test_floor_fiber_scale_multiplies():
    basis = ExponentBasis.integer_lattice(1)
    plain = FloorFiberConfig(basis, Fraction(1, 3), Fraction(2, 7), (1,))
    tripled = FloorFiberConfig(basis, Fraction(1, 3), Fraction(2, 7), (1,), 3)
    for n in range(-15, 15):
        assert tripled.value((n,)) == 3 * plain.value((n,))
        assert plain.value((n,)) == floor(Fraction(1, 3) + n * Fraction(2, 7))


def test_explicit_config_window_domain():
    win = Window(((Fraction(0), Fraction(4)),))
    basis = ExponentBasis.integer_lattice(1)
    c = ExplicitConfig(basis, {(1,): 2, (3,): 1}, win)
    assert c.value((1,)) == 2
    assert c.value((2,)) == 0
    with pytest.raises(DomainError):
        c.value((5,))
    with pytest.raises(ValueError):
        ExplicitConfig(basis, {(9,): 1}, win)


def test_translate_shifts_domain_and_values():
    win = Window(((Fraction(0), Fraction(4)),))
    basis = ExponentBasis.integer_lattice(1)
    c = ExplicitConfig(basis, {(1,): 5}, win)
    t = TranslateConfig(c, (10,))
    assert t.value((11,)) == 5
    assert not t.contains((1,))
    assert t.contains((14,))


def test_sum_requires_matching_bases():
    a = FloorFiberConfig(ExponentBasis.integer_lattice(1), 0, Fraction(1, 2), (1,))
    b = torus_config((0, 0), Fraction(1, 2))
    with pytest.raises(ValueError):
        SumConfig([a, b])


def test_poly_applied_is_convolution():
    c = torus_config((Fraction(1, 7), Fraction(2, 5)), Fraction(3, 11))
    f = parse_poly("X^(1,0) - X^(0,1)")
    fc = PolyAppliedConfig(f, c)
    for u in [(0, 0), (4, -3), (-6, 2)]:
        expect = c.value((u[0] - 1, u[1])) - c.value((u[0], u[1] - 1))
        assert fc.value(u) == expect


def test_lattice_config_reduction():
    c = LatticeConfig(Z2, [(2, 0), (0, 3)], {(0, 0): 1, (1, 2): 4})
    assert c.value((0, 0)) == 1
    assert c.value((2, 3)) == 1
    assert c.value((-2, -3)) == 1
    assert c.value((1, 2)) == 4
    assert c.value((3, -1)) == 4
    assert c.value((1, 0)) == 0
    assert c.known_periods() == [(2, 0), (0, 3)]


def test_lattice_config_skew_periods():
    c = LatticeConfig(Z2, [(1, 1), (0, 2)], {(0, 0): 7})
    for u in [(0, 0), (3, 1), (-2, 4)]:
        assert c.value(u) == c.value((u[0] + 1, u[1] + 1))
        assert c.value(u) == c.value((u[0], u[1] + 2))
    assert len(c.fundamental_probes()) == 2


def test_lattice_rejects_dependent_periods():
    with pytest.raises(ValueError):
        LatticeConfig(Z2, [(1, 1), (2, 2)], {(0, 0): 1})


def test_eval_config_accepts_lists():
    c = torus_config((0, 0), Fraction(1, 2))
    assert eval_config(c, [1, 1]) == c.value((1, 1))


def test_shape_validation():
    with pytest.raises(ValueError):
        Shape(())
    with pytest.raises(ValueError):
        Shape(((0, 0), (0, 0)))
    assert len(Shape(((1, 0), (0, 1)))) == 2


def test_pattern_complexity_periodic_is_exact():
    c = torus_config((0, 0), Fraction(1, 2))
    shape = Shape(((0, 0), (1, 0), (0, 1), (1, 1)))
    out = pattern_complexity(c, shape)
    assert out.exact
    assert out.probes_used == 4
    # brute recount over one full period block
    seen = set()
    for i in range(2):
        for j in range(2):
            seen.add(tuple(c.value((p[0] + i, p[1] + j)) for p in shape.points))
    assert out.count == len(seen)


def test_pattern_complexity_probed_is_lower_bound():
    c = torus_config((0, 0), Fraction(1, 3))
    shape = Shape(((0, 0), (1, 0)))
    probes = [(i, j) for i in range(3) for j in range(3)]
    probed = pattern_complexity(c, shape, probes)
    assert not probed.exact
    assert probed.count <= pattern_complexity(c, shape).count


def test_patterns_raises_outside_domain():
    win = Window(((Fraction(0), Fraction(3)),))
    basis = ExponentBasis.integer_lattice(1)
    c = ExplicitConfig(basis, {(1,): 1}, win)
    with pytest.raises(DomainError):
        patterns(c, Shape(((0,), (1,))), probes=[(3,)])


def test_probe_set_required_for_aperiodic_kinds():
    basis = ExponentBasis.integer_lattice(1)
    c = FloorFiberConfig(basis, 0, Fraction(2, 7), (1,))
    with pytest.raises(ValueError):
        pattern_complexity(c, Shape(((0,),)))


def test_pattern_equality_is_by_shape_and_values():
    s = Shape(((0,), (1,)))
    assert Pattern(s, (Fraction(0), Fraction(1))) == \
        Pattern(s, (Fraction(0), Fraction(1)))
    assert Pattern(s, (Fraction(0), Fraction(1))) != \
        Pattern(s, (Fraction(1), Fraction(0)))
