from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aperiodic.configurations import torus_config
from aperiodic.decomposition import (
    DecompositionError,
    box_points,
    box_size,
    decompose,
    integrate_step,
    required_outer_box,
    shift_intersect,
    shrunk_box,
)

DIRECTIONS = [(1, -1), (0, 1), (1, 0)]


def test_box_helpers():
    box = ((0, 3), (-1, 1))
    assert box_size(box) == 12
    assert len(list(box_points(box))) == 12
    assert box_size(((2, 1),)) == 0
    assert shift_intersect(box, (1, 0)) == ((1, 3), (-1, 1))
    assert shift_intersect(box, (-2, 1)) == ((0, 1), (0, 1))


def test_shrink_and_outer_are_inverse_bounds():
    inner = ((0, 9), (0, 9))
    outer = required_outer_box(inner, DIRECTIONS)
    got = shrunk_box(outer, DIRECTIONS)
    assert all(g_lo <= lo and hi <= g_hi
               for (g_lo, g_hi), (lo, hi) in zip(got, inner))


def test_integrate_step_recovers_shifted_difference():
    # plant c with rows constant along (0,1), difference it, integrate back
    box = ((0, 8), (0, 8))
    planted = {u: Fraction(u[0] * u[0] % 7) for u in box_points(box)}
    diff_box = shift_intersect(box, (1, 0))
    c_prime = {u: planted[(u[0] - 1, u[1])] - planted[u]
               for u in box_points(diff_box)}
    out, report = integrate_step(c_prime, diff_box, (1, 0), (0, 1))
    assert report.dropped_points == 0
    # solution is unique up to one constant per invariance line; here the
    # whole grid is one coset family with rows tied together by (0,1)
    offsets = {u: out[u] - planted[u] for u in out}
    for u in offsets:
        left = (u[0] - 1, u[1])
        if left in offsets:
            assert offsets[u] == offsets[left]


def test_integrate_step_keeps_invariance():
    box = ((0, 10), (0, 10))
    c_prime = {u: Fraction((u[0] + u[1]) % 3) for u in box_points(box)}
    # (u[0]+u[1]) % 3 is (1,-1)-invariant
    out, _ = integrate_step(c_prime, box, (0, 1), (1, -1))
    for u in box_points(box):
        prev = (u[0] - 1, u[1] + 1)
        if u in out and prev in out:
            assert out[u] == out[prev]
        below = (u[0], u[1] - 1)
        if u in out and below in out:
            assert out[below] - out[u] == c_prime[u]


def test_integrate_step_rejects_non_invariant_input():
    box = ((0, 5), (0, 5))
    c_prime = {u: Fraction(u[0] + 2 * u[1]) for u in box_points(box)}
    with pytest.raises(DecompositionError):
        integrate_step(c_prime, box, (1, 0), (0, 1))


def test_decompose_rotation_window():
    c = torus_config((Fraction(1, 7), Fraction(2, 5)), Fraction(3, 11))
    witness = decompose(c, DIRECTIONS, ((0, 24), (0, 24)))
    assert witness.certified
    assert all(chk["ok"] for chk in witness.checks)
    assert [g.direction for g in witness.components] == DIRECTIONS
    assert box_size(witness.inner_box) > 0
    # spot-check both certified identities independently
    inner = witness.inner_box
    for u in box_points(inner):
        total = sum(g.values[u] for g in witness.components)
        assert total == c.value(u)
    for g in witness.components:
        v = g.direction
        for u in box_points(shift_intersect(inner, v)):
            assert g.values[u] == g.values[(u[0] - v[0], u[1] - v[1])]


def test_decompose_single_direction():
    c = torus_config((0, 0), Fraction(1, 2))
    # constant rows: the slope-half rotation is (2,0)-invariant
    witness = decompose(c, [(2, 0)], ((0, 9), (0, 9)))
    assert witness.certified
    assert witness.inner_box == ((0, 9), (0, 9))


def test_decompose_rejects_bad_directions():
    c = torus_config((0, 0), Fraction(1, 2))
    box = ((0, 9), (0, 9))
    with pytest.raises(ValueError):
        decompose(c, [], box)
    with pytest.raises(ValueError):
        decompose(c, [(1, 0), (2, 0)], box)
    with pytest.raises(ValueError):
        decompose(c, [(0, 0)], box)


def test_decompose_fails_on_non_invariant_single_direction():
    c = torus_config((0, 0), Fraction(1, 2))
    # the full rotation is not (1,0)-invariant, so one direction cannot work
    with pytest.raises(DecompositionError):
        decompose(c, [(1, 0)], ((0, 9), (0, 9)))


def test_decompose_window_too_small():
    c = torus_config((0, 0), Fraction(1, 3))
    # a 2x2 window leaves no pair to exercise the invariance identities,
    # so the result must not claim certification
    witness = decompose(c, DIRECTIONS, ((0, 1), (0, 1)))
    assert not witness.certified
    assert any(chk["points"] == 0 for chk in witness.checks)
    # and an outright impossible window raises
    with pytest.raises(DecompositionError):
        decompose(c, DIRECTIONS, ((0, 0), (0, 0)))


@given(st.fractions(min_value=-1, max_value=1, max_denominator=8),
       st.fractions(min_value=-1, max_value=1, max_denominator=8),
       st.fractions(min_value=0, max_value=1, max_denominator=8))
@settings(max_examples=15, deadline=None)
def test_decompose_certifies_for_random_rotations(z1, z2, alpha):
    c = torus_config((z1, z2), alpha)
    witness = decompose(c, DIRECTIONS, ((0, 17), (0, 17)))
    assert witness.certified
