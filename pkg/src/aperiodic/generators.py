"""Reference point sets: named 1-D and 2-D clouds used throughout.

The irrational constants enter as rational surrogates from the
precision module, so every generated cloud is exact by construction and
every claim downstream is a claim about the surrogate cloud.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor, lcm
from typing import Optional, Sequence

from .algebra import ExponentBasis
from .delone import PointCloud
from .precision import golden_surrogate, pi_surrogate, sqrt_surrogate
from .window import Window

EXAMPLE_NAMES = ("S1", "S2", "S3", "Ex5.6", "Ex7.3", "fibonacci")


def example_set(name: str, window: Window,
                alpha: Optional[Fraction] = None) -> PointCloud:
    """Build one of the named reference clouds restricted to the window."""
    if name == "S1":
        return reciprocal_perturbed_integers(window)
    if name == "S2":
        return slope_lattice_with_gaps(window, alpha)
    if name == "S3":
        return negatives_against_slope(window, alpha)
    if name == "Ex5.6":
        return doubled_line_lattices(window, alpha)
    if name == "Ex7.3":
        return rows_with_stretched_axis(window, alpha)
    if name == "fibonacci":
        return fibonacci_chain(window)
    raise ValueError(f"unknown example name {name!r}; choose from {EXAMPLE_NAMES}")


def cloud_from_rationals(values: Sequence[Fraction], window: Window,
                         colors: Optional[dict] = None, label: str = "") -> PointCloud:
    """1-D cloud over a single generator that makes all values integral."""
    vals = sorted(set(Fraction(v) for v in values))
    if not vals:
        raise ValueError("cannot build a cloud from no points")
    denom = lcm(*(v.denominator for v in vals))
    basis = ExponentBasis.line_with_generators([Fraction(1, denom)], [(0,)])
    points = [(int(v * denom),) for v in vals]
    color_map = None
    if colors:
        color_map = {(int(Fraction(k) * denom),): c for k, c in colors.items()}
    return PointCloud(basis, points, window, color_map, label)


def cloud_from_rational_pairs(pairs, window: Window, label: str = "") -> PointCloud:
    """2-D cloud over generators (1/L, 0), (0, 1/L)."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in pairs))
    if not pts:
        raise ValueError("cannot build a cloud from no points")
    denom = lcm(*(c.denominator for p in pts for c in p))
    basis = ExponentBasis(2, 2,
                          ((Fraction(1, denom), Fraction(0)),
                           (Fraction(0), Fraction(1, denom))),
                          ((0, 1),))
    points = [(int(x * denom), int(y * denom)) for x, y in pts]
    return PointCloud(basis, points, window, None, label)


def reciprocal_perturbed_integers(window: Window) -> PointCloud:
    """Points n + 1/n for nonzero integers n, inside the window."""
    lo, hi = window.bounds[0]
    bound = int(max(abs(lo), abs(hi))) + 2
    values = []
    for n in range(-bound, bound + 1):
        if n == 0:
            continue
        v = Fraction(n) + Fraction(1, n)
        if lo <= v <= hi:
            values.append(v)
    return cloud_from_rationals(values, window, label="S1")


def slope_lattice_with_gaps(window: Window,
                            alpha: Optional[Fraction] = None) -> PointCloud:
    """Multiples of the slope, plus the integers that avoid their floors."""
    a = Fraction(alpha) if alpha is not None else pi_surrogate()
    if a <= 0:
        raise ValueError("slope must be positive")
    lo, hi = window.bounds[0]
    basis = ExponentBasis.line_with_generators([Fraction(1), a], [(0,), (1,)])
    points = set()
    n_lo, n_hi = ceil(lo / a), floor(hi / a)
    excluded = set()
    pad = 2
    for n in range(ceil((lo - pad) / a), floor((hi + pad) / a) + 1):
        x = n * a
        excluded.add(floor(x))
        excluded.add(ceil(x))
    for n in range(n_lo, n_hi + 1):
        points.add((0, n))
    for k in range(ceil(lo), floor(hi) + 1):
        if k not in excluded:
            points.add((k, 0))
    return PointCloud(basis, sorted(points), window, None, "S2")


def negatives_against_slope(window: Window,
                            alpha: Optional[Fraction] = None) -> PointCloud:
    """Non-positive integers on the left, slope multiples on the right."""
    a = Fraction(alpha) if alpha is not None else pi_surrogate()
    if a <= 0:
        raise ValueError("slope must be positive")
    lo, hi = window.bounds[0]
    basis = ExponentBasis.line_with_generators([Fraction(1), a], [(0,), (1,)])
    points = set()
    for k in range(ceil(lo), min(0, floor(hi)) + 1):
        points.add((k, 0))
    for n in range(1, floor(hi / a) + 1):
        if lo <= n * a <= hi:
            points.add((0, n))
    if lo <= 0 <= hi:
        points.add((0, 0))
    return PointCloud(basis, sorted(points), window, None, "S3")


def doubled_line_lattices(window: Window,
                          alpha: Optional[Fraction] = None) -> PointCloud:
    """Integers overlaid with slope multiples; the origin carries weight 2."""
    a = Fraction(alpha) if alpha is not None else sqrt_surrogate(2)
    lo, hi = window.bounds[0]
    basis = ExponentBasis.line_with_generators([Fraction(1), a], [(0,), (1,)])
    points = set()
    colors = {}
    for k in range(ceil(lo), floor(hi) + 1):
        points.add((k, 0))
    for n in range(ceil(lo / a), floor(hi / a) + 1):
        if n != 0:
            points.add((0, n))
    if (0, 0) in points:
        colors[(0, 0)] = Fraction(2)
    return PointCloud(basis, sorted(points), window, colors, "Ex5.6")


def rows_with_stretched_axis(window: Window,
                             alpha: Optional[Fraction] = None) -> PointCloud:
    """Integer rows everywhere except height zero, which runs on the slope."""
    a = Fraction(alpha) if alpha is not None else sqrt_surrogate(2)
    (xlo, xhi), (ylo, yhi) = window.bounds
    basis = ExponentBasis(3, 2,
                          ((Fraction(1), Fraction(0)),
                           (a, Fraction(0)),
                           (Fraction(0), Fraction(1))),
                          ((0, 2), (1,)))
    points = []
    for i in range(ceil(ylo), floor(yhi) + 1):
        if i == 0:
            for k in range(ceil(xlo / a), floor(xhi / a) + 1):
                points.append((0, k, 0))
        else:
            for k in range(ceil(xlo), floor(xhi) + 1):
                points.append((k, 0, i))
    return PointCloud(basis, points, window, None, "Ex7.3")


def fibonacci_word(min_len: int) -> str:
    """Substitution word over a, b with a -> ab, b -> a."""
    word = "a"
    while len(word) < min_len:
        word = "".join("ab" if ch == "a" else "a" for ch in word)
    return word


def fibonacci_chain(window: Window,
                    phi: Optional[Fraction] = None) -> PointCloud:
    """Chain anchored at 0 with gap phi for a, gap 1 for b."""
    g = Fraction(phi) if phi is not None else golden_surrogate()
    lo, hi = window.bounds[0]
    if hi <= 0:
        raise ValueError("the chain grows from 0 to the right")
    approx_steps = int(hi) + 4
    word = fibonacci_word(approx_steps)
    basis = ExponentBasis.line_with_generators([Fraction(1), g], [(0,), (1,)])
    points = []
    pos = Fraction(0)
    coord = (0, 0)
    if lo <= 0:
        points.append(coord)
    for ch in word:
        if ch == "a":
            pos += g
            coord = (coord[0], coord[1] + 1)
        else:
            pos += 1
            coord = (coord[0] + 1, coord[1])
        if pos > hi:
            break
        if pos >= lo:
            points.append(coord)
    return PointCloud(basis, points, window, None, "fibonacci")


def ideal_crystal_1d(spacing: Fraction, motif: Sequence[Fraction],
                     window: Window, label: str = "crystal") -> PointCloud:
    """Lattice spacing * Z plus a finite motif, restricted to the window."""
    s = Fraction(spacing)
    if s <= 0:
        raise ValueError("lattice spacing must be positive")
    lo, hi = window.bounds[0]
    values = set()
    for f in motif:
        f = Fraction(f)
        n_lo = ceil((lo - f) / s)
        n_hi = floor((hi - f) / s)
        for n in range(n_lo, n_hi + 1):
            values.add(n * s + f)
    return cloud_from_rationals(sorted(values), window, label=label)


def ideal_crystal_2d(periods, motif, window: Window,
                     label: str = "crystal2d") -> PointCloud:
    """Integer lattice spanned by two periods plus a rational motif."""
    (p1, p2) = [(Fraction(a), Fraction(b)) for a, b in periods]
    (xlo, xhi), (ylo, yhi) = window.bounds
    extent = max(xhi - xlo, yhi - ylo)
    reach_1 = int(extent / max(abs(p1[0]), abs(p1[1]))) + 3
    reach_2 = int(extent / max(abs(p2[0]), abs(p2[1]))) + 3
    pts = set()
    for i in range(-reach_1, reach_1 + 1):
        for j in range(-reach_2, reach_2 + 1):
            base = (i * p1[0] + j * p2[0], i * p1[1] + j * p2[1])
            for f in motif:
                x, y = base[0] + Fraction(f[0]), base[1] + Fraction(f[1])
                if xlo <= x <= xhi and ylo <= y <= yhi:
                    pts.add((x, y))
    return cloud_from_rational_pairs(sorted(pts), window, label=label)
