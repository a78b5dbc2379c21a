"""Support geometry: which directions admit a forcing extreme vertex.

For planar supports the outward edge normals of the convex hull are
exactly the directions without a unique maximizer, so coverage is decided
exactly.  Higher dimensions fall back to sampled directions and say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random
from typing import Optional, Sequence

from .algebra import (
    GroupPoint,
    LaurentPoly,
    has_vertex_in_direction,
    primitive_ray,
    vsub,
)


def convex_hull_2d(points: Sequence[tuple]) -> list:
    """Counterclockwise hull of integer points, corners only."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def edge_normal_rays(hull: Sequence[tuple]) -> list:
    """Primitive outward normals of a ccw hull; both sides for a segment."""
    if len(hull) <= 1:
        return []
    if len(hull) == 2:
        d = vsub(hull[1], hull[0])
        n = (d[1], -d[0])
        return sorted({primitive_ray(n), primitive_ray((-n[0], -n[1]))})
    rays = set()
    for a, b in zip(hull, hull[1:] + hull[:1]):
        d = vsub(b, a)
        rays.add(primitive_ray((d[1], -d[0])))
    return sorted(rays)


def _embedded_int_support(f: LaurentPoly) -> list:
    return [f.basis.int_embed(v) for v in f.support()]


@dataclass
class MemberCoverage:
    poly: LaurentPoly
    hull: list
    uncovered_rays: list


@dataclass
class CoverageReport:
    mode: str                  # exact-1d | exact-2d | sampled
    members: list
    uncovered: list            # directions no member covers
    covered_all: bool
    sampled_directions: Optional[list] = None


def vertex_coverage(family: Sequence[LaurentPoly],
                    directions: Optional[Sequence[GroupPoint]] = None,
                    samples: int = 64, seed: int = 0) -> CoverageReport:
    """Directions in which no family member has a unique extreme point.

    Dimension 1: every nonzero polynomial has one, so nothing is
    uncovered.  Dimension 2: exact via hull edge normals, intersected
    over the family.  Higher dimensions: sampled directions plus any the
    caller supplies, reported as sampled rather than exact.
    """
    fam = list(family)
    if not fam:
        raise ValueError("family must be non-empty")
    dim = fam[0].basis.dim
    for f in fam:
        if f.basis.dim != dim:
            raise ValueError("family members live in different dimensions")
        if f.is_zero():
            raise ValueError("zero polynomial has no support geometry")

    if dim == 1:
        members = [MemberCoverage(f, [], []) for f in fam]
        return CoverageReport("exact-1d", members, [], True)

    if dim == 2:
        members = []
        common: Optional[set] = None
        for f in fam:
            hull = convex_hull_2d(_embedded_int_support(f))
            rays = set(edge_normal_rays(hull))
            members.append(MemberCoverage(f, hull, sorted(rays)))
            common = rays if common is None else common & rays
        uncovered = sorted(common or set())
        return CoverageReport("exact-2d", members, uncovered, not uncovered)

    rng = random.Random(seed)
    dirs = [tuple(int(x) for x in d) for d in (directions or [])]
    while len(dirs) < samples:
        cand = tuple(rng.randint(-9, 9) for _ in range(dim))
        if any(cand) and cand not in dirs:
            dirs.append(cand)
    members = []
    uncovered = []
    for w in dirs:
        if not any(has_vertex_in_direction(f, w) for f in fam):
            uncovered.append(w)
    for f in fam:
        misses = [w for w in dirs if not has_vertex_in_direction(f, w)]
        members.append(MemberCoverage(f, [], misses))
    return CoverageReport("sampled", members, uncovered, not uncovered,
                          sampled_directions=dirs)


# ---------------------------------------------------------------------------
# hyperplane transversality

@dataclass
class HyperplaneVerdict:
    direction: GroupPoint
    ok: bool
    witness: Optional[GroupPoint] = None


def hyperplane_condition(f: LaurentPoly,
                         directions: Sequence[GroupPoint]) -> list:
    """Check no nonzero support point is orthogonal to each direction.

    The polynomial must have the origin in its support; shift it there
    first if needed.  A failing direction reports the support point on
    the orthogonal hyperplane.
    """
    zero = (0,) * f.basis.rank
    if zero not in f.terms:
        raise ValueError("origin must lie in the support; "
                         "shift the polynomial so it does")
    out = []
    for w in directions:
        w = tuple(w)
        if len(w) != f.basis.dim:
            raise ValueError("direction arity must match the embedded dimension")
        if not any(w):
            raise ValueError("directions must be nonzero")
        witness = None
        for v in f.support():
            if v == zero:
                continue
            dot = sum(Fraction(a) * b for a, b in zip(f.basis.embed(v), w))
            if dot == 0:
                witness = v
                break
        out.append(HyperplaneVerdict(w, witness is None, witness))
    return out
