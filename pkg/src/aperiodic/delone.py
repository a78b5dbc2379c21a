"""Window-based analysis of discrete point sets with exact arithmetic.

Every quantity is computed from the points inside a declared window, so
verdicts about infinite-set properties are two-window stabilization
statements, never proofs.  Distances compare as exact squared rationals
on integer-scaled embeddings; square roots only ever appear as certified
rational brackets.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .algebra import ExponentBasis, GroupPoint, vadd, vsub
from .configurations import Alphabet, ExplicitConfig
from .linalg import integer_rank
from .window import Window

CONSISTENT = "consistent"
FAILS = "fails-with-witness"
INCONCLUSIVE = "inconclusive"
MEYER_OK = "meyer-consistent"
NOT_MEYER = "not-meyer"

# rational over-approximation of sqrt(2), good to 3e-6
_SQRT2_UP = Fraction(577, 408)


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None
    detail: str = ""


@dataclass(frozen=True)
class Patch:
    """Center-relative content of a ball around one center point."""

    center: GroupPoint
    content: frozenset


class PointCloud:
    """Finite colored point set, exact group coordinates, declared window."""

    def __init__(self, basis: ExponentBasis, points: Sequence[GroupPoint],
                 window: Window, colors: Optional[dict] = None, label: str = ""):
        if window.dim != basis.dim:
            raise ValueError("window dimension must match the embedding")
        pts = [tuple(int(x) for x in p) for p in points]
        if len(set(pts)) != len(pts):
            raise ValueError("cloud points must be distinct")
        for p in pts:
            if len(p) != basis.rank:
                raise ValueError("point arity must equal basis rank")
        self.basis = basis
        self.points = tuple(sorted(pts))
        self.window = window
        self.label = label
        self.colors = {}
        if colors:
            for p, c in colors.items():
                p = tuple(int(x) for x in p)
                if p not in set(self.points):
                    raise ValueError(f"color given for unknown point {p}")
                self.colors[p] = Fraction(c)
        self.scale = basis.scale
        self._emb = {p: basis.int_embed(p) for p in self.points}
        bounds = window.scaled_int_bounds(self.scale)
        for p, e in self._emb.items():
            if not all(lo <= x <= hi for x, (lo, hi) in zip(e, bounds)):
                raise ValueError(f"point {p} lies outside the window")
        self._by_x = sorted(self.points, key=lambda p: self._emb[p])

    def __len__(self) -> int:
        return len(self.points)

    def emb(self, p: GroupPoint) -> tuple:
        return self._emb[p]

    def color(self, p: GroupPoint) -> Fraction:
        return self.colors.get(p, Fraction(1))

    def restricted(self, window: Window) -> "PointCloud":
        bounds = window.scaled_int_bounds(self.scale)
        keep = [p for p in self.points
                if all(lo <= x <= hi
                       for x, (lo, hi) in zip(self._emb[p], bounds))]
        colors = {p: c for p, c in self.colors.items() if p in set(keep)}
        return PointCloud(self.basis, keep, window, colors, self.label)

    def describe(self) -> str:
        name = self.label or "cloud"
        return f"{name}[{len(self.points)} points, window {self.window.describe()}]"


def config_from_cloud(cloud: PointCloud) -> ExplicitConfig:
    """Indicator configuration of the cloud; colors become values."""
    values = {p: cloud.color(p) for p in cloud.points}
    alphabet = Alphabet(tuple(set(values.values()) | {Fraction(0)}))
    return ExplicitConfig(cloud.basis, values, cloud.window, alphabet)


# ---------------------------------------------------------------------------
# scaled-integer distance helpers

def _sq(v: Sequence[int]) -> int:
    return sum(x * x for x in v)


def _sq_dist(a: Sequence[int], b: Sequence[int]) -> int:
    return sum((x - y) * (x - y) for x, y in zip(a, b))


def _sqrt_bracket(sq: int, denom: int, bits: int = 48) -> tuple:
    """Certified rational bracket of sqrt(sq)/denom."""
    root = isqrt(sq << (2 * bits))
    lo = Fraction(root, (1 << bits) * denom)
    hi = Fraction(root + 1, (1 << bits) * denom)
    return lo, hi


def _sqrt_frac_bracket(q: Fraction, denom: int) -> tuple:
    """Certified rational bracket of sqrt(q)/denom for rational q >= 0."""
    num, den = q.numerator, q.denominator
    return _sqrt_bracket(num * den, den * denom)


def _close_index_pairs(emb: list, max_sq: int):
    """Index pairs at squared distance <= max_sq, by x-sweep."""
    order = sorted(range(len(emb)), key=lambda i: emb[i])
    for a in range(len(order)):
        i = order[a]
        for b in range(a + 1, len(order)):
            j = order[b]
            dx = emb[j][0] - emb[i][0]
            if dx * dx > max_sq:
                break
            if _sq_dist(emb[i], emb[j]) <= max_sq:
                yield i, j


# ---------------------------------------------------------------------------
# Delone constants

@dataclass
class DeloneReport:
    packing_radius: Fraction
    packing_exact: bool
    packing_radius_sq: Fraction
    packing_witness: tuple
    covering_lower: Optional[Fraction]
    covering_upper: Optional[Fraction]
    covering_witness: object
    flags: dict
    witnesses: dict = field(default_factory=dict)


def _min_pair_sq(cloud: PointCloud) -> tuple:
    pts = cloud.points
    emb = [cloud.emb(p) for p in pts]
    best = None
    pair = None
    order = sorted(range(len(pts)), key=lambda i: emb[i])
    for a in range(len(order)):
        i = order[a]
        for b in range(a + 1, len(order)):
            j = order[b]
            dx = emb[j][0] - emb[i][0]
            if best is not None and dx * dx >= best:
                break
            d2 = _sq_dist(emb[i], emb[j])
            if d2 and (best is None or d2 < best):
                best, pair = d2, (pts[i], pts[j])
    return best, pair


def _covering_1d(cloud: PointCloud) -> tuple:
    emb = sorted(e[0] for e in (cloud.emb(p) for p in cloud.points))
    best = 0
    witness = None
    for a, b in zip(emb, emb[1:]):
        if b - a > best:
            best = b - a
            witness = Fraction(a + b, 2 * cloud.scale)
    half = Fraction(best, 2 * cloud.scale)
    return half, half, witness


def _covering_grid(cloud: PointCloud, pitch: Fraction) -> tuple:
    """Grid bracket of the farthest-empty-ball radius, dim 2.

    The lower bound comes from grid points whose empty ball stays inside
    the window (certified against unseen outside points); the upper
    bound adds the grid reach pitch*sqrt(2)/2 to the largest observed
    distance.
    """
    scale = cloud.scale
    emb = [cloud.emb(p) for p in cloud.points]
    step = Fraction(pitch) * scale
    if step <= 0:
        raise ValueError("grid pitch must be positive")
    axes = []
    for lo, hi in cloud.window.bounds:
        a, b = lo * scale, hi * scale
        n = int((b - a) / step)
        axes.append([a + k * step for k in range(n + 1)] + [b])
    best_any = best_cert = None
    best_any_g = None
    bounds = [(lo * scale, hi * scale) for lo, hi in cloud.window.bounds]
    for gx in axes[0]:
        for gy in axes[1]:
            g = (gx, gy)
            d2 = min((e[0] - gx) ** 2 + (e[1] - gy) ** 2 for e in emb)
            if best_any is None or d2 > best_any:
                best_any, best_any_g = d2, g
            room = min(min(g[k] - lo, hi - g[k])
                       for k, (lo, hi) in enumerate(bounds))
            if room >= 0 and room * room >= d2:
                if best_cert is None or d2 > best_cert:
                    best_cert = d2
    lower = Fraction(0)
    if best_cert is not None:
        lower = _sqrt_frac_bracket(Fraction(best_cert), scale)[0]
    upper = None
    if best_any is not None:
        upper = (_sqrt_frac_bracket(Fraction(best_any), scale)[1]
                 + Fraction(pitch) * _SQRT2_UP / 2)
    witness = (tuple(Fraction(x) / scale for x in best_any_g)
               if best_any_g else None)
    return lower, upper, witness


def delone_constants(cloud: PointCloud,
                     grid_pitch: Optional[Fraction] = None) -> DeloneReport:
    """Packing radius exactly, covering radius as a certified bracket.

    Packing compares squared distances rationally; the radius itself is
    exact when the minimal distance is a rational square and otherwise a
    tight lower approximation (packing_exact marks which).  Covering is
    the exact half maximal gap for dim 1 and a grid bracket for dim 2.
    """
    if len(cloud) < 2:
        raise ValueError("delone constants need at least two points")
    min_sq, pair = _min_pair_sq(cloud)
    scale = cloud.scale
    root = isqrt(min_sq)
    exact = root * root == min_sq
    r_sq = Fraction(min_sq, 4 * scale * scale)
    if exact:
        packing = Fraction(root, 2 * scale)
    else:
        lo, _ = _sqrt_bracket(min_sq, 2 * scale)
        packing = lo
    if cloud.basis.dim == 1:
        cov_lo, cov_hi, cov_wit = _covering_1d(cloud)
    elif cloud.basis.dim == 2:
        pitch = grid_pitch if grid_pitch is not None else cloud.window.min_span() / 16
        cov_lo, cov_hi, cov_wit = _covering_grid(cloud, Fraction(pitch))
    else:
        raise ValueError("covering search is implemented for dim 1 and 2")

    flags = {}
    witnesses = {}
    inner = cloud.window.shrunk(cloud.window.min_span() / 4)
    inner_cloud = cloud.restricted(inner) if not inner.is_empty() else None
    if inner_cloud is None or len(inner_cloud) < 2:
        flags["uniformly_discrete"] = INCONCLUSIVE
        flags["relatively_dense_in_window"] = INCONCLUSIVE
    else:
        inner_sq, _ = _min_pair_sq(inner_cloud)
        if min_sq < inner_sq:
            flags["uniformly_discrete"] = FAILS
            witnesses["uniformly_discrete"] = pair
        else:
            flags["uniformly_discrete"] = CONSISTENT
        if cloud.basis.dim == 1:
            in_lo, _, _ = _covering_1d(inner_cloud)
            full_lo = cov_lo
            if full_lo > in_lo:
                flags["relatively_dense_in_window"] = FAILS
                witnesses["relatively_dense_in_window"] = cov_wit
            else:
                flags["relatively_dense_in_window"] = CONSISTENT
        else:
            flags["relatively_dense_in_window"] = (
                CONSISTENT if cov_hi is not None else INCONCLUSIVE)
    return DeloneReport(packing, exact, r_sq, pair, cov_lo, cov_hi, cov_wit,
                        flags, witnesses)


# ---------------------------------------------------------------------------
# patches

@dataclass
class PatchCountResult:
    count: int
    lower_bound: bool
    centers: int
    radius: Fraction
    patches: tuple


def patches(cloud: PointCloud, radius) -> list:
    """One patch per admissible center; centers keep the margin rule.

    A point is an admissible center when the closed ball of the given
    radius around it stays inside the window.
    """
    t = Fraction(radius)
    if t <= 0:
        raise ValueError("patch radius must be positive")
    scale = cloud.scale
    t_scaled = t * scale
    centers = []
    for p in cloud.points:
        e = cloud.emb(p)
        ok = True
        for x, (lo, hi) in zip(e, cloud.window.bounds):
            if Fraction(x, scale) - t < lo or Fraction(x, scale) + t > hi:
                ok = False
                break
        if ok:
            centers.append(p)
    if not centers:
        raise ValueError(
            f"no admissible centers: window too small for patch radius {t}")
    emb = {p: cloud.emb(p) for p in cloud.points}
    max_sq_num = t_scaled.numerator ** 2
    max_sq_den = t_scaled.denominator ** 2
    by_x = cloud._by_x
    xs = [emb[p][0] for p in by_x]
    dx_max = t_scaled.numerator // t_scaled.denominator + 1
    out = []
    for c in centers:
        ec = emb[c]
        lo_i = bisect.bisect_left(xs, ec[0] - dx_max)
        hi_i = bisect.bisect_right(xs, ec[0] + dx_max)
        content = []
        for q in by_x[lo_i:hi_i]:
            d2 = _sq_dist(emb[q], ec)
            if d2 * max_sq_den <= max_sq_num:
                content.append(vsub(q, c))
        out.append(Patch(c, frozenset(content)))
    return out


def patch_count(cloud: PointCloud, radius) -> PatchCountResult:
    """Number of distinct patches at the given radius, a lower bound."""
    ps = patches(cloud, radius)
    distinct = set(p.content for p in ps)
    return PatchCountResult(len(distinct), True, len(ps), Fraction(radius),
                            tuple(ps))


@dataclass
class LagariasReport:
    trigger: Optional[Fraction]
    rows: list
    covering_upper: Fraction
    caveat: str


def lagarias_test(cloud: PointCloud, t_grid: Sequence,
                  constants: Optional[DeloneReport] = None) -> LagariasReport:
    """Scan radii for N(T) < T / (2 R); report the first trigger.

    A trigger is evidence of strong periodicity for the infinite set;
    on a window it is exactly that, evidence, and the caveat says so.
    """
    rep = constants if constants is not None else delone_constants(cloud)
    if rep.covering_upper is None:
        raise ValueError("covering radius bracket required for the threshold test")
    r_up = rep.covering_upper
    rows = []
    trigger = None
    for t in t_grid:
        t = Fraction(t)
        result = patch_count(cloud, t)
        threshold = t / (2 * r_up)
        fired = result.count < threshold
        rows.append({"T": t, "count": result.count, "threshold": threshold,
                     "trigger": fired})
        if fired and trigger is None:
            trigger = t
    caveat = ("window-restricted patch counts are lower bounds; a trigger is "
              "evidence, not a proof, of strong periodicity")
    return LagariasReport(trigger, rows, r_up, caveat)


# ---------------------------------------------------------------------------
# class tests

@dataclass
class ClassReport:
    flc: Verdict
    meyer: Verdict
    finitely_generated: dict


def _near_diffs(cloud: PointCloud, radius: Fraction) -> set:
    """Group-coordinate differences with embedded length <= radius."""
    emb = [cloud.emb(p) for p in cloud.points]
    scaled = radius * cloud.scale
    max_sq_num = scaled.numerator ** 2
    max_sq_den = scaled.denominator ** 2
    limit = max_sq_num // max_sq_den + 1
    diffs = set()
    pts = cloud.points
    for i, j in _close_index_pairs(emb, limit):
        if _sq_dist(emb[i], emb[j]) * max_sq_den <= max_sq_num:
            diffs.add(vsub(pts[j], pts[i]))
            diffs.add(vsub(pts[i], pts[j]))
    diffs.add((0,) * cloud.basis.rank)
    return diffs


def class_tests(cloud: PointCloud, epsilon=None,
                constants: Optional[DeloneReport] = None) -> ClassReport:
    """Finite local complexity, Meyer, and finite generation, in-window.

    flc compares the short difference set on two nested windows; meyer
    looks for two distinct differences closer than epsilon (default a
    quarter of the packing radius); finite generation reports the rank
    of the integer span of observed differences, which always exists.
    """
    rep = constants if constants is not None else delone_constants(cloud)
    if rep.covering_upper is None:
        raise ValueError("covering bracket required for the flc ball radius")
    radius = 2 * rep.covering_upper

    inner_window = cloud.window.shrunk(cloud.window.min_span() / 4)
    diffs_full = _near_diffs(cloud, radius)
    if inner_window.is_empty():
        flc = Verdict(INCONCLUSIVE, detail="window too small to nest")
    else:
        inner_cloud = cloud.restricted(inner_window)
        if len(inner_cloud) < 2:
            flc = Verdict(INCONCLUSIVE, detail="inner window nearly empty")
        else:
            diffs_inner = _near_diffs(inner_cloud, radius)
            if diffs_full == diffs_inner:
                flc = Verdict(CONSISTENT,
                              detail=f"{len(diffs_full)} differences inside radius {radius}, stable")
            else:
                fresh = sorted(diffs_full - diffs_inner)
                flc = Verdict(FAILS, witness=fresh[0],
                              detail=(f"difference set grew from {len(diffs_inner)} "
                                      f"to {len(diffs_full)} with the window"))

    eps = Fraction(epsilon) if epsilon is not None else rep.packing_radius / 4
    meyer = _meyer_verdict(cloud, eps)

    base = cloud.points[0]
    rows = [list(vsub(p, base)) for p in cloud.points[1:]]
    rank = integer_rank(rows) if rows else 0
    fin = {"verdict": True, "rank": rank,
           "detail": "coordinates live in a finitely generated group by construction"}
    return ClassReport(flc, meyer, fin)


def _meyer_verdict(cloud: PointCloud, eps: Fraction) -> Verdict:
    pts = cloud.points
    emb = [cloud.emb(p) for p in pts]
    diff_map = {}
    for i in range(len(pts)):
        for j in range(len(pts)):
            if i == j:
                continue
            d = vsub(pts[j], pts[i])
            if d not in diff_map:
                diff_map[d] = vsub(emb[j], emb[i])
    items = sorted(diff_map.items(), key=lambda kv: kv[1])
    coords = [kv[1] for kv in items]
    eps_scaled = eps * cloud.scale
    max_sq_num = eps_scaled.numerator ** 2
    max_sq_den = eps_scaled.denominator ** 2
    for a in range(len(coords)):
        for b in range(a + 1, len(coords)):
            dx = coords[b][0] - coords[a][0]
            if dx * dx * max_sq_den >= max_sq_num:
                break
            if _sq_dist(coords[a], coords[b]) * max_sq_den < max_sq_num:
                return Verdict(NOT_MEYER,
                               witness=(items[a][0], items[b][0]),
                               detail=(f"differences closer than epsilon={eps}"))
    return Verdict(MEYER_OK,
                   detail=f"no two observed differences within epsilon={eps}")


# ---------------------------------------------------------------------------
# pattern count with a sampling shape (Meyer H_T inequality)

@dataclass
class MeyerHTReport:
    T: Fraction
    u_set: tuple
    lhs: int
    rhs: int
    patch_classes: int
    holds: bool
    caveat: str


def meyer_HT(cloud: PointCloud, T,
             constants: Optional[DeloneReport] = None) -> MeyerHTReport:
    """Compare the pattern count of the augmented shape with its bound.

    The shape is U union (S inside the ball of radius T), where U
    collects the in-window sums a+b-c that land inside the covering
    bracket.  The pattern count over anchors s-u is compared against
    1 + |U| * N(T + R).
    """
    t = Fraction(T)
    rep = constants if constants is not None else delone_constants(cloud)
    if rep.covering_upper is None:
        raise ValueError("covering bracket required")
    r_up = rep.covering_upper
    pts = cloud.points
    pset = set(pts)
    emb = {p: cloud.emb(p) for p in pts}
    scale = cloud.scale

    u_set = _sum_diff_ball(cloud, r_up)

    t_scaled = t * scale
    t_num, t_den = t_scaled.numerator ** 2, t_scaled.denominator ** 2
    ball = [p for p in pts if _sq(emb[p]) * t_den <= t_num]
    shape = sorted(set(u_set) | set(ball))

    shape_emb = [cloud.basis.int_embed(h) for h in shape]
    probe_bounds = []
    for axis, (lo, hi) in enumerate(cloud.window.bounds):
        h_lo = min(e[axis] for e in shape_emb)
        h_hi = max(e[axis] for e in shape_emb)
        probe_bounds.append((lo * scale - h_lo, hi * scale - h_hi))

    probes = set()
    for s in pts:
        es = emb[s]
        for u in u_set:
            eu = cloud.basis.int_embed(u)
            tvec = vsub(s, u)
            et = [a - b for a, b in zip(es, eu)]
            if all(lo <= x <= hi for x, (lo, hi) in zip(et, probe_bounds)):
                probes.add(tvec)
    if not probes:
        raise ValueError(f"window too small for the shape at T={t}")

    seen = set()
    for tv in probes:
        content = frozenset(h for h in shape if vadd(h, tv) in pset)
        seen.add(content)
    seen.discard(frozenset())
    lhs = len(seen) + 1  # the empty pattern always occurs in the plane

    n_patches = patch_count(cloud, t + r_up)
    rhs = 1 + len(u_set) * n_patches.count
    caveat = ("window-restricted counts on both sides; anchors range over "
              "in-window points shifted by U")
    return MeyerHTReport(t, tuple(sorted(u_set)), lhs, rhs, n_patches.count,
                         lhs <= rhs, caveat)


def _sum_diff_ball(cloud: PointCloud, radius: Fraction) -> set:
    """In-window elements of (S + S - S) inside the ball of given radius."""
    pts = cloud.points
    emb = {p: cloud.emb(p) for p in pts}
    scale = cloud.scale
    scaled = radius * scale
    num, den = scaled.numerator ** 2, scaled.denominator ** 2
    by_x = cloud._by_x
    xs = [emb[p][0] for p in by_x]
    out = set()
    dx_max = isqrt(num // den) + 1
    for a in pts:
        ea = emb[a]
        for c in pts:
            ec = emb[c]
            center = [x - y for x, y in zip(ec, ea)]
            lo_i = bisect.bisect_left(xs, center[0] - dx_max)
            hi_i = bisect.bisect_right(xs, center[0] + dx_max)
            for b in by_x[lo_i:hi_i]:
                eb = emb[b]
                w = [p + q - r for p, q, r in zip(ea, eb, ec)]
                if _sq(w) * den <= num:
                    out.add(vadd(vsub(a, c), b))
    return out


# ---------------------------------------------------------------------------
# Minkowski sums

@dataclass
class MinkowskiReport:
    input_flc: Verdict
    sum_flc: Verdict
    sum_uniform: str
    sum_uniform_witness: object
    lemma_applies: bool
    consistent: bool
    sum_size: int


def minkowski_flc(cloud: PointCloud, finite_set: Sequence[GroupPoint]) -> MinkowskiReport:
    """Form S + F inside the window and re-run the class diagnostics.

    When S itself looks flc, S + F must too; uniform discreteness can
    still fail, and the report carries the witness pair when it does.
    """
    fpts = [tuple(int(x) for x in p) for p in finite_set]
    if not fpts:
        raise ValueError("the finite summand must be non-empty")
    bounds = cloud.window.scaled_int_bounds(cloud.scale)
    summed = set()
    for s in cloud.points:
        for f in fpts:
            q = vadd(s, f)
            e = cloud.basis.int_embed(q)
            if all(lo <= x <= hi for x, (lo, hi) in zip(e, bounds)):
                summed.add(q)
    if len(summed) < 2:
        raise ValueError("the Minkowski sum leaves fewer than two window points")
    sum_cloud = PointCloud(cloud.basis, sorted(summed), cloud.window,
                           label=(cloud.label + "+F") if cloud.label else "sum")
    base = class_tests(cloud)
    sum_rep = delone_constants(sum_cloud)
    sum_classes = class_tests(sum_cloud, constants=sum_rep)
    lemma_applies = base.flc.status == CONSISTENT
    consistent = (not lemma_applies) or sum_classes.flc.status == CONSISTENT
    return MinkowskiReport(
        input_flc=base.flc,
        sum_flc=sum_classes.flc,
        sum_uniform=sum_rep.flags.get("uniformly_discrete", INCONCLUSIVE),
        sum_uniform_witness=sum_rep.witnesses.get("uniformly_discrete"),
        lemma_applies=lemma_applies,
        consistent=consistent,
        sum_size=len(sum_cloud),
    )
