"""Split a window of values into difference-annihilated components.

Works over explicit integer boxes.  Each recursion level peels off the
last direction: it differences the window, splits the smaller window,
then integrates each piece back up while keeping its own direction
annihilated.  Every identity the construction promises is re-checked
exactly on the final inner box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .algebra import GroupPoint, parallel, vadd, vscale, vsub
from .configurations import Configuration

Box = tuple  # ((lo, hi), ...) inclusive per coordinate


class DecompositionError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def box_points(box: Box):
    return iproduct(*(range(lo, hi + 1) for lo, hi in box))


def box_size(box: Box) -> int:
    n = 1
    for lo, hi in box:
        if hi < lo:
            return 0
        n *= hi - lo + 1
    return n


def shift_intersect(box: Box, v: GroupPoint) -> Box:
    """The box of points u with both u and u - v inside the original."""
    return tuple((lo + max(0, x), hi + min(0, x))
                 for (lo, hi), x in zip(box, v))


def shrunk_box(box: Box, directions: Sequence[GroupPoint]) -> Box:
    """Inner box left after peeling all but the first direction."""
    out = box
    for v in directions[1:]:
        out = shift_intersect(out, v)
    return out


def required_outer_box(inner: Box, directions: Sequence[GroupPoint]) -> Box:
    """Outer box big enough that the certified inner box covers `inner`."""
    lo_pad = [0] * len(inner)
    hi_pad = [0] * len(inner)
    for v in directions[1:]:
        for i, x in enumerate(v):
            lo_pad[i] += max(0, x)
            hi_pad[i] += min(0, x)
    return tuple((lo - lo_pad[i], hi - hi_pad[i])
                 for i, (lo, hi) in enumerate(inner))


# ---------------------------------------------------------------------------
# integration

def _pair_solver(v1: GroupPoint, v2: GroupPoint):
    """Exact solver for b = i v1 + j v2, or None when b is outside the span."""
    m = len(v1)
    pivot = None
    for r1 in range(m):
        for r2 in range(r1 + 1, m):
            det = v1[r1] * v2[r2] - v1[r2] * v2[r1]
            if det != 0:
                pivot = (r1, r2, det)
                break
        if pivot:
            break
    if pivot is None:
        raise ValueError("integration directions must not be parallel")
    r1, r2, det = pivot

    def solve(b):
        i_num = b[r1] * v2[r2] - b[r2] * v2[r1]
        j_num = v1[r1] * b[r2] - v1[r2] * b[r1]
        if i_num % det or j_num % det:
            return None
        i, j = i_num // det, j_num // det
        for r in range(m):
            if i * v1[r] + j * v2[r] != b[r]:
                return None
        return i, j

    return solve


@dataclass
class IntegrationReport:
    cosets: int
    seeds: list          # (anchor, seed index) per coset
    dropped_points: int


def integrate_step(c_prime: dict, box: Box, v_step: GroupPoint,
                   v_inv: GroupPoint):
    """Solve (X^v_step - 1) c = c_prime with (X^v_inv - 1) c = 0.

    c_prime must itself be v_inv-invariant on the box; that is checked
    first.  Within each coset of the lattice the two directions span,
    the zero line is placed where it reaches the most points, and the
    recurrence fills both sides of it.  Lines the zero line misses are
    dropped and counted.
    """
    for u in box_points(shift_intersect(box, v_inv)):
        if c_prime[vsub(u, v_inv)] != c_prime[u]:
            raise DecompositionError(
                "input to integration is not invariant along its own direction",
                witness=u)
    solve = _pair_solver(v_step, v_inv)
    anchors = []
    coords = {}
    for p in sorted(box_points(box)):
        placed = False
        for a_idx, a in enumerate(anchors):
            ij = solve(vsub(p, a))
            if ij is not None:
                coords[p] = (a_idx, ij[0], ij[1])
                placed = True
                break
        if not placed:
            coords[p] = (len(anchors), 0, 0)
            anchors.append(p)

    out = {}
    seeds = []
    dropped = 0
    for a_idx, anchor in enumerate(anchors):
        lines = {}
        for p, (ai, i, j) in coords.items():
            if ai == a_idx:
                lines.setdefault(j, {})[i] = p
        tally = {}
        for j, row in lines.items():
            for i in row:
                tally[i] = tally.get(i, 0) + 1
        seed_i = min(i for i in tally if tally[i] == max(tally.values()))
        seeds.append((anchor, seed_i))
        for j, row in lines.items():
            if seed_i not in row:
                dropped += len(row)
                continue
            out[row[seed_i]] = Fraction(0)
            i = seed_i + 1
            while i in row:
                out[row[i]] = out[row[i - 1]] - c_prime[row[i]]
                i += 1
            i = seed_i - 1
            while i in row:
                out[row[i]] = out[row[i + 1]] + c_prime[row[i + 1]]
                i -= 1
    return out, IntegrationReport(len(anchors), seeds, dropped)


# ---------------------------------------------------------------------------
# decomposition

@dataclass
class ComponentGrid:
    direction: GroupPoint
    values: dict


@dataclass
class DecompositionWitness:
    components: list       # ComponentGrid per direction, in input order
    inner_box: Box
    checks: list           # dicts: identity, points, ok, witness
    certified: bool
    log: list


def _largest_box(points: set, log: list) -> Optional[Box]:
    if not points:
        return None
    m = len(next(iter(points)))
    box = tuple((min(p[i] for p in points), max(p[i] for p in points))
                for i in range(m))
    for _ in range(64):
        missing = [p for p in box_points(box) if p not in points]
        if not missing:
            return box
        # trim the face that loses the most missing points
        best = None
        for i in range(m):
            lo, hi = box[i]
            if hi <= lo:
                continue
            on_lo = sum(1 for p in missing if p[i] == lo)
            on_hi = sum(1 for p in missing if p[i] == hi)
            for side, cnt in (("lo", on_lo), ("hi", on_hi)):
                if best is None or cnt > best[0]:
                    best = (cnt, i, side)
        if best is None:
            return None
        _, i, side = best
        lo, hi = box[i]
        box = box[:i] + (((lo + 1, hi) if side == "lo" else (lo, hi - 1)),) + box[i + 1:]
        log.append(f"trimmed axis {i} ({side}) to recover a full box")
    return None


def _split(values: dict, box: Box, dirs: Sequence[GroupPoint], log: list):
    """Return (list of value dicts, common box they are all total on)."""
    if len(dirs) == 1:
        v = dirs[0]
        for u in box_points(shift_intersect(box, v)):
            if values[vsub(u, v)] != values[u]:
                raise DecompositionError(
                    "window is not invariant along the single remaining "
                    f"direction {v}", witness=u)
        return [values], box
    v_m = dirs[-1]
    box2 = shift_intersect(box, v_m)
    if box_size(box2) == 0:
        raise DecompositionError(f"window too small to difference along {v_m}")
    c_prime = {u: values[vsub(u, v_m)] - values[u] for u in box_points(box2)}
    subs, sub_box = _split(c_prime, box2, dirs[:-1], log)
    integrated = []
    domains = []
    for v_k, sub in zip(dirs[:-1], subs):
        grid, report = integrate_step(sub, sub_box, v_m, v_k)
        if report.dropped_points:
            log.append(f"integration along {v_m} for direction {v_k} dropped "
                       f"{report.dropped_points} points")
        integrated.append(grid)
        domains.append(set(grid))
    common = set(box_points(sub_box))
    for d in domains:
        common &= d
    inner = _largest_box(common, log)
    if inner is None or box_size(inner) == 0:
        raise DecompositionError("no usable inner box remains after integration")
    last = {u: values[u] - sum(g[u] for g in integrated)
            for u in box_points(inner)}
    trimmed = [{u: g[u] for u in box_points(inner)} for g in integrated]
    return trimmed + [last], inner


def decompose(config: Configuration, directions: Sequence[GroupPoint],
              box: Box) -> DecompositionWitness:
    """Split config on the box into one component per direction.

    Component k is annihilated by X^(directions[k]) - 1 on the certified
    inner box, and the components sum back to the original values there.
    Raises DecompositionError when the window cannot support the split.
    """
    dirs = [tuple(int(x) for x in v) for v in directions]
    if not dirs:
        raise ValueError("need at least one direction")
    for v in dirs:
        if not any(v):
            raise ValueError("directions must be nonzero")
    for a in range(len(dirs)):
        for b in range(a + 1, len(dirs)):
            if parallel(dirs[a], dirs[b]):
                raise ValueError(f"directions {dirs[a]} and {dirs[b]} are parallel")
    if len(box) != config.basis.rank:
        raise ValueError("box arity does not match the configuration")
    log: list = []
    values = {u: Fraction(config.value(u)) for u in box_points(box)}
    parts, inner = _split(values, box, dirs, log)

    checks = []
    ok_all = True
    for v, part in zip(dirs, parts):
        witness = None
        pairs = 0
        for u in box_points(shift_intersect(inner, v)):
            pairs += 1
            if part[vsub(u, v)] != part[u]:
                witness = u
                break
        ok = witness is None
        ok_all = ok_all and ok
        checks.append({"identity": f"(X^{v} - 1) component = 0", "points": pairs,
                       "ok": ok, "witness": witness})
    witness = None
    n = 0
    for u in box_points(inner):
        n += 1
        if sum(p[u] for p in parts) != values[u]:
            witness = u
            break
    checks.append({"identity": "components sum to the window", "points": n,
                   "ok": witness is None, "witness": witness})
    ok_all = ok_all and witness is None

    # an identity checked on zero points is not evidence; refuse to certify
    if ok_all and any(chk["points"] == 0 for chk in checks):
        ok_all = False
        log.append("inner box too thin to exercise every identity; "
                   "certificate withheld")
    comps = [ComponentGrid(v, part) for v, part in zip(dirs, parts)]
    return DecompositionWitness(comps, inner, checks, ok_all, log)
