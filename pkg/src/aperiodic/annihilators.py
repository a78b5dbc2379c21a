"""Annihilator and periodizer search with executable certificates.

Certificates are always re-verified sums: no result is trusted from the
search path alone.  Probe sets are explicit, and every verdict names the
probes it was checked on.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .algebra import (
    ExponentBasis,
    GroupPoint,
    LaurentPoly,
    LINE,
    difference_poly,
    dilate,
    line_direction,
    primitive_line_direction,
    vadd,
    vneg,
    vscale,
    vsub,
)
from .configurations import Configuration, DomainError, PolyAppliedConfig
from .delone import PointCloud
from .linalg import first_nullspace_vector


@dataclass
class AnnihilationCertificate:
    poly: LaurentPoly
    config_id: str
    probes: tuple
    verified: bool
    max_residual: Fraction
    witness: Optional[tuple] = None  # (probe, residual) for the first failure

    def summary(self) -> str:
        state = "verified" if self.verified else "FAILED"
        return (f"{state} on {len(self.probes)} probes"
                + ("" if self.verified else f", witness {self.witness}"))


class _Memo:
    """Evaluation cache around a configuration."""

    __slots__ = ("config", "values")

    def __init__(self, config: Configuration):
        self.config = config
        self.values = {}

    def __call__(self, u: GroupPoint):
        v = self.values.get(u)
        if v is None:
            v = self.config.value(u)
            self.values[u] = v
        return v


def verify_annihilator(f: LaurentPoly, c: Configuration,
                       probes: Iterable[GroupPoint]) -> AnnihilationCertificate:
    """Exact convolution check of f against c on every probe.

    Every shifted point a probe needs must lie in the domain of c;
    otherwise the probe set is rejected rather than silently skipped.
    """
    probes = tuple(tuple(int(x) for x in u) for u in probes)
    if not probes:
        raise ValueError("probe set must be non-empty")
    if f.is_zero():
        raise ValueError("the zero polynomial annihilates trivially; refusing")
    if f.basis != c.basis:
        raise ValueError("polynomial and configuration bases differ")
    terms = []
    for v, coeff in f.terms.items():
        terms.append((v, int(coeff) if coeff.denominator == 1 else coeff))
    val = _Memo(c)
    max_res = Fraction(0)
    witness = None
    for u in probes:
        total = 0
        try:
            for v, coeff in terms:
                total += coeff * val(vsub(u, v))
        except DomainError as exc:
            raise DomainError(f"probe {u} needs values outside the domain: {exc}")
        if total != 0:
            if witness is None:
                witness = (u, Fraction(total))
            if abs(total) > max_res:
                max_res = abs(Fraction(total))
    return AnnihilationCertificate(f, c.describe(), probes, witness is None,
                                   max_res, witness)


# ---------------------------------------------------------------------------
# periodizer search

@dataclass
class PeriodizerResult:
    poly: Optional[LaurentPoly]
    constant: Optional[Fraction]
    distinct_rows: int
    saturated: bool
    domain: tuple


def find_periodizer(c: Configuration, domain_points: Sequence[GroupPoint],
                    probes: Iterable[GroupPoint]) -> PeriodizerResult:
    """Nullspace candidate from observed value rows over the domain shape.

    Collects rows (1, c(d_1+t), ..., c(d_m+t)) for probes t, deduplicated
    and sorted, and extracts the canonical kernel vector.  A nonzero
    answer gives a polynomial whose product with c is constant on the
    probes; saturation of the row rank certifies absence instead.
    """
    ds = [tuple(int(x) for x in d) for d in domain_points]
    if len(set(ds)) != len(ds) or not ds:
        raise ValueError("domain shape must be non-empty with distinct points")
    probes = tuple(tuple(int(x) for x in t) for t in probes)
    if not probes:
        raise ValueError("probe set must be non-empty")
    val = _Memo(c)
    rows = set()
    for t in probes:
        rows.add((Fraction(1),) + tuple(Fraction(val(vadd(d, t))) for d in ds))
    row_list = sorted(rows)
    kernel = first_nullspace_vector(row_list)
    if kernel is None:
        return PeriodizerResult(None, None, len(row_list), True, tuple(ds))
    a0, rest = kernel[0], kernel[1:]
    terms = {vneg(d): Fraction(a) for d, a in zip(ds, rest) if a != 0}
    if not terms:
        return PeriodizerResult(None, None, len(row_list), True, tuple(ds))
    poly = LaurentPoly(c.basis, terms)
    # the defining relation makes the product constant -a0 on the probes
    for t in probes:
        total = a0 + sum(a * val(vadd(d, t)) for d, a in zip(ds, rest))
        if total != 0:
            raise AssertionError("kernel vector fails its defining relation")
    return PeriodizerResult(poly, Fraction(-a0), len(row_list), False, tuple(ds))


def periodizer_to_annihilator(g: LaurentPoly, c: Configuration,
                              probes: Iterable[GroupPoint],
                              candidates: Optional[Sequence[GroupPoint]] = None,
                              bound: int = 4) -> tuple:
    """Compose a periodizer with a difference polynomial that certifies.

    Scans candidate periods v of the strongly periodic product g c and
    returns (annihilator, v, certificate) for the first certified choice,
    or (None, None, None) when the scan is exhausted.
    """
    probes = tuple(tuple(int(x) for x in u) for u in probes)
    product = PolyAppliedConfig(g, c)
    if candidates is None:
        rank = c.basis.rank
        from itertools import product as iproduct
        raw = sorted(
            (v for v in iproduct(range(-bound, bound + 1), repeat=rank)
             if any(v)),
            key=lambda v: (sum(x * x for x in v), v),
        )
        candidates = raw
    for v in candidates:
        v = tuple(int(x) for x in v)
        diff = difference_poly(c.basis, v)
        usable = [u for u in probes
                  if product.contains(u) and product.contains(vsub(u, v))]
        if not usable:
            continue
        ok = all(product.value(vsub(u, v)) == product.value(u) for u in usable)
        if not ok:
            continue
        annihilator = diff * g
        inner = [u for u in probes
                 if all(c.contains(vsub(u, w)) for w in annihilator.terms)]
        if not inner:
            continue
        cert = verify_annihilator(annihilator, c, inner)
        if cert.verified:
            return annihilator, v, cert
    return None, None, None


# ---------------------------------------------------------------------------
# dilation

def _primes_upto(n: int) -> list:
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = False
    return out


def dilation_bound(f: LaurentPoly, alphabet) -> int:
    """Integer bound s = max|alphabet| * sum|coefficients|.

    Both factors must be integral; the factorial of s never gets built,
    admissibility of a scale is tested prime by prime instead.
    """
    values = list(alphabet.values) if hasattr(alphabet, "values") else list(alphabet)
    if not values:
        raise ValueError("alphabet must be non-empty")
    c_max = max(abs(Fraction(v)) for v in values)
    coeff_sum = sum(abs(c) for c in f.terms.values())
    s = c_max * coeff_sum
    if s.denominator != 1:
        raise ValueError("dilation bound needs integral alphabet and coefficients")
    return int(s)


def is_admissible_scale(k: int, s: int) -> bool:
    """k has no prime factor at most s, so k is coprime to s factorial."""
    if k < 1:
        return False
    return all(k % p != 0 for p in _primes_upto(s))


@dataclass
class DilationWitness:
    bound: int
    tested: tuple  # (k, verified) for admissible k
    skipped: tuple  # inadmissible k, out of contract
    all_pass: bool


def check_dilation(f: LaurentPoly, c: Configuration,
                   probes: Iterable[GroupPoint],
                   k_values: Sequence[int],
                   alphabet=None) -> DilationWitness:
    """Verify the stretched polynomials f(X^k) for admissible scales k.

    Scales with a prime factor at most the bound are recorded as skipped,
    never as failures; they are outside the guarantee.
    """
    probes = tuple(tuple(int(x) for x in u) for u in probes)
    base = verify_annihilator(f, c, probes)
    if not base.verified:
        raise ValueError("f does not annihilate c on the probes; "
                         f"witness {base.witness}")
    alpha = alphabet if alphabet is not None else c.alphabet
    if alpha is None:
        raise ValueError("alphabet required for the dilation bound")
    s = dilation_bound(f, alpha)
    primes = _primes_upto(s)
    tested = []
    skipped = []
    for k in k_values:
        k = int(k)
        if k < 1 or any(k % p == 0 for p in primes):
            skipped.append(k)
            continue
        cert = verify_annihilator(dilate(f, k), c, probes)
        tested.append((k, cert.verified))
    return DilationWitness(s, tuple(tested), tuple(skipped),
                           all(ok for _, ok in tested))


# ---------------------------------------------------------------------------
# special annihilator shape

def special_annihilator(f: LaurentPoly, u: GroupPoint, r: int) -> LaurentPoly:
    """Product of X^(r(v-u)) - 1 over the support points v distinct from u."""
    u = tuple(int(x) for x in u)
    if u not in f.terms:
        raise ValueError(f"{u} is not in the support of the polynomial")
    if r < 1:
        raise ValueError("scale r must be at least 1")
    out = None
    for v in f.support():
        if v == u:
            continue
        factor = difference_poly(f.basis, vscale(r, vsub(v, u)))
        out = factor if out is None else out * factor
    if out is None:
        raise ValueError("support must contain at least two points")
    return out


# ---------------------------------------------------------------------------
# merging parallel difference factors

@dataclass
class MergeGroup:
    direction: GroupPoint
    original: tuple
    merged: Optional[LaurentPoly]
    step: Optional[int]
    note: str = ""


@dataclass
class MergeResult:
    factors: list
    groups: list
    certificate: Optional[AnnihilationCertificate]
    ok: bool


def _difference_vector(f: LaurentPoly) -> GroupPoint:
    supp = f.support()
    zero = (0,) * f.basis.rank
    if len(supp) != 2 or zero not in supp:
        raise ValueError("factor is not a difference polynomial X^v - 1")
    v = supp[0] if supp[1] == zero else supp[1]
    if f.terms[v] != 1 or f.terms[zero] != -1:
        raise ValueError("factor is not a difference polynomial X^v - 1")
    return v


def merge_parallel(factors: Sequence[LaurentPoly], c: Configuration,
                   probes: Iterable[GroupPoint], bound: int = 256) -> MergeResult:
    """Replace parallel difference factors by one factor per direction.

    For each direction with several factors, the residual configuration
    (all other groups applied to c) is scanned for the smallest step t
    such that X^(t v) - 1 annihilates it on the probes.  The final list
    is re-certified against c as a product.
    """
    probes = tuple(tuple(int(x) for x in u) for u in probes)
    vecs = [_difference_vector(f) for f in factors]
    by_dir = {}
    for f, v in zip(factors, vecs):
        d = primitive_line_direction(v)
        by_dir.setdefault(d, []).append((f, v))
    groups = []
    merged_factors = []
    ok = True
    for d in sorted(by_dir):
        members = by_dir[d]
        if len(members) == 1:
            f, v = members[0]
            groups.append(MergeGroup(d, (f,), f, None, "single factor, unchanged"))
            merged_factors.append(f)
            continue
        others = [f for dd in sorted(by_dir) if dd != d for f, _ in by_dir[dd]]
        residual: Configuration = c
        for f in others:
            residual = PolyAppliedConfig(f, residual)
        found = None
        for t in range(1, bound + 1):
            cand = vscale(t, d)
            usable = [u for u in probes
                      if residual.contains(u) and residual.contains(vsub(u, cand))]
            if not usable:
                break
            if all(residual.value(vsub(u, cand)) == residual.value(u)
                   for u in usable):
                found = t
                break
        if found is None:
            groups.append(MergeGroup(d, tuple(f for f, _ in members), None, None,
                                     f"no period step up to bound {bound}"))
            merged_factors.extend(f for f, _ in members)
            ok = False
        else:
            merged = difference_poly(c.basis, vscale(found, d))
            groups.append(MergeGroup(d, tuple(f for f, _ in members), merged,
                                     found, "merged by period search"))
            merged_factors.append(merged)
    product = None
    for f in merged_factors:
        product = f if product is None else product * f
    cert = None
    if product is not None:
        inner = [u for u in probes
                 if all(c.contains(vsub(u, w)) for w in product.terms)]
        if inner:
            cert = verify_annihilator(product, c, inner)
            ok = ok and cert.verified
        else:
            ok = False
    return MergeResult(merged_factors, groups, cert, ok)


# ---------------------------------------------------------------------------
# 1-D period detection on colored Delone windows

@dataclass
class PeriodScan:
    period: Optional[GroupPoint]
    period_length: Optional[Fraction]
    verdict: str
    anchors: int
    candidates_tested: int
    rejected: list
    skipped_overlap: list
    m_bound: str


def detect_period_1d(cloud: PointCloud, k) -> PeriodScan:
    """Scan anchored left windows of width k for repeats, then verify.

    A repeated window content yields a candidate translation; the
    candidate counts only after an exact full-window translation check
    of points and colors, and only when it fits at least four times
    across the window, since short repetitions prove nothing.  The
    reported bound says how wide a window the pigeonhole argument would
    need in the worst case.
    """
    if cloud.basis.dim != 1:
        raise ValueError("period scan expects a 1-D cloud")
    k = Fraction(k)
    if k <= 0:
        raise ValueError("window width k must be positive")
    pts = sorted(cloud.points, key=lambda p: cloud.emb(p))
    if len(pts) < 3:
        return PeriodScan(None, None, "inconclusive", 0, 0, [], [], "n/a")
    emb = {p: cloud.emb(p)[0] for p in pts}
    embs = [emb[p] for p in pts]
    scale = cloud.scale
    k_scaled = k * scale
    lo_scaled = cloud.window.bounds[0][0] * scale
    hi_scaled = cloud.window.bounds[0][1] * scale

    def content(anchor):
        # points within k to the left of the anchor, offsets ascending
        ea = emb[anchor]
        lo_i = bisect.bisect_left(embs, ea - k_scaled)
        hi_i = bisect.bisect_right(embs, ea)
        return tuple((vsub(anchor, q), cloud.color(q))
                     for q in reversed(pts[lo_i:hi_i]))

    anchors = [p for p in pts if emb[p] - k_scaled >= lo_scaled]
    seen = {}
    candidates = []
    for p in anchors:
        key = content(p)
        if key in seen:
            candidates.append(vsub(p, seen[key]))
        else:
            seen[key] = p
    uniq = []
    for cand in candidates:
        if cand not in uniq:
            uniq.append(cand)
    # a verified period must fit four times across the window: squares and
    # cubes occur in aperiodic low-complexity words, fourth powers do not
    quarter_span = (hi_scaled - lo_scaled) / 4
    overlap_ok = [cand for cand in uniq
                  if abs(cloud.basis.int_embed(cand)[0]) <= quarter_span]
    skipped = [cand for cand in uniq if cand not in overlap_ok]
    pset = set(pts)
    rejected = []
    found = None
    for cand in overlap_ok:
        if _translation_check(cloud, pset, emb, cand, lo_scaled, hi_scaled):
            found = cand
            break
        rejected.append(cand)
    m_bound = _pigeonhole_bound(cloud)
    if found is not None:
        length = Fraction(cloud.basis.int_embed(found)[0], scale)
        return PeriodScan(found, abs(length), "verified-period", len(anchors),
                          len(uniq), rejected, skipped, m_bound)
    verdict = "inconclusive" if not overlap_ok else "candidates-rejected"
    return PeriodScan(None, None, verdict, len(anchors), len(uniq), rejected,
                      skipped, m_bound)


def _translation_check(cloud, pset, emb, cand, lo_scaled, hi_scaled) -> bool:
    shift = cloud.basis.int_embed(cand)[0]
    if shift == 0:
        return False
    hits = 0
    for q in pset:
        target_e = emb[q] + shift
        if lo_scaled <= target_e <= hi_scaled:
            t = vadd(q, cand)
            if t not in pset or cloud.color(t) != cloud.color(q):
                return False
            hits += 1
    return hits > 0


def _pigeonhole_bound(cloud: PointCloud) -> str:
    """Crude textual size of the repeat bound; metadata only."""
    colors = len(set(cloud.color(p) for p in cloud.points)) + 1
    n = len(cloud.points)
    # alphabet^(diff-set-size^(k/2r)) grows beyond anything printable fast
    return f"<= {colors}^(d^e) with d the short difference count; window holds {n} points"


# ---------------------------------------------------------------------------
# line-polynomial fibers

@dataclass
class FiberReport:
    anchor: GroupPoint
    step: Optional[int]
    comparisons: int


@dataclass
class LinePeriodResult:
    status: str
    direction: Optional[GroupPoint]
    steps: Optional[int]
    period: Optional[GroupPoint]
    fibers: list
    certificate: Optional[AnnihilationCertificate]


def line_annihilator_period(c: Configuration, f: LaurentPoly,
                            probes: Iterable[GroupPoint],
                            bound: int = 256) -> LinePeriodResult:
    """Fiber-wise period search along the direction of a line polynomial.

    Splits the probe set into lines parallel to the direction of f,
    finds the smallest verified step per fiber, takes the least common
    multiple, and certifies the resulting difference polynomial.
    """
    verdict = line_direction(f)
    if verdict.status != LINE:
        return LinePeriodResult(f"rejected: {verdict.status}", None, None, None,
                                [], None)
    v = verdict.direction
    probes = [tuple(int(x) for x in u) for u in probes]
    idx = next(i for i, x in enumerate(v) if x != 0)
    fibers = {}
    for u in probes:
        q = u[idx] // v[idx]
        rep = vsub(u, vscale(q, v))
        fibers.setdefault(rep, []).append((q, u))
    val = _Memo(c)
    reports = []
    steps = []
    for rep in sorted(fibers):
        entries = sorted(fibers[rep])
        positions = {q: u for q, u in entries}
        found = None
        comps = 0
        for t in range(1, bound + 1):
            pairs = [(q, q + t) for q, _ in entries if q + t in positions]
            if not pairs:
                break
            if all(val(positions[a]) == val(positions[b]) for a, b in pairs):
                found = t
                comps = len(pairs)
                break
        reports.append(FiberReport(rep, found, comps))
        if found is None:
            return LinePeriodResult("inconclusive: fiber without period", v,
                                    None, None, reports, None)
        steps.append(found)
    total = 1
    for s in steps:
        total = lcm(total, s)
    period = vscale(total, v)
    diff = difference_poly(c.basis, period)
    usable = [u for u in probes
              if all(c.contains(vsub(u, w)) for w in diff.terms)]
    if not usable:
        return LinePeriodResult("inconclusive: no probes for the certificate",
                                v, total, period, reports, None)
    cert = verify_annihilator(diff, c, usable)
    status = "verified" if cert.verified else "rejected: certificate failed"
    return LinePeriodResult(status, v, total if cert.verified else None,
                            period if cert.verified else None, reports, cert)
