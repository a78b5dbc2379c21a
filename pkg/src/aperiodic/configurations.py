"""Configurations: exact-valued functions on a finitely generated group.

Every configuration evaluates group points to exact rationals.  Floor
based kinds accept exact rational parameters only; irrational rotation
parameters must be passed as rational surrogates by the caller, and the
results are then statements about the surrogate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm
from typing import Iterable, Optional, Sequence, Union

from .algebra import (
    ExponentBasis,
    GroupPoint,
    LaurentPoly,
    Rational,
    vadd,
    vsub,
    zero_point,
)
from .linalg import rref
from .window import Window


class DomainError(ValueError):
    """Evaluation outside the declared domain of a configuration."""


def _exact(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise TypeError(f"{what} must be an exact rational, not float")
    return Fraction(value)


@dataclass(frozen=True)
class Alphabet:
    """Finite value alphabet; duplicates are rejected, order is canonical."""

    values: tuple

    def __post_init__(self):
        vals = [_exact(v, "alphabet value") for v in self.values]
        if not vals:
            raise ValueError("alphabet must be non-empty")
        if len(set(vals)) != len(vals):
            raise ValueError("alphabet values must be distinct")
        object.__setattr__(self, "values", tuple(sorted(vals)))

    def __contains__(self, v) -> bool:
        return Fraction(v) in set(self.values)

    def max_abs(self) -> Fraction:
        return max(abs(v) for v in self.values)


class Configuration:
    """Base class; subclasses fix a kind, a basis, and an eval rule."""

    kind = "abstract"

    def __init__(self, basis: ExponentBasis, alphabet: Optional[Alphabet] = None):
        self.basis = basis
        self.alphabet = alphabet

    def value(self, u: GroupPoint):
        raise NotImplementedError

    def contains(self, u: GroupPoint) -> bool:
        return True

    def known_periods(self) -> Optional[list]:
        """Translation vectors the kind guarantees, or None."""
        return None

    def fundamental_probes(self) -> Optional[list]:
        """Probe set exhausting all translations for fully periodic kinds."""
        return None

    def describe(self) -> str:
        return self.kind


def eval_config(c: Configuration, u: GroupPoint):
    """Evaluate c at a group point; errors outside the domain."""
    return c.value(tuple(u))


class ExplicitConfig(Configuration):
    """Finite window of explicit values; zero elsewhere inside the window."""

    kind = "explicit-window"

    def __init__(self, basis: ExponentBasis, values: dict, window: Window,
                 alphabet: Optional[Alphabet] = None):
        if window.dim != basis.dim:
            raise ValueError("window dimension must match the embedding")
        vals = {}
        for p, v in values.items():
            p = tuple(int(x) for x in p)
            if len(p) != basis.rank:
                raise ValueError("point arity must equal basis rank")
            vals[p] = _exact(v, "configuration value")
        if alphabet is None:
            alphabet = Alphabet(tuple(set(vals.values()) | {Fraction(0)}))
        super().__init__(basis, alphabet)
        self.values = vals
        self.window = window
        scale = basis.scale
        self._int_bounds = window.scaled_int_bounds(scale)
        for p in vals:
            if not self.contains(p):
                raise ValueError(f"explicit point {p} falls outside the window")

    def contains(self, u: GroupPoint) -> bool:
        emb = self.basis.int_embed(u)
        return all(lo <= x <= hi for x, (lo, hi) in zip(emb, self._int_bounds))

    def value(self, u: GroupPoint):
        if not self.contains(u):
            raise DomainError(f"point {u} lies outside the configuration window")
        return self.values.get(tuple(u), 0)

    def support(self) -> list:
        return sorted(p for p, v in self.values.items() if v != 0)

    def describe(self) -> str:
        return f"explicit-window[{len(self.values)} values, window {self.window.describe()}]"


class LatticeConfig(Configuration):
    """Strongly periodic configuration: values on a fundamental domain."""

    kind = "periodic-lattice"

    def __init__(self, basis: ExponentBasis, periods: Sequence[GroupPoint],
                 cell: dict, alphabet: Optional[Alphabet] = None):
        periods = tuple(tuple(int(x) for x in p) for p in periods)
        m = basis.rank
        if len(periods) != m:
            raise ValueError("need rank many periods for a periodic lattice")
        rows = [[Fraction(p[i]) for p in periods] for i in range(m)]
        aug = [rows[r] + [Fraction(1 if r == c else 0) for c in range(m)]
               for r in range(m)]
        reduced, pivots = rref(aug)
        if pivots != list(range(m)):
            raise ValueError("periods must be linearly independent")
        self._inverse = [row[m:] for row in reduced]
        if alphabet is None:
            alphabet = Alphabet(tuple(set(Fraction(v) for v in cell.values()) | {Fraction(0)}))
        super().__init__(basis, alphabet)
        self.periods = periods
        self.cell = {self.reduce(tuple(int(x) for x in p)): _exact(v, "cell value")
                     for p, v in cell.items()}

    def reduce(self, u: GroupPoint) -> GroupPoint:
        """Translate u by periods into the half-open fundamental domain."""
        coords = [sum(self._inverse[r][c] * u[c] for c in range(len(u)))
                  for r in range(len(u))]
        out = list(u)
        for r, x in enumerate(coords):
            k = floor(x)
            if k:
                for i in range(len(out)):
                    out[i] -= k * self.periods[r][i]
        return tuple(out)

    def value(self, u: GroupPoint):
        return self.cell.get(self.reduce(tuple(u)), 0)

    def known_periods(self) -> list:
        return list(self.periods)

    def fundamental_probes(self) -> list:
        """All group points of the half-open fundamental domain."""
        from itertools import product
        m = self.basis.rank
        spans = [sum(abs(p[i]) for p in self.periods) for i in range(m)]
        ranges = [range(-s, s + 1) for s in spans]
        return sorted(q for q in product(*ranges) if self.reduce(q) == q)

    def describe(self) -> str:
        return f"periodic-lattice[periods {self.periods}]"


class TorusConfig(Configuration):
    """Binary rotation configuration on Z^2 from floors of a rational slope."""

    kind = "torus-rotation"

    def __init__(self, z: Sequence[Rational], alpha: Rational):
        z1 = _exact(z[0], "torus offset")
        z2 = _exact(z[1], "torus offset")
        alpha = _exact(alpha, "torus slope")
        super().__init__(ExponentBasis.integer_lattice(2),
                         Alphabet((Fraction(0), Fraction(1))))
        self.z = (z1, z2)
        self.alpha = alpha
        m = lcm(z1.denominator, z2.denominator, alpha.denominator)
        self._m = m
        self._a1 = int(z1 * m)
        self._a2 = int(z2 * m)
        self._p = int(alpha * m)

    def value(self, u: GroupPoint):
        i, j = u
        m, p = self._m, self._p
        s = (i + j) * p
        return ((self._a1 + self._a2 + s) // m
                - (self._a1 + i * p) // m
                - (self._a2 + j * p) // m)

    def known_periods(self) -> list:
        q = self.alpha.denominator
        return [(q, 0), (0, q)]

    def fundamental_probes(self) -> list:
        q = self.alpha.denominator
        return [(i, j) for i in range(q) for j in range(q)]

    def describe(self) -> str:
        return f"torus-rotation[z=({self.z[0]},{self.z[1]}), alpha={self.alpha}]"


class FloorFiberConfig(Configuration):
    """scale * floor(beta + <weights, u> * alpha): one floor term of a sum."""

    kind = "floor-fiber"

    def __init__(self, basis: ExponentBasis, beta: Rational, alpha: Rational,
                 weights: Sequence[int], scale: Rational = 1):
        super().__init__(basis, None)
        self.beta = _exact(beta, "floor offset")
        self.alpha = _exact(alpha, "floor slope")
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != basis.rank:
            raise ValueError("need one weight per basis generator")
        self.scale = _exact(scale, "floor scale")
        m = lcm(self.beta.denominator, self.alpha.denominator)
        self._m = m
        self._b = int(self.beta * m)
        self._p = int(self.alpha * m)

    def value(self, u: GroupPoint):
        n = sum(w * x for w, x in zip(self.weights, u))
        base = (self._b + n * self._p) // self._m
        if self.scale == 1:
            return base
        if self.scale == -1:
            return -base
        return self.scale * base

    def describe(self) -> str:
        return (f"floor-fiber[beta={self.beta}, alpha={self.alpha}, "
                f"weights={self.weights}, scale={self.scale}]")


class TranslateConfig(Configuration):
    """Translate of another configuration by a group point."""

    kind = "translate-of"

    def __init__(self, inner: Configuration, t: GroupPoint):
        super().__init__(inner.basis, inner.alphabet)
        self.inner = inner
        self.t = tuple(int(x) for x in t)

    def value(self, u: GroupPoint):
        return self.inner.value(vsub(tuple(u), self.t))

    def contains(self, u: GroupPoint) -> bool:
        return self.inner.contains(vsub(tuple(u), self.t))

    def describe(self) -> str:
        return f"translate-of[{self.inner.describe()} by {self.t}]"


class SumConfig(Configuration):
    """Pointwise sum; may be non-finitary, so no alphabet is claimed."""

    kind = "sum-of-configurations"

    def __init__(self, parts: Sequence[Configuration]):
        parts = list(parts)
        if not parts:
            raise ValueError("sum needs at least one part")
        basis = parts[0].basis
        for p in parts[1:]:
            if p.basis != basis:
                raise ValueError("summands live over different bases")
        super().__init__(basis, None)
        self.parts = parts

    def value(self, u: GroupPoint):
        u = tuple(u)
        return sum(p.value(u) for p in self.parts)

    def contains(self, u: GroupPoint) -> bool:
        u = tuple(u)
        return all(p.contains(u) for p in self.parts)

    def describe(self) -> str:
        return "sum-of[" + ", ".join(p.describe() for p in self.parts) + "]"


class PolyAppliedConfig(Configuration):
    """Convolution f c: value(u) = sum of f_v * c(u - v) over supp(f)."""

    kind = "poly-applied"

    def __init__(self, poly: LaurentPoly, inner: Configuration):
        if poly.basis != inner.basis:
            raise ValueError("polynomial and configuration bases differ")
        super().__init__(inner.basis, None)
        self.poly = poly
        self.inner = inner

    def value(self, u: GroupPoint):
        u = tuple(u)
        total = Fraction(0)
        for v, coeff in self.poly.terms.items():
            total += coeff * self.inner.value(vsub(u, v))
        return total

    def contains(self, u: GroupPoint) -> bool:
        u = tuple(u)
        return all(self.inner.contains(vsub(u, v)) for v in self.poly.terms)

    def describe(self) -> str:
        return f"poly-applied[{self.inner.describe()}]"


def torus_config(z: Sequence[Rational], alpha: Rational) -> TorusConfig:
    """Rotation configuration with exact rational offsets and slope."""
    return TorusConfig(z, alpha)


def torus_components(z: Sequence[Rational], alpha: Rational) -> tuple:
    """The three floor summands whose sum is the rotation configuration.

    Each summand is annihilated by one difference polynomial: the first
    by X^(1,-1) - 1, the second by X^(0,1) - 1, the third by X^(1,0) - 1.
    """
    basis = ExponentBasis.integer_lattice(2)
    z1 = _exact(z[0], "torus offset")
    z2 = _exact(z[1], "torus offset")
    c1 = FloorFiberConfig(basis, z1 + z2, alpha, (1, 1), 1)
    c2 = FloorFiberConfig(basis, z1, alpha, (1, 0), -1)
    c3 = FloorFiberConfig(basis, z2, alpha, (0, 1), -1)
    return c1, c2, c3


# ---------------------------------------------------------------------------
# patterns

@dataclass(frozen=True)
class Shape:
    """Finite non-empty set of group points used as a sampling window."""

    points: tuple

    def __post_init__(self):
        pts = tuple(sorted(tuple(int(x) for x in p) for p in self.points))
        if not pts:
            raise ValueError("shape must be non-empty")
        if len(set(pts)) != len(pts):
            raise ValueError("shape points must be distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Pattern:
    """Values of a configuration on a shape, up to the anchoring translation."""

    shape: Shape
    values: tuple


@dataclass(frozen=True)
class PatternCount:
    count: int
    exact: bool
    probes_used: int


def patterns(c: Configuration, shape: Shape,
             probes: Optional[Iterable[GroupPoint]] = None) -> set:
    """Distinct translated restrictions of c to the shape, over the probes."""
    probe_list = _resolve_probes(c, probes)
    seen = set()
    for t in probe_list:
        vals = []
        for d in shape.points:
            u = vadd(d, t)
            if not c.contains(u):
                raise DomainError(f"probe {t} pushes the shape outside the domain")
            vals.append(Fraction(c.value(u)))
        seen.add(Pattern(shape, tuple(vals)))
    return seen


def pattern_complexity(c: Configuration, shape: Shape,
                       probes: Optional[Iterable[GroupPoint]] = None) -> PatternCount:
    """Number of distinct patterns seen over the probes.

    With explicit probes the count is a lower bound for the true pattern
    count.  Without probes, fully periodic kinds enumerate one
    fundamental domain and the count is exact.
    """
    probe_list = _resolve_probes(c, probes)
    exact = probes is None
    pats = patterns(c, shape, probe_list)
    return PatternCount(len(pats), exact, len(probe_list))


def _resolve_probes(c: Configuration, probes) -> list:
    if probes is not None:
        out = [tuple(int(x) for x in t) for t in probes]
        if not out:
            raise ValueError("probe set must be non-empty")
        return out
    fundamental = c.fundamental_probes()
    if fundamental is None:
        raise ValueError(
            "probe set required: only fully periodic kinds enumerate themselves"
        )
    return fundamental
