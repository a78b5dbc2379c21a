"""Exact algebra over finitely generated point groups.

A group point is an integer coordinate tuple over a declared basis of
generators embedded in R^d.  Group equality is coordinate equality; the
rational embedding answers geometric questions only.  Laurent
polynomials over the group are sparse maps from group points to exact
rational coefficients, with no stored zero coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linalg import rational_rank

GroupPoint = tuple  # integer coordinate tuple, length == basis rank
Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# group point helpers

def vadd(a: GroupPoint, b: GroupPoint) -> GroupPoint:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: GroupPoint, b: GroupPoint) -> GroupPoint:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: GroupPoint) -> GroupPoint:
    return tuple(-x for x in a)


def vscale(k: int, a: GroupPoint) -> GroupPoint:
    return tuple(k * x for x in a)


def is_zero_point(a: GroupPoint) -> bool:
    return all(x == 0 for x in a)


def content(a: GroupPoint) -> int:
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    return g


def primitive_ray(a: GroupPoint) -> GroupPoint:
    """Divide out the content, keeping orientation."""
    g = content(a)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return tuple(x // g for x in a)


def primitive_line_direction(a: GroupPoint) -> GroupPoint:
    """Divide out the content and normalize to lexicographically positive."""
    p = primitive_ray(a)
    for x in p:
        if x != 0:
            return p if x > 0 else vneg(p)
    raise ValueError("zero vector has no direction")


def parallel(a: GroupPoint, b: GroupPoint) -> bool:
    """Exact test that integer vectors a, b are scalar multiples."""
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True


# ---------------------------------------------------------------------------
# exponent basis

@dataclass(frozen=True)
class ExponentBasis:
    """Declared generators b_1..b_m in R^d with rational surrogate entries.

    independence classes partition the generator indices; generators in
    one class must be verifiably independent over the rationals, while
    generators in distinct classes are declared independent (trusted,
    never recomputed from the surrogates).
    """

    rank: int
    dim: int
    vectors: tuple
    classes: tuple

    def __post_init__(self):
        if self.rank < 1 or self.dim < 1:
            raise ValueError("rank and dim must be positive")
        if len(self.vectors) != self.rank:
            raise ValueError("need one generator per rank")
        vectors = tuple(tuple(Fraction(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        for v in vectors:
            if len(v) != self.dim:
                raise ValueError("generator arity must equal dim")
            if all(x == 0 for x in v):
                raise ValueError("zero generator is not allowed")
        classes = tuple(tuple(sorted(cls)) for cls in self.classes)
        object.__setattr__(self, "classes", classes)
        seen = sorted(i for cls in classes for i in cls)
        if seen != list(range(self.rank)):
            raise ValueError("classes must partition the generator indices")
        for cls in classes:
            rows = [vectors[i] for i in cls]
            if rational_rank(rows) != len(cls):
                raise ValueError(
                    "generators inside one independence class are rationally dependent"
                )

    @staticmethod
    def integer_lattice(d: int) -> "ExponentBasis":
        vectors = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(d)) for i in range(d)
        )
        return ExponentBasis(d, d, vectors, (tuple(range(d)),))

    @staticmethod
    def line_with_generators(values: Sequence[Rational],
                             classes: Optional[Sequence[Sequence[int]]] = None
                             ) -> "ExponentBasis":
        """1-dimensional embedding with one generator per given value."""
        vectors = tuple((Fraction(v),) for v in values)
        if classes is None:
            classes = [(i,) for i in range(len(values))]
        return ExponentBasis(len(values), 1, vectors, tuple(tuple(c) for c in classes))

    @property
    def scale(self) -> int:
        """Common denominator turning all generator entries into integers."""
        return lcm(*(x.denominator for v in self.vectors for x in v))

    def int_vectors(self) -> list:
        s = self.scale
        return [[int(x * s) for x in v] for v in self.vectors]

    def embed(self, point: GroupPoint) -> tuple:
        return tuple(
            sum((Fraction(point[i]) * self.vectors[i][j] for i in range(self.rank)),
                Fraction(0))
            for j in range(self.dim)
        )

    def int_embed(self, point: GroupPoint) -> tuple:
        """Embedding scaled by the common denominator; exact integers."""
        table = self.__dict__.get("_int_table")
        if table is None:
            table = self.int_vectors()
            object.__setattr__(self, "_int_table", table)
        return tuple(
            sum(point[i] * table[i][j] for i in range(self.rank))
            for j in range(self.dim)
        )

    def class_of_index(self) -> dict:
        out = {}
        for k, cls in enumerate(self.classes):
            for i in cls:
                out[i] = k
        return out

    def classes_touched(self, points: Iterable[GroupPoint]) -> set:
        by_index = self.class_of_index()
        touched = set()
        for p in points:
            for i, x in enumerate(p):
                if x != 0:
                    touched.add(by_index[i])
        return touched

    def describe(self) -> str:
        gens = "; ".join(
            "(" + ",".join(str(x) for x in v) + ")" for v in self.vectors
        )
        cls = " | ".join(" ".join(str(i) for i in c) for c in self.classes)
        return f"basis rank={self.rank} dim={self.dim} generators {gens} classes {cls}"


def zero_point(basis: ExponentBasis) -> GroupPoint:
    return (0,) * basis.rank


# ---------------------------------------------------------------------------
# Laurent polynomials

class LaurentPoly:
    """Sparse Laurent polynomial: group point -> nonzero rational."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: ExponentBasis, terms: Mapping[GroupPoint, Rational]):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != basis.rank:
                raise ValueError("exponent arity must equal basis rank")
            c = Fraction(c)
            if c != 0:
                clean[e] = c  # do not store zero coefficients
        self.basis = basis
        self.terms = clean

    # -- inspection

    def support(self) -> list:
        return sorted(self.terms.keys())

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e: GroupPoint) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly)
                and self.basis == other.basis
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    # -- arithmetic

    def _check(self, other: "LaurentPoly") -> None:
        if self.basis != other.basis:
            raise ValueError("polynomials live over different bases")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return LaurentPoly(self.basis, acc)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) - c
        return LaurentPoly(self.basis, acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.basis, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = vadd(e1, e2)
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(self.basis, acc)

    def scaled(self, k: Rational) -> "LaurentPoly":
        return LaurentPoly(self.basis, {e: c * Fraction(k) for e, c in self.terms.items()})

    def shifted(self, t: GroupPoint) -> "LaurentPoly":
        """Multiply by the monomial X^t."""
        return LaurentPoly(self.basis, {vadd(e, t): c for e, c in self.terms.items()})

    def power(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers only exist for monomials")
        out = constant(self.basis, 1)
        for _ in range(n):
            out = out * self
        return out


def constant(basis: ExponentBasis, value: Rational) -> LaurentPoly:
    return LaurentPoly(basis, {zero_point(basis): Fraction(value)})


def monomial(basis: ExponentBasis, e: GroupPoint, coeff: Rational = 1) -> LaurentPoly:
    return LaurentPoly(basis, {tuple(e): Fraction(coeff)})


def poly_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def poly_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def difference_poly(basis: ExponentBasis, v: GroupPoint) -> LaurentPoly:
    """X^v - 1 for a nonzero group point v."""
    v = tuple(int(x) for x in v)
    if is_zero_point(v):
        raise ValueError("difference polynomial needs a nonzero translation")
    return LaurentPoly(basis, {v: Fraction(1), zero_point(basis): Fraction(-1)})


def dilate(f: LaurentPoly, k: int) -> LaurentPoly:
    """Send every exponent e to k*e, keeping coefficients."""
    if k < 1:
        raise ValueError("dilation factor must be at least 1")
    return LaurentPoly(f.basis, {vscale(k, e): c for e, c in f.terms.items()})


# ---------------------------------------------------------------------------
# line polynomials

LINE = "line"
NOT_LINE = "not-line"
UNDECIDABLE = "undecidable-declared-independent"


@dataclass(frozen=True)
class LineVerdict:
    status: str
    direction: Optional[GroupPoint]


def line_direction(f: LaurentPoly) -> LineVerdict:
    """Decide whether supp(f) lies on one line, with the common direction.

    Group coordinates decide exactly.  When the support differences mix
    declared-independent generator classes and only the surrogate
    embedding makes them collinear, the answer is reported undecidable
    and treated as not collinear.
    """
    supp = f.support()
    if len(supp) < 2:
        return LineVerdict(NOT_LINE, None)
    anchor = supp[0]
    diffs = [vsub(p, anchor) for p in supp[1:]]
    base = diffs[0]
    if all(parallel(base, d) for d in diffs[1:]):
        return LineVerdict(LINE, primitive_line_direction(base))
    if len(f.basis.classes_touched(diffs)) > 1:
        emb = [f.basis.int_embed(d) for d in diffs]
        first = emb[0]
        if all(parallel(first, e) for e in emb[1:]):
            return LineVerdict(UNDECIDABLE, None)
    return LineVerdict(NOT_LINE, None)


def is_line_poly(f: LaurentPoly) -> Optional[GroupPoint]:
    return line_direction(f).direction


# ---------------------------------------------------------------------------
# Newton support geometry

def has_vertex_in_direction(f: LaurentPoly, w: Sequence[Rational]) -> bool:
    """True when the linear form <., w> has a unique maximizer on supp(f).

    The direction w lives in the embedding space R^d.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no support")
    w = [Fraction(x) for x in w]
    if len(w) != f.basis.dim:
        raise ValueError("direction arity must equal the embedding dimension")
    if all(x == 0 for x in w):
        raise ValueError("direction must be nonzero")
    best = None
    best_count = 0
    for e in f.terms:
        emb = f.basis.embed(e)
        score = sum((a * b for a, b in zip(emb, w)), Fraction(0))
        if best is None or score > best:
            best, best_count = score, 1
        elif score == best:
            best_count += 1
    return best_count == 1


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(\d+|[Xx]|\^|\(|\)|,|\+|-|\*|/)")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot read polynomial at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list, basis: ExponentBasis):
        self.tokens = tokens
        self.pos = 0
        self.basis = basis

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("polynomial text ended early")
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse_expr(self) -> LaurentPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        node = self.parse_term()
        if sign < 0:
            node = -node
        while self.peek() in ("+", "-"):
            op = self.take()
            term = self.parse_term()
            node = node - term if op == "-" else node + term
        return node

    def parse_term(self) -> LaurentPoly:
        node = self.parse_factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
            elif tok not in ("X", "x", "("):
                return node
            node = node * self.parse_factor()

    def parse_factor(self) -> LaurentPoly:
        node = self.parse_primary()
        while self.peek() == "^":
            self.take()
            node = node.power(self.parse_sint())
        return node

    def parse_primary(self) -> LaurentPoly:
        tok = self.peek()
        if tok == "(":
            self.take()
            node = self.parse_expr()
            self.take(")")
            return node
        if tok == "X":
            self.take()
            self.take("^")
            self.take("(")
            exps = [self.parse_sint()]
            while self.peek() == ",":
                self.take()
                exps.append(self.parse_sint())
            self.take(")")
            if len(exps) != self.basis.rank:
                raise ValueError(
                    f"exponent arity {len(exps)} does not match basis rank {self.basis.rank}"
                )
            return monomial(self.basis, tuple(exps))
        if tok == "x":
            self.take()
            if self.basis.rank != 1:
                raise ValueError("shorthand x is only valid over rank-1 bases")
            e = 1
            if self.peek() == "^":
                self.take()
                e = self.parse_sint()
            return monomial(self.basis, (e,))
        if tok is not None and tok.isdigit():
            return constant(self.basis, self.parse_number())
        raise ValueError(f"unexpected token {tok!r} in polynomial")

    def parse_sint(self) -> int:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        tok = self.take()
        if not tok.isdigit():
            raise ValueError(f"expected integer, found {tok!r}")
        return sign * int(tok)

    def parse_number(self) -> Fraction:
        tok = self.take()
        if not tok.isdigit():
            raise ValueError(f"expected number, found {tok!r}")
        value = Fraction(int(tok))
        if self.peek() == "/":
            self.take()
            den = self.take()
            if not den.isdigit() or int(den) == 0:
                raise ValueError("denominator must be a positive integer")
            value = value / int(den)
        return value


def parse_poly(text: str, basis: Optional[ExponentBasis] = None) -> LaurentPoly:
    """Parse the polynomial grammar; '*' multiplies out at parse time.

    Without an explicit basis the rank is inferred from the first
    monomial and the standard integer lattice of that rank is used.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    if basis is None:
        basis = ExponentBasis.integer_lattice(_infer_rank(tokens))
    parser = _Parser(tokens, basis)
    poly = parser.parse_expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing tokens in polynomial: {parser.tokens[parser.pos:]}")
    return poly


def _infer_rank(tokens: list) -> int:
    for i, tok in enumerate(tokens):
        if tok == "x":
            return 1
        if tok == "X":
            depth = 0
            commas = 0
            for t in tokens[i:]:
                if t == "(":
                    depth += 1
                elif t == ")":
                    break
                elif t == "," and depth == 1:
                    commas += 1
            return commas + 1
    return 1


def _format_monomial(basis: ExponentBasis, e: GroupPoint) -> str:
    if basis.rank == 1:
        return "x" if e[0] == 1 else f"x^{e[0]}"
    return "X^(" + ",".join(str(x) for x in e) + ")"


def format_poly(f: LaurentPoly) -> str:
    """Canonical text form; parse(format(f)) == f."""
    if f.is_zero():
        return "0"
    parts = []
    for e in sorted(f.terms.keys(), reverse=True):
        c = f.terms[e]
        if is_zero_point(e):
            body = str(abs(c))
        elif abs(c) == 1:
            body = _format_monomial(f.basis, e)
        else:
            body = f"{abs(c)}*{_format_monomial(f.basis, e)}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)
