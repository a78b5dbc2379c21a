"""Precision policy for irrational embedding surrogates.

Group arithmetic is exact integer arithmetic and never touches these
numbers.  Geometric queries (distances, windows, hulls) see irrational
generators only through dyadic rational surrogates whose width is set
by APERIODIC_PRECISION_BITS (default 128).
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

import mpmath

DEFAULT_PRECISION_BITS = 128
ENV_VAR = "APERIODIC_PRECISION_BITS"


def precision_bits() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 8:
        raise ValueError(f"{ENV_VAR} must be at least 8, got {bits}")
    return bits


def pi_surrogate(bits: int | None = None) -> Fraction:
    """Dyadic floor approximation of pi with the given bit width."""
    bits = precision_bits() if bits is None else bits
    with mpmath.workprec(bits + 32):
        scaled = int(mpmath.floor(mpmath.pi * (1 << bits)))
    return Fraction(scaled, 1 << bits)


def sqrt_surrogate(n: int, bits: int | None = None) -> Fraction:
    """Dyadic floor approximation of sqrt(n) for a non-negative integer n."""
    if n < 0:
        raise ValueError("sqrt surrogate needs a non-negative integer")
    bits = precision_bits() if bits is None else bits
    return Fraction(math.isqrt(n << (2 * bits)), 1 << bits)


def golden_surrogate(bits: int | None = None) -> Fraction:
    """Dyadic approximation of (1 + sqrt(5)) / 2."""
    bits = precision_bits() if bits is None else bits
    return (1 + sqrt_surrogate(5, bits)) / 2


def named_value(text: str, bits: int | None = None) -> Fraction:
    """Resolve a constant name or rational literal to an exact value.

    Accepts "pi", "sqrt2", "sqrt3", "sqrt5", "golden", integer literals,
    and "p/q" rationals.
    """
    name = text.strip().lower()
    if name == "pi":
        return pi_surrogate(bits)
    if name == "golden":
        return golden_surrogate(bits)
    if name.startswith("sqrt"):
        tail = name[4:]
        if tail.isdigit():
            return sqrt_surrogate(int(tail), bits)
        raise ValueError(f"unknown constant {text!r}")
    try:
        return Fraction(name)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse value {text!r}") from exc
