"""Axis-aligned rational boxes in the embedding space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence


@dataclass(frozen=True)
class Window:
    """Closed box given by (lo, hi) rational bounds per embedded axis."""

    bounds: tuple

    def __post_init__(self):
        bounds = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.bounds)
        object.__setattr__(self, "bounds", bounds)
        if not bounds:
            raise ValueError("window needs at least one axis")
        for lo, hi in bounds:
            if lo > hi:
                raise ValueError("window bounds must satisfy lo <= hi")

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def contains(self, embedded: Sequence) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(embedded, self.bounds))

    def shrunk(self, margin) -> "Window":
        margin = Fraction(margin)
        return Window(tuple((lo + margin, hi - margin) for lo, hi in self.bounds))

    def scaled_int_bounds(self, scale: int) -> list:
        """Inclusive integer bounds after multiplying the box by scale."""
        out = []
        for lo, hi in self.bounds:
            out.append((ceil(lo * scale), floor(hi * scale)))
        return out

    def spans(self) -> tuple:
        return tuple(hi - lo for lo, hi in self.bounds)

    def min_span(self) -> Fraction:
        return min(self.spans())

    def is_empty(self) -> bool:
        return any(lo > hi for lo, hi in self.bounds)

    def describe(self) -> str:
        return ",".join(f"{lo}:{hi}" for lo, hi in self.bounds)


def parse_window(text: str) -> Window:
    """Parse "lo:hi[,lo:hi...]" with rational endpoints."""
    bounds = []
    for part in text.split(","):
        lo, sep, hi = part.partition(":")
        if not sep:
            raise ValueError(f"window axis {part!r} must look like lo:hi")
        bounds.append((Fraction(lo.strip()), Fraction(hi.strip())))
    return Window(tuple(bounds))
