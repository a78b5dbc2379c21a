"""File formats and report serialization.

Point clouds and configuration specs use a plain line format described
in the README.  Reports serialize to JSON with every rational carried as
an exact "p/q" string (plain int when the denominator is 1); floats
never appear.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Optional

from .algebra import ExponentBasis, LaurentPoly, format_poly
from .configurations import (
    Alphabet,
    Configuration,
    ExplicitConfig,
    FloorFiberConfig,
    LatticeConfig,
    torus_config,
)
from .delone import PointCloud
from .precision import precision_bits, named_value
from .window import Window, parse_window


# ---------------------------------------------------------------------------
# JSON

def to_jsonable(obj):
    """Exact JSON image: Fractions become "p/q" strings, never floats."""
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("refusing to serialize a float; use Fraction")
    if isinstance(obj, LaurentPoly):
        return format_poly(obj)
    if isinstance(obj, Window):
        return obj.describe()
    if isinstance(obj, ExponentBasis):
        return obj.describe()
    if isinstance(obj, (PointCloud, Configuration)):
        return obj.describe()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: to_jsonable(v) for k, v in sorted(obj.items())}
        return [[to_jsonable(k), to_jsonable(v)] for k, v in sorted(obj.items())]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(x) for x in sorted(obj)]
    raise TypeError(f"no JSON image for {type(obj).__name__}")


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclasses.dataclass
class RunConfig:
    command: str
    arguments: dict
    precision_bits: int


def make_report(command: str, arguments: dict, payload) -> dict:
    return {
        "run": to_jsonable(RunConfig(command, arguments, precision_bits())),
        "report": to_jsonable(payload),
    }


def dump_report(report: dict, path: Optional[str]) -> str:
    text = json.dumps(report, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


# ---------------------------------------------------------------------------
# point cloud files

def write_cloud(cloud: PointCloud, path: str) -> None:
    lines = ["# point cloud"]
    basis = cloud.basis
    lines.append(f"rank {basis.rank}")
    lines.append(f"dim {basis.dim}")
    for vec in basis.vectors:
        lines.append("generator " + " ".join(_frac_str(x) for x in vec))
    lines.append("classes " + " | ".join(
        " ".join(str(i) for i in cls) for cls in basis.classes))
    lines.append("window " + cloud.window.describe())
    if cloud.label:
        lines.append(f"label {cloud.label}")
    for p in cloud.points:
        color = cloud.color(p)
        entry = "point " + " ".join(str(x) for x in p)
        if color != 1:
            entry += " color " + _frac_str(color)
        lines.append(entry)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def read_cloud(path: str) -> PointCloud:
    rank = dim = None
    gens = []
    classes = None
    window = None
    label = ""
    points = []
    colors = {}
    for lineno, raw in enumerate(open(path), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "rank":
            rank = int(rest)
        elif head == "dim":
            dim = int(rest)
        elif head == "generator":
            gens.append(tuple(Fraction(tok) for tok in rest.split()))
        elif head == "classes":
            classes = tuple(tuple(int(tok) for tok in part.split())
                            for part in rest.split("|"))
        elif head == "window":
            window = parse_window(rest)
        elif head == "label":
            label = rest
        elif head == "point":
            toks = rest.split()
            if "color" in toks:
                at = toks.index("color")
                colors[tuple(int(t) for t in toks[:at])] = Fraction(toks[at + 1])
                toks = toks[:at]
            points.append(tuple(int(t) for t in toks))
        else:
            raise ValueError(f"{path}:{lineno}: unknown directive {head!r}")
    if rank is None or not gens or window is None:
        raise ValueError(f"{path}: needs rank, generator and window lines")
    if dim is None:
        dim = len(gens[0])
    if classes is None:
        classes = (tuple(range(rank)),)
    basis = ExponentBasis(rank, dim, tuple(gens), classes)
    return PointCloud(basis, tuple(points), window, colors, label)


# ---------------------------------------------------------------------------
# configuration spec files

def read_config_spec(path: str) -> Configuration:
    entries = []
    for lineno, raw in enumerate(open(path), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            entries.append((lineno, line))
    if not entries:
        raise ValueError(f"{path}: empty configuration spec")
    _, first = entries[0]
    head, _, kind = first.partition(" ")
    if head != "kind":
        raise ValueError(f"{path}:{entries[0][0]}: first line must be 'kind ...'")
    kind = kind.strip()
    fields = {}
    values = {}
    periods = []
    weights = None
    for lineno, line in entries[1:]:
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "value":
            lhs, _, rhs = rest.partition("=")
            point = tuple(int(t) for t in lhs.split())
            values[point] = Fraction(rhs.strip())
        elif head == "period":
            periods.append(tuple(int(t) for t in rest.split()))
        elif head == "weights":
            weights = tuple(int(t) for t in rest.split())
        elif head in ("z", "alpha", "window", "rank", "beta", "scale", "bits"):
            fields[head] = rest
        else:
            raise ValueError(f"{path}:{lineno}: unknown directive {head!r}")

    bits = int(fields["bits"]) if "bits" in fields else None
    if kind == "torus":
        z = tuple(Fraction(t) for t in fields["z"].split())
        return torus_config(z, named_value(fields["alpha"], bits))
    if kind == "lattice":
        if not periods or not values:
            raise ValueError(f"{path}: lattice spec needs period and value lines")
        rank = int(fields.get("rank", len(periods[0])))
        return LatticeConfig(ExponentBasis.integer_lattice(rank),
                             tuple(periods), values)
    if kind == "explicit":
        window = parse_window(fields["window"])
        rank = int(fields.get("rank", len(window.bounds)))
        alphabet = Alphabet(tuple(sorted(set(values.values()) | {Fraction(0)})))
        return ExplicitConfig(ExponentBasis.integer_lattice(rank), values,
                              window, alphabet)
    if kind == "floor":
        if weights is None:
            raise ValueError(f"{path}: floor spec needs a weights line")
        return FloorFiberConfig(
            ExponentBasis.integer_lattice(len(weights)),
            beta=Fraction(fields.get("beta", "0")),
            alpha=named_value(fields["alpha"], bits),
            weights=weights,
            scale=Fraction(fields.get("scale", "1")),
        )
    raise ValueError(f"{path}: unknown configuration kind {kind!r}")
