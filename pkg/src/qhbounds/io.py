"""File formats: JSON ring specifications and filtered complexes, plain-text grids."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .algebra import BasisElement, ClassVector, RingSpec, format_class, parse_class, validate
from .errors import InvalidRing, ParseError
from .filtered import FilteredComplex
from .grid import GridFunction, sphere_complex, torus_complex
from .novikov import MonotoneContext


def ring_to_dict(ring: RingSpec) -> dict:
    d = {
        "name": ring.name,
        "kind": ring.kind.value,
        "dim": ring.dim,
        "variable": ring.variable,
        "commutative": ring.commutative,
        "context": ring.context.to_dict(),
        "basis": [{"id": b.id, "degree": b.degree} for b in ring.basis],
        "unit": ring.unit,
        "products": [],
    }
    table = ring.stored_products()
    for (x, y), comps in sorted(table.items(), key=lambda kv: (ring.index[kv[0][0]], ring.index[kv[0][1]])):
        d["products"].append({"lhs": x, "rhs": y, "value": format_class(ClassVector(ring, comps))})
    if ring.has_module:
        d["ambient"] = ring_to_dict(ring.ambient_ring)
        mods = ring.stored_module()
        amb = ring.ambient_ring
        d["modules"] = [
            {"lhs": a, "rhs": x, "value": format_class(ClassVector(ring, comps))}
            for (a, x), comps in sorted(mods.items(), key=lambda kv: (amb.index[kv[0][0]], ring.index[kv[0][1]]))
        ]
    if ring.provenance:
        d["provenance"] = ring.provenance
    return d


def ring_from_dict(d: Mapping, *, check: bool = True) -> RingSpec:
    try:
        basis = [BasisElement(str(b["id"]), int(b["degree"])) for b in d["basis"]]
        ctx = MonotoneContext.from_dict(d["context"])
        ambient = ring_from_dict(d["ambient"], check=check) if "ambient" in d else None
        shell = RingSpec(d["name"], d["kind"], int(d["dim"]), ctx, basis, d["unit"],
                         variable=d.get("variable", "t"), commutative=bool(d.get("commutative", True)))
        products = {}
        for row in d.get("products", []):
            products[(row["lhs"], row["rhs"])] = parse_class(shell, row["value"]).components
        modules = None
        if "modules" in d:
            modules = {(row["lhs"], row["rhs"]): parse_class(shell, row["value"]).components
                       for row in d["modules"]}
        ring = RingSpec(d["name"], d["kind"], int(d["dim"]), ctx, basis, d["unit"], products,
                        variable=d.get("variable", "t"), commutative=bool(d.get("commutative", True)),
                        module_constants=modules, ambient_ring=ambient,
                        provenance=d.get("provenance", ""))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed ring specification: {exc}") from exc
    if check:
        report = validate(ring)
        if not report.ok:
            raise InvalidRing(f"{ring.name} fails validation", report.failures)
    return ring


def load_ring(path: str | Path) -> RingSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    return ring_from_dict(data)


def dumps_ring(ring: RingSpec) -> str:
    return json.dumps(ring_to_dict(ring), indent=2)


def load_complex(path: str | Path) -> FilteredComplex:
    try:
        data = json.loads(Path(path).read_text())
        return FilteredComplex.from_dict(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{path}: {exc}") from exc


def dumps_complex(cx: FilteredComplex) -> str:
    return json.dumps(cx.to_dict(), indent=2)


def parse_grid(text: str) -> GridFunction:
    """``torus 2 8 8`` (dimension, then sizes) or ``sphere 2 2 2`` header, then rational vertex values."""
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    tokens = " ".join(lines).split()
    if not tokens:
        raise ParseError("empty grid file")
    kind = tokens[0].lower()
    rest = tokens[1:]
    n_axes = 3 if kind == "sphere" else None
    if kind not in ("torus", "sphere"):
        raise ParseError(f"unknown grid kind {tokens[0]!r}")
    try:
        if n_axes is None:
            if not rest:
                raise ParseError("torus header needs resolutions")
            # header: torus d m_1 ... m_d
            d = int(rest[0])
            shape, values = [int(x) for x in rest[1:1 + d]], rest[1 + d:]
        else:
            shape, values = [int(x) for x in rest[:3]], rest[3:]
        cx = torus_complex(shape) if kind == "torus" else sphere_complex(shape)
        return GridFunction(cx, [Fraction(v) for v in values])
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad grid data: {exc}") from exc


def format_grid(f: GridFunction) -> str:
    cx = f.complex
    if cx.kind.value == "torus":
        head = f"torus {len(cx.shape)} " + " ".join(map(str, cx.shape))
    else:
        head = "sphere " + " ".join(map(str, cx.shape))
    return head + "\n" + " ".join(str(v) for v in f.values) + "\n"


def load_grid(path: str | Path) -> GridFunction:
    return parse_grid(Path(path).read_text())
