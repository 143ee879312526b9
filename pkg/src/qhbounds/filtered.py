"""Action-filtered chain complexes over Lambda and their spectral invariants.

A chain is a dict mapping generator id to a Laurent coefficient.  The term
g (x) t^j has filtration action(g) - j*A_L and degree deg(g) - j*N_L.  For a
fixed degree every generator occurs with at most one power of t, so each
degree piece is a finite Z2 vector space and the minimax over
representatives is a plain pivot reduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvalidMorseData, NotACycle, ParseError
from .gf2 import EchelonBasis
from .novikov import NEG_INFINITY, WEAKLY_EXACT, Laurent, MonotoneContext

Chain = dict  # generator id -> Laurent


@dataclass(frozen=True)
class FilteredGenerator:
    id: str
    action: Fraction
    degree: int

    def __post_init__(self):
        if isinstance(self.action, float):
            raise TypeError("actions must be exact rationals")
        object.__setattr__(self, "action", Fraction(self.action))


def chain_add(a: Mapping[str, Laurent], b: Mapping[str, Laurent]) -> Chain:
    out = dict(a)
    for g, c in b.items():
        s = out.get(g, Laurent.zero()) + c
        if s:
            out[g] = s
        else:
            out.pop(g, None)
    return out


def chain_shift(a: Mapping[str, Laurent], k: int) -> Chain:
    return {g: c.shift(k) for g, c in a.items()}


def chain_scale(a: Mapping[str, Laurent], lam: Laurent) -> Chain:
    out = {g: c * lam for g, c in a.items()}
    return {g: c for g, c in out.items() if c}


def format_chain(a: Mapping[str, Laurent], order: Iterable[str] | None = None) -> str:
    if not a:
        return "0"
    parts = []
    for g in order if order is not None else sorted(a):
        c = a.get(g)
        if not c:
            continue
        for k in sorted(c.exponents):
            parts.append(g if k == 0 else f"{g}*t^{k}")
    return " + ".join(parts)


_TPOW = re.compile(r"^t(?:\^\(?(-?\d+)\)?)?$")


def parse_chain(text: str, ids: Iterable[str]) -> Chain:
    """Parse ``g1 + g2*t^-1 + t^2*g3``; repeated terms cancel mod 2."""
    known = set(ids)
    text = text.strip()
    out: Chain = {}
    if text in ("", "0"):
        return out
    for raw in text.split("+"):
        gen, k = None, 0
        for factor in raw.replace(" ", "").split("*"):
            m = _TPOW.match(factor)
            if m:
                k += int(m.group(1)) if m.group(1) is not None else 1
            elif factor in known and gen is None:
                gen = factor
            else:
                raise ParseError(f"bad chain term {raw.strip()!r}")
        if gen is None:
            raise ParseError(f"chain term {raw.strip()!r} names no generator")
        out = chain_add(out, {gen: Laurent.monomial(k)})
    return out


class FilteredComplex:
    """Free Lambda-module on generators with an action-decreasing differential."""

    def __init__(self, context: MonotoneContext, generators: Iterable[FilteredGenerator],
                 differential: Mapping[str, Mapping[str, Laurent]] | None = None,
                 *, check: bool = True):
        self.context = context
        self.generators: tuple[FilteredGenerator, ...] = tuple(generators)
        self.by_id = {g.id: g for g in self.generators}
        if len(self.by_id) != len(self.generators):
            raise ValueError("duplicate generator ids")
        self.order = {g.id: i for i, g in enumerate(self.generators)}
        diff = differential or {}
        unknown = set(diff) - set(self.by_id)
        if unknown:
            raise ValueError(f"differential of unknown generators {sorted(unknown)}")
        self.d: dict[str, Chain] = {}
        for g in self.generators:
            row = {h: c for h, c in dict(diff.get(g.id, {})).items() if c}
            for h in row:
                if h not in self.by_id:
                    raise ValueError(f"d({g.id}) mentions unknown generator {h!r}")
            self.d[g.id] = row
        if check:
            problems = self.problems()
            if problems:
                raise ValueError("invalid filtered complex: " + "; ".join(problems[:5]))

    # -- bookkeeping ------------------------------------------------------------

    @property
    def area(self) -> Fraction:
        return self.context.area

    def term_filtration(self, g: str, k: int) -> Fraction:
        return self.by_id[g].action - k * self.area

    def term_degree(self, g: str, k: int) -> int | None:
        if k and self.context.weakly_exact:
            return None
        nl = 0 if self.context.weakly_exact else self.context.maslov_min
        return self.by_id[g].degree - k * nl

    def filtration(self, chain: Mapping[str, Laurent]) -> Fraction | float:
        """max over terms of action(g) + A_L * nu(lambda); -inf for 0."""
        best: Fraction | float = NEG_INFINITY
        for g, c in chain.items():
            if c:
                val = self.by_id[g].action + self.area * c.valuation()
                if val > best:
                    best = val
        return best

    def apply_d(self, chain: Mapping[str, Laurent]) -> Chain:
        out: Chain = {}
        for g, c in chain.items():
            if c:
                out = chain_add(out, chain_scale(self.d[g], c))
        return out

    def problems(self) -> list[str]:
        out = []
        ctx = self.context
        for g in self.generators:
            row = self.d[g.id]
            for h, c in row.items():
                for k in c.exponents:
                    if k and ctx.weakly_exact:
                        out.append(f"d({g.id}) uses t in the weakly exact case")
                        continue
                    if self.term_degree(h, k) != g.degree - 1:
                        out.append(f"d({g.id}) term {h}*t^{k} has the wrong degree")
                    if self.term_filtration(h, k) >= g.action:
                        out.append(f"d({g.id}) term {h}*t^{k} does not lower the action")
            if self.apply_d(row):
                out.append(f"d(d({g.id})) != 0")
        return out

    def spectrum(self, window: range) -> set[Fraction]:
        return {g.action - j * self.area for g in self.generators for j in window}

    # -- degree pieces ----------------------------------------------------------

    def degree_basis(self, degree: int) -> list[tuple[str, int]]:
        """Terms (g, k) of the given degree, in increasing filtration (ties by generator order)."""
        ctx = self.context
        terms = []
        for g in self.generators:
            if ctx.weakly_exact:
                if g.degree == degree:
                    terms.append((g.id, 0))
            elif (g.degree - degree) % ctx.maslov_min == 0:
                terms.append((g.id, (g.degree - degree) // ctx.maslov_min))
        terms.sort(key=lambda gk: (self.term_filtration(*gk), self.order[gk[0]]))
        return terms

    def split_by_degree(self, chain: Mapping[str, Laurent]) -> dict[int, Chain]:
        parts: dict[int, Chain] = {}
        for g, c in chain.items():
            for k in c.exponents:
                deg = self.term_degree(g, k)
                if deg is None:
                    raise ValueError("t is not available in the weakly exact case")
                parts[deg] = chain_add(parts.get(deg, {}), {g: Laurent.monomial(k)})
        return parts

    def to_dict(self) -> dict:
        return {
            "context": self.context.to_dict(),
            "generators": [
                {"id": g.id, "action": str(g.action), "degree": g.degree} for g in self.generators
            ],
            "differential": {
                g.id: format_chain(self.d[g.id], self.order) for g in self.generators if self.d[g.id]
            },
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "FilteredComplex":
        ctx = MonotoneContext.from_dict(d["context"]) if "context" in d else WEAKLY_EXACT
        gens = [FilteredGenerator(str(g["id"]), Fraction(str(g["action"])), int(g["degree"]))
                for g in d["generators"]]
        ids = [g.id for g in gens]
        diff = {g: parse_chain(row, ids) for g, row in dict(d.get("differential", {})).items()}
        return cls(ctx, gens, diff)


def _bits_of(cx: FilteredComplex, chain: Mapping[str, Laurent], pos: Mapping[tuple[str, int], int]) -> int:
    v = 0
    for g, c in chain.items():
        for k in c.exponents:
            v ^= 1 << pos[(g, k)]
    return v


def _homogeneous_invariant(cx: FilteredComplex, degree: int, chain: Chain) -> Fraction | float:
    basis = cx.degree_basis(degree)
    pos = {gk: i for i, gk in enumerate(basis)}
    upper = cx.degree_basis(degree + 1)
    boundaries = EchelonBasis()
    for h, j in upper:
        boundaries.add(_bits_of(cx, chain_shift(cx.d[h], j), pos))
    reduced = boundaries.reduce(_bits_of(cx, chain, pos))
    if not reduced:
        return NEG_INFINITY
    return cx.term_filtration(*basis[reduced.bit_length() - 1])


def spectral_invariant(cx: FilteredComplex, chain: Mapping[str, Laurent] | str) -> Fraction | float:
    """min over c + boundaries of the filtration; -inf when the class is zero."""
    if isinstance(chain, str):
        chain = parse_chain(chain, cx.by_id)
    chain = {g: c for g, c in chain.items() if c}
    if cx.apply_d(chain):
        raise NotACycle("the selected chain is not a cycle")
    best: Fraction | float = NEG_INFINITY
    for degree, part in cx.split_by_degree(chain).items():
        val = _homogeneous_invariant(cx, degree, part)
        if val > best:
            best = val
    return best


def morse_to_filtered(f_values: Mapping[str, Fraction], indices: Mapping[str, int],
                      morse_differential: Mapping[str, Iterable[str]],
                      context: MonotoneContext = WEAKLY_EXACT) -> FilteredComplex:
    """Morse complex as a filtered complex: action = f(q), degree = index."""
    if set(f_values) != set(indices):
        raise InvalidMorseData("critical values and indices name different points")
    unknown = set(morse_differential) - set(f_values)
    if unknown:
        raise InvalidMorseData(f"differential of unknown critical points {sorted(unknown)}")
    gens = [FilteredGenerator(q, Fraction(f_values[q]), int(indices[q])) for q in f_values]
    diff: dict[str, Chain] = {}
    for q, targets in morse_differential.items():
        row: Chain = {}
        for r in targets:
            if r not in f_values:
                raise InvalidMorseData(f"d({q}) mentions unknown point {r!r}")
            if indices[r] != indices[q] - 1:
                raise InvalidMorseData(f"d({q}) -> {r} does not lower the index by one")
            if not f_values[r] < f_values[q]:
                raise InvalidMorseData(f"d({q}) -> {r} does not lower f")
            row = chain_add(row, {r: Laurent.one()})
        diff[q] = row
    try:
        return FilteredComplex(context, gens, diff)
    except ValueError as exc:
        raise InvalidMorseData(str(exc)) from exc
