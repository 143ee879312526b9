"""Lower-bound calculators: cup-length, FQF/LFQF counts, fixed points, Chekanov criterion.

Every report lists its hypotheses.  Those the ring data can decide are
checked; geometric ones (wideness, non-narrowness, isolated intersections)
are recorded as asserted or not asserted by the caller.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Kind, RingSpec
from .errors import BadParameters, NoFactorization
from .factorization import FqfCertificate, counting_lower_bound, find_best_fqf, verify_fqf
from .gf2 import EchelonBasis, bits


class Theorem(str, enum.Enum):
    CUPLENGTH = "CUPLENGTH"
    FQF = "THM_FQF"
    LFQF = "THM_LFQF"
    FIXED_POINTS = "THM_FIXED_POINTS"
    CHEKANOV = "THM_CHEKANOV"


class Status(str, enum.Enum):
    PASS = "checked: holds"
    FAIL = "checked: fails"
    ASSERTED = "user-asserted"
    UNASSERTED = "not asserted"


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: Status
    detail: str = ""

    @property
    def satisfied(self) -> bool:
        return self.status in (Status.PASS, Status.ASSERTED)


def _asserted(name: str, flag: bool, detail: str) -> Hypothesis:
    return Hypothesis(name, Status.ASSERTED if flag else Status.UNASSERTED, detail)


def _checked(name: str, ok: bool, detail: str) -> Hypothesis:
    return Hypothesis(name, Status.PASS if ok else Status.FAIL, detail)


@dataclass
class BoundReport:
    theorem: Theorem
    ring: str
    value: int | None
    certificate: FqfCertificate | tuple[str, ...] | None = None
    hypotheses: list[Hypothesis] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        """True when a value exists and every hypothesis is checked or asserted."""
        return self.value is not None and all(h.satisfied for h in self.hypotheses)

    def to_dict(self) -> dict:
        cert = self.certificate
        if isinstance(cert, FqfCertificate):
            cert = cert.to_dict()
        elif cert is not None:
            cert = list(cert)
        return {
            "theorem": self.theorem.value,
            "ring": self.ring,
            "value": self.value,
            "conclusive": self.conclusive,
            "certificate": cert,
            "hypotheses": [
                {"name": h.name, "status": h.status.value, "detail": h.detail} for h in self.hypotheses
            ],
        }

    def render(self) -> str:
        lines = [f"{self.theorem.value} on {self.ring}: "
                 + (f"lower bound {self.value}" if self.value is not None else "no bound (hypotheses fail)")]
        cert = self.certificate
        if isinstance(cert, FqfCertificate):
            lines.append(f"  certificate: {cert}")
        elif cert is not None:
            lines.append(f"  witness: {' * '.join(cert) if cert else '(empty product)'}")
        lines.append("  hypotheses:")
        for h in self.hypotheses:
            extra = f" ({h.detail})" if h.detail else ""
            lines.append(f"    [{h.status.value}] {h.name}{extra}")
        return "\n".join(lines)


# -- cup-length --------------------------------------------------------------------


def classical_mul(ring: RingSpec, x: int, y: int) -> int:
    """t^0 product of two bitmask vectors."""
    out = 0
    for i in bits(x):
        for j in bits(y):
            out ^= ring.classical_basis_product(i, j)
    return out


def _mask_degree(ring: RingSpec, mask: int) -> int:
    return ring.basis[(mask & -mask).bit_length() - 1].degree


def cuplength_witness(ring: RingSpec) -> tuple[str, ...]:
    """Longest sequence of basis classes of degree below the top degree whose
    classical product is nonzero.
    """
    top = ring.top_degree
    factors = sorted(
        (i for i, b in enumerate(ring.basis) if b.degree < top),
        key=lambda i: (top - ring.basis[i].degree, i),
    )
    if not factors:
        return ()
    c_min = top - ring.basis[factors[0]].degree
    memo: dict[int, tuple[int, ...]] = {}

    def longest(state: int) -> tuple[int, ...]:
        hit = memo.get(state)
        if hit is not None:
            return hit
        cap = _mask_degree(ring, state) // c_min
        best: tuple[int, ...] = ()
        for f in factors:
            if len(best) >= cap:
                break
            nxt = 0
            for i in bits(state):
                nxt ^= ring.classical_basis_product(i, f)
            if not nxt:
                continue
            cand = (f,) + longest(nxt)
            if len(cand) > len(best):
                best = cand
        memo[state] = best
        return best

    start = 1 << ring.index[ring.unit]
    return tuple(ring.basis[i].id for i in longest(start))


def cuplength(ring: RingSpec) -> BoundReport:
    witness = cuplength_witness(ring)
    return BoundReport(Theorem.CUPLENGTH, ring.name, len(witness) + 1, witness)


# -- factorization bounds ----------------------------------------------------------


def _finite_maslov(ring: RingSpec) -> Hypothesis:
    ctx = ring.context
    ok = not ctx.weakly_exact and ctx.maslov_min >= 2
    return _checked("N_L >= 2 and finite", ok, f"N_L = {'inf' if ctx.weakly_exact else ctx.maslov_min}")


def _require_kind(ring: RingSpec, kind: Kind, what: str) -> None:
    if ring.kind is not kind:
        raise BadParameters(f"{what} needs a {kind.value} ring, {ring.name} is {ring.kind.value}")


def _certified(cert: FqfCertificate | None, ring: RingSpec) -> FqfCertificate:
    if cert is None:
        raise NoFactorization(f"no factorization of the unit found on {ring.name}")
    if not verify_fqf(cert):  # pragma: no cover - search only returns verified sequences
        raise AssertionError("search returned a certificate that does not replay")
    return cert


def bound_fqf(ring: RingSpec, max_length: int | None = None, *,
              assert_nonnarrow: bool = False, assert_isolated: bool = False) -> BoundReport:
    _require_kind(ring, Kind.AMBIENT, "the FQF bound")
    hyps = [_finite_maslov(ring)]
    if not hyps[0].satisfied:
        raise BadParameters(f"{ring.name}: the FQF bound needs a finite minimal Maslov number")
    cert = _certified(find_best_fqf(ring, max_length), ring)
    hyps += [
        _asserted("L non-narrow", assert_nonnarrow, "geometric input"),
        _asserted("L and phi(L) intersect transversally or in isolated points", assert_isolated,
                  "geometric input"),
    ]
    return BoundReport(Theorem.FQF, ring.name, counting_lower_bound(cert.length, cert.order), cert, hyps)


def bound_lfqf(ring: RingSpec, max_length: int | None = None, *, assert_wide: bool = False) -> BoundReport:
    _require_kind(ring, Kind.LAGRANGIAN, "the LFQF bound")
    hyps = [_finite_maslov(ring)]
    if not hyps[0].satisfied:
        raise BadParameters(f"{ring.name}: the LFQF bound needs a finite minimal Maslov number")
    cert = _certified(find_best_fqf(ring, max_length), ring)
    hyps.append(_asserted("L wide", assert_wide, "geometric input"))
    return BoundReport(Theorem.LFQF, ring.name, counting_lower_bound(cert.length, cert.order), cert, hyps)


def bound_fixed_points(ring: RingSpec, max_length: int | None = None, *,
                       assert_isolated: bool = False) -> BoundReport:
    """Fixed-point count from an FQF whose order is read in s."""
    _require_kind(ring, Kind.AMBIENT, "the fixed-point bound")
    if ring.variable == "t" and ring.context.weakly_exact:
        raise BadParameters(f"{ring.name}: no Novikov variable to read an order from")
    cert = _certified(find_best_fqf(ring, max_length, gamma_order=True), ring)
    hyps = [_asserted("fixed points isolated", assert_isolated, "property of the Hamiltonian")]
    return BoundReport(Theorem.FIXED_POINTS, ring.name,
                       counting_lower_bound(cert.length, cert.order), cert, hyps)


# -- Chekanov-type criterion -------------------------------------------------------


def generated_by_check(ring: RingSpec, threshold_degree: int) -> bool:
    """Do the classes of degree >= threshold generate the classical ring?"""
    gens = [1 << i for i, b in enumerate(ring.basis) if b.degree >= threshold_degree]
    span = EchelonBasis()
    frontier = [g for g in gens if span.add(g)]
    while frontier:
        fresh = []
        for v in frontier:
            for g in gens:
                w = classical_mul(ring, v, g)
                if w and span.add(w):
                    fresh.append(w)
        frontier = fresh
    return len(span) == len(ring.basis)


def bound_chekanov(ring: RingSpec, gamma_value: Fraction | int | str, *,
                   assert_wide: bool = False) -> BoundReport:
    """cl(L) intersection points when gamma < A_L and low codegree classes generate."""
    _require_kind(ring, Kind.LAGRANGIAN, "the Chekanov-type bound")
    gamma = Fraction(gamma_value)
    ctx = ring.context
    hyps = [_finite_maslov(ring)]
    if hyps[0].satisfied:
        area = ctx.area
        hyps.append(_checked("gamma < A_L", gamma < area, f"gamma = {gamma}, A_L = {area}"))
        threshold = ring.dim + 1 - ctx.maslov_min
        hyps.append(_checked(
            f"H_*(L) generated by classes of degree >= {threshold}",
            generated_by_check(ring, threshold),
            "classical intersection product",
        ))
    hyps.append(_asserted("L wide", assert_wide, "geometric input"))
    if not all(h.satisfied for h in hyps):
        return BoundReport(Theorem.CHEKANOV, ring.name, None, None, hyps)
    cl = cuplength(ring)
    return BoundReport(Theorem.CHEKANOV, ring.name, cl.value, cl.certificate, hyps)
