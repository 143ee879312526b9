"""Fundamental quantum factorizations and the residue-class counting argument."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import ClassVector, Kind, RingSpec, fold, product
from .errors import BadParameters


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class FqfCertificate:
    """factors u_1 ... u_k whose product is unit * var^(order * step).

    ``step`` is 1 except when an order in s is read on a Lambda ring, where
    it is 2 C_M / N_L.
    """

    ring: RingSpec = field(repr=False, compare=False)
    factors: tuple[str, ...]
    order: int
    step: int = 1

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def score(self) -> int:
        return counting_lower_bound(self.length, self.order)

    @property
    def lagrangian(self) -> bool:
        return self.ring.kind is Kind.LAGRANGIAN

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.name,
            "type": "LFQF" if self.lagrangian else "FQF",
            "factors": list(self.factors),
            "order": self.order,
            "step": self.step,
            "variable": self.ring.variable,
            "length": self.length,
            "score": self.score,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict, ring: RingSpec) -> "FqfCertificate":
        return cls(ring, tuple(d["factors"]), int(d["order"]), int(d.get("step", 1)))

    def __str__(self) -> str:
        var = self.ring.variable
        kind = "LFQF" if self.lagrangian else "FQF"
        expo = self.order * self.step
        return (
            f"{kind} on {self.ring.name}: {' * '.join(self.factors)} = {self.ring.unit}*{var}^{expo}"
            f"  (length {self.length}, order {self.order}, score {self.score})"
        )


def counting_lower_bound(length_k: int, order_tau: int) -> int:
    """ceil(k / tau)."""
    if length_k < 1 or order_tau < 1:
        raise BadParameters("length and order must be positive")
    return ceil_div(length_k, order_tau)


def allowed_factors(ring: RingSpec) -> list[str]:
    """Basis elements admissible as factors.

    Ambient rings: degree below the top degree.  Lagrangian rings: degree
    strictly between n - N_L and n.
    """
    top = ring.top_degree
    if ring.kind is Kind.AMBIENT:
        return [b.id for b in ring.basis if b.degree < top]
    if ring.context.weakly_exact:
        return []
    low = ring.dim - ring.context.maslov_min
    return [b.id for b in ring.basis if low < b.degree < top]


def _default_step(ring: RingSpec, gamma_order: bool) -> int:
    if not gamma_order or ring.variable == "s":
        return 1
    ctx = ring.context
    return 2 * ctx.chern_min // ctx.maslov_min


def verify_fqf(cert: FqfCertificate) -> bool:
    ring = cert.ring
    if cert.order < 1 or cert.length < 1:
        return False
    allowed = set(allowed_factors(ring))
    if any(f not in allowed for f in cert.factors):
        return False
    target = ring.one().shift(cert.order * cert.step)
    return fold((ring[f] for f in cert.factors), ring) == target


class _Search:
    """Memoised depth-first search for one fixed order."""

    def __init__(self, ring: RingSpec, factors: list[str], target: ClassVector, budget: int):
        self.ring = ring
        self.factors = factors
        self.vecs = {f: ring[f] for f in factors}
        self.codeg = {f: ring.top_degree - ring.degree_of(f) for f in factors}
        self.target_key = target.key()
        self.budget = budget
        self.memo: dict = {}
        self.steps: dict = {}

    def successors(self, state: ClassVector, key) -> list[tuple[str, ClassVector]]:
        hit = self.steps.get(key)
        if hit is None:
            hit = []
            for f in self.factors:
                nxt = product(state, self.vecs[f])
                if nxt:
                    hit.append((f, nxt))
            self.steps[key] = hit
        return hit

    def reach(self, state: ClassVector, budget: int) -> frozenset:
        """Numbers of further factors that land exactly on the target."""
        key = state.key()
        mkey = (key, budget)
        hit = self.memo.get(mkey)
        if hit is not None:
            return hit
        if budget == 0:
            out = frozenset((0,)) if key == self.target_key else frozenset()
        else:
            acc: set[int] = set()
            for f, nxt in self.successors(state, key):
                rest = budget - self.codeg[f]
                if rest < 0:
                    continue
                acc.update(r + 1 for r in self.reach(nxt, rest))
            out = frozenset(acc)
        self.memo[mkey] = out
        return out

    def lex_smallest(self, lengths: frozenset) -> tuple[str, ...]:
        """Lexicographically first factor sequence whose length lies in ``lengths``."""
        state, budget, out = self.ring.one(), self.budget, []
        while budget:
            pos = len(out) + 1
            for f, nxt in self.successors(state, state.key()):
                rest = budget - self.codeg[f]
                if rest >= 0 and any(r + pos in lengths for r in self.reach(nxt, rest)):
                    out.append(f)
                    state, budget = nxt, rest
                    break
            else:  # pragma: no cover - reach() guarantees a continuation
                raise RuntimeError("inconsistent search memo")
        return tuple(out)


def find_best_fqf(
    ring: RingSpec, max_length: int | None = None, *, gamma_order: bool = False
) -> FqfCertificate | None:
    """Best (L)FQF by score ceil(length/order); ties go to the smaller order,
    then to the lexicographically first factor sequence in basis order.

    The variant is chosen by ring kind.  ``gamma_order`` reads the order in
    s = t^(2C_M/N_L) on a Lambda ring.
    """
    if max_length is None:
        max_length = 2 * len(ring.basis)
    if max_length < 1:
        raise BadParameters("max_length must be >= 1")
    factors = allowed_factors(ring)
    if not factors:
        return None
    step = _default_step(ring, gamma_order)
    unit_deg = ring.unit_degree * step
    codegs = [ring.top_degree - ring.degree_of(f) for f in factors]
    c_min, c_max = min(codegs), max(codegs)

    best = None
    tau_max = (max_length * c_max) // unit_deg
    for tau in range(1, tau_max + 1):
        budget = tau * unit_deg
        l_hi = min(max_length, budget // c_min)
        # orders are scanned upwards, so a later order must strictly win
        if l_hi < 1 or (best is not None and ceil_div(l_hi, tau) <= best.score):
            continue
        search = _Search(ring, factors, ring.one().shift(tau * step), budget)
        lengths = [l for l in search.reach(ring.one(), budget) if 1 <= l <= max_length]
        if not lengths:
            continue
        score = max(ceil_div(l, tau) for l in lengths)
        if best is not None and score <= best.score:
            continue
        wanted = frozenset(l for l in lengths if ceil_div(l, tau) == score)
        best = FqfCertificate(ring, search.lex_smallest(wanted), tau, step)
    return best


# -- residue classes -------------------------------------------------------------


@dataclass(frozen=True)
class ActionMultiset:
    values: tuple[Fraction, ...]
    period: Fraction

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "period", Fraction(self.period))
        if self.period <= 0:
            raise BadParameters("period must be positive")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise BadParameters("action values must be strictly increasing")


def count_residue_classes(m: ActionMultiset) -> int:
    """Number of classes of a_i ~ a_j iff (a_i - a_j)/period is an integer."""
    return len({v % m.period for v in m.values})


def random_nonbasis_sequence(ring: RingSpec, rng, length: int) -> list[ClassVector]:
    """Random homogeneous Z2-combinations of admissible basis elements."""
    by_degree: dict[int, list[str]] = {}
    for f in allowed_factors(ring):
        by_degree.setdefault(ring.degree_of(f), []).append(f)
    degrees = sorted(by_degree)
    out = []
    for _ in range(length):
        group = by_degree[rng.choice(degrees)]
        picks = [b for b in group if rng.random() < 0.5] or [rng.choice(group)]
        vec = ring.zero()
        for b in picks:
            vec = vec + ring[b]
        out.append(vec)
    return out


def factorization_order(ring: RingSpec, factors: Sequence[ClassVector], step: int = 1) -> int | None:
    """The order tau if the product of ``factors`` is unit * var^(tau*step), else None."""
    prod = fold(factors, ring)
    if len(prod.components) != 1 or ring.unit not in prod.components:
        return None
    coeff = prod.components[ring.unit]
    if not coeff.is_monomial():
        return None
    (k,) = coeff.exponents
    if k <= 0 or k % step:
        return None
    return k // step


def replay(cert: FqfCertificate) -> ClassVector:
    return fold((cert.ring[f] for f in cert.factors), cert.ring)


def scores(certs: Iterable[FqfCertificate]) -> list[int]:
    return [c.score for c in certs]
