"""Graded Z2-algebras over a Novikov ring presented by structure constants.

A :class:`RingSpec` hosts QH(M, Lambda) with the quantum product (kind
``AMBIENT``, degree shift -2n) or QH(L) with the Lagrangian product (kind
``LAGRANGIAN``, shift -n), optionally with the module action of an ambient
ring on a Lagrangian one.  Elements are :class:`ClassVector` instances.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .errors import InvalidRing, NoModuleStructure, ParseError, RingMismatch
from .novikov import NEG_INFINITY, Laurent, MonotoneContext, variable_class


class Kind(str, enum.Enum):
    AMBIENT = "AMBIENT"
    LAGRANGIAN = "LAGRANGIAN"


@dataclass(frozen=True)
class BasisElement:
    id: str
    degree: int


Components = dict  # basis id -> Laurent, never holding a zero coefficient
ProductRule = Callable[[str, str], Mapping[str, Laurent]]


def _accumulate(acc: dict, key: str, coeff: Laurent) -> None:
    cur = acc.get(key)
    new = coeff if cur is None else cur + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


class RingSpec:
    """A graded algebra given by basis, degrees and structure constants.

    Constants may be given eagerly (``products``) or computed on demand by
    ``rule``; either way they are cached.  For commutative rings only one
    ordering of each basis pair needs to be supplied.
    """

    def __init__(
        self,
        name: str,
        kind: Kind | str,
        dim: int,
        context: MonotoneContext,
        basis: Iterable[BasisElement],
        unit: str,
        products: Mapping[tuple[str, str], Mapping[str, Laurent]] | None = None,
        *,
        rule: ProductRule | None = None,
        commutative: bool = True,
        variable: str = "t",
        module_constants: Mapping[tuple[str, str], Mapping[str, Laurent]] | None = None,
        ambient_ring: "RingSpec | None" = None,
        provenance: str = "",
    ):
        self.name = name
        self.kind = Kind(kind)
        self.dim = int(dim)
        self.context = context
        self.basis: tuple[BasisElement, ...] = tuple(basis)
        self.index = {b.id: i for i, b in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise InvalidRing(f"{name}: duplicate basis ids")
        if unit not in self.index:
            raise InvalidRing(f"{name}: unit {unit!r} is not a basis element")
        self.unit = unit
        self.commutative = commutative
        self.variable = variable
        self.coeff_type = variable_class(variable)
        self.provenance = provenance
        self._rule = rule
        self._table: dict[tuple[str, str], Components] = {}
        for (x, y), value in (products or {}).items():
            self._table[self._key(x, y)] = self._clean(value)
        if module_constants is not None and ambient_ring is None:
            raise InvalidRing(f"{name}: module constants need an ambient ring")
        self.ambient_ring = ambient_ring
        self._module: dict[tuple[str, str], Components] | None = None
        if module_constants is not None:
            self._module = {
                (a, x): self._clean(v) for (a, x), v in module_constants.items()
            }
        self._classical: dict[tuple[int, int], int] = {}

    # -- basic data -------------------------------------------------------

    def __repr__(self) -> str:
        return f"RingSpec({self.name!r}, {self.kind.value}, dim={self.dim}, rank={len(self.basis)})"

    @property
    def top_degree(self) -> int:
        return 2 * self.dim if self.kind is Kind.AMBIENT else self.dim

    @property
    def shift(self) -> int:
        """Degree drop of the product: deg(x y) = deg x + deg y - shift."""
        return self.top_degree

    @property
    def unit_degree(self) -> int:
        """|deg| of the Novikov variable (N_L for t, 2 C_M for s)."""
        return self.coeff_type.unit_degree(self.context)

    def degree_of(self, basis_id: str) -> int:
        return self.basis[self.index[basis_id]].degree

    @property
    def has_module(self) -> bool:
        return self._module is not None

    def _key(self, x: str, y: str) -> tuple[str, str]:
        if x not in self.index or y not in self.index:
            raise InvalidRing(f"{self.name}: unknown basis element in ({x}, {y})")
        if self.commutative and self.index[x] > self.index[y]:
            return (y, x)
        return (x, y)

    def _clean(self, value: Mapping[str, Laurent]) -> Components:
        out: Components = {}
        for b, c in value.items():
            if b not in self.index:
                raise InvalidRing(f"{self.name}: unknown basis element {b!r}")
            if not isinstance(c, self.coeff_type):
                raise InvalidRing(f"{self.name}: coefficient {c!r} is not a {self.coeff_type.__name__}")
            if c:
                out[b] = c
        return out

    # -- structure constants ---------------------------------------------

    def basis_product(self, x: str, y: str) -> Components:
        """Product of two basis elements, as a components dict (do not mutate)."""
        key = self._key(x, y)
        value = self._table.get(key)
        if value is None:
            if self._rule is not None:
                value = self._clean(self._rule(*key))
            else:
                value = {}
            self._table[key] = value
        return value

    def materialize(self) -> None:
        """Fill the constants table for every basis pair."""
        for x, y in self.pairs():
            self.basis_product(x, y)

    def pairs(self) -> Iterator[tuple[str, str]]:
        ids = [b.id for b in self.basis]
        if self.commutative:
            yield from itertools.combinations_with_replacement(ids, 2)
        else:
            yield from itertools.product(ids, repeat=2)

    def stored_products(self) -> dict[tuple[str, str], Components]:
        self.materialize()
        return {k: v for k, v in self._table.items() if v}

    def module_product(self, a: str, x: str) -> Components:
        if self._module is None:
            raise NoModuleStructure(f"{self.name} carries no module constants")
        return self._module.get((a, x), {})

    def stored_module(self) -> dict[tuple[str, str], Components]:
        if self._module is None:
            return {}
        return {k: v for k, v in self._module.items() if v}

    def classical_basis_product(self, i: int, j: int) -> int:
        """t^0 part of b_i * b_j as a bitmask over basis indices."""
        key = (i, j)
        hit = self._classical.get(key)
        if hit is None:
            hit = 0
            for b, c in self.basis_product(self.basis[i].id, self.basis[j].id).items():
                if 0 in c.exponents:
                    hit |= 1 << self.index[b]
            self._classical[key] = hit
        return hit

    # -- element constructors --------------------------------------------

    def element(self, components: Mapping[str, Laurent] | None = None) -> "ClassVector":
        return ClassVector(self, self._clean(components or {}))

    def basis_vector(self, basis_id: str, coeff: Laurent | None = None) -> "ClassVector":
        return self.element({basis_id: coeff if coeff is not None else self.coeff_type.one()})

    def one(self) -> "ClassVector":
        return self.basis_vector(self.unit)

    def zero(self) -> "ClassVector":
        return ClassVector(self, {})

    def __getitem__(self, basis_id: str) -> "ClassVector":
        return self.basis_vector(basis_id)

    def parse(self, text: str) -> "ClassVector":
        return parse_class(self, text)


class ClassVector:
    """Z2-combination of basis elements with Novikov coefficients."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: RingSpec, components: Components):
        self.ring = ring
        self.components = components

    def _same(self, other: "ClassVector") -> None:
        if not isinstance(other, ClassVector) or other.ring is not self.ring:
            raise RingMismatch("operands live in different rings")

    def __add__(self, other: "ClassVector") -> "ClassVector":
        self._same(other)
        acc = dict(self.components)
        for b, c in other.components.items():
            _accumulate(acc, b, c)
        return ClassVector(self.ring, acc)

    __sub__ = __add__

    def scale(self, coeff: Laurent) -> "ClassVector":
        return ClassVector(self.ring, {b: c * coeff for b, c in self.components.items() if c * coeff})

    def shift(self, k: int) -> "ClassVector":
        """Multiply by var^k."""
        return ClassVector(self.ring, {b: c.shift(k) for b, c in self.components.items()})

    def __mul__(self, other: "ClassVector") -> "ClassVector":
        return product(self, other)

    def __bool__(self) -> bool:
        return bool(self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClassVector)
            and other.ring is self.ring
            and other.components == self.components
        )

    def __hash__(self) -> int:
        return hash((id(self.ring), frozenset(self.components.items())))

    def key(self) -> frozenset:
        return frozenset((b, c.exponents) for b, c in self.components.items())

    def terms(self) -> Iterator[tuple[str, int]]:
        """(basis id, exponent) pairs in basis order."""
        for b in sorted(self.components, key=self.ring.index.__getitem__):
            for k in sorted(self.components[b].exponents):
                yield b, k

    def degree(self) -> int | None:
        """Common degree of all terms, or None when zero or inhomogeneous."""
        degs = {self.ring.degree_of(b) - k * self._unit_degree() for b, k in self.terms()}
        return degs.pop() if len(degs) == 1 else None

    def _unit_degree(self) -> int:
        if self.ring.context.weakly_exact:
            return 0
        return self.ring.unit_degree

    def is_homogeneous(self) -> bool:
        return not self.components or self.degree() is not None

    def __str__(self) -> str:
        return format_class(self)

    def __repr__(self) -> str:
        return f"ClassVector({self.ring.name}: {format_class(self)})"


def product(x: ClassVector, y: ClassVector) -> ClassVector:
    """Bilinear extension of the structure constants."""
    if x.ring is not y.ring:
        raise RingMismatch(f"cannot multiply {x.ring.name} by {y.ring.name}")
    ring = x.ring
    acc: dict = {}
    for bx, cx in x.components.items():
        for by, cy in y.components.items():
            coeff = cx * cy
            for bz, cz in ring.basis_product(bx, by).items():
                _accumulate(acc, bz, cz * coeff)
    return ClassVector(ring, acc)


def module_act(a: ClassVector, alpha: ClassVector) -> ClassVector:
    """The module action a . alpha of ambient classes on Lagrangian ones."""
    lring = alpha.ring
    if not lring.has_module:
        raise NoModuleStructure(f"{lring.name} carries no module constants")
    if a.ring is not lring.ambient_ring:
        raise RingMismatch(f"{a.ring.name} is not the ambient ring of {lring.name}")
    acc: dict = {}
    for ba, ca in a.components.items():
        # ambient coefficients are moved into Lambda of the Lagrangian ring
        ca = _to_lagrangian_coeff(ca, a.ring, lring)
        for bx, cx in alpha.components.items():
            coeff = ca * cx
            for bz, cz in lring.module_product(ba, bx).items():
                _accumulate(acc, bz, cz * coeff)
    return ClassVector(lring, acc)


def _to_lagrangian_coeff(c: Laurent, ambient: RingSpec, lring: RingSpec) -> Laurent:
    if type(c) is lring.coeff_type:
        return c
    from .novikov import embed_gamma

    return embed_gamma(c, lring.context)


def valuation_ambient(a: ClassVector) -> Fraction | float:
    """I_omega(a) = A_L * max nu of the coefficients."""
    if a.ring.kind is not Kind.AMBIENT:
        raise RingMismatch(f"{a.ring.name} is not an ambient ring")
    if not a:
        return NEG_INFINITY
    return a.ring.context.area * max(c.valuation() for c in a.components.values())


def valuation_lagrangian(alpha: ClassVector) -> int | float:
    """nu(alpha) evaluated on the canonical basis expansion (dimensionless)."""
    if alpha.ring.kind is not Kind.LAGRANGIAN:
        raise RingMismatch(f"{alpha.ring.name} is not a Lagrangian ring")
    if not alpha:
        return NEG_INFINITY
    return max(c.valuation() for c in alpha.components.values())


def classical_part(x: ClassVector) -> ClassVector:
    """Keep only the var^0 coefficients."""
    one = x.ring.coeff_type.one()
    return ClassVector(x.ring, {b: one for b, c in x.components.items() if 0 in c.exponents})


def power(x: ClassVector, k: int) -> ClassVector:
    out = x.ring.one()
    for _ in range(k):
        out = product(out, x)
    return out


def fold(factors: Iterable[ClassVector], ring: RingSpec) -> ClassVector:
    out = ring.one()
    for f in factors:
        out = product(out, f)
    return out


# -- text format ------------------------------------------------------------


def format_class(x: ClassVector) -> str:
    if not x.components:
        return "0"
    var = x.ring.variable
    parts = []
    for b, k in x.terms():
        if k == 0:
            parts.append(b)
        elif k == 1:
            parts.append(f"{b}*{var}")
        else:
            parts.append(f"{b}*{var}^{k}")
    return " + ".join(parts)


def parse_class(ring: RingSpec, text: str) -> ClassVector:
    """Parse ``h1*t^2 + h0`` style expressions (factors in any order)."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    var_re = re.compile(rf"^{re.escape(ring.variable)}(?:\^\(?(-?\d+)\)?)?$")
    acc: dict = {}
    for raw in text.split("+"):
        basis_id = None
        exp = 0
        for factor in raw.strip().split("*"):
            factor = factor.strip()
            if factor == "1":
                continue
            m = var_re.match(factor)
            if m:
                exp += int(m.group(1)) if m.group(1) is not None else 1
            elif factor in ring.index and basis_id is None:
                basis_id = factor
            else:
                raise ParseError(f"cannot parse term {raw!r} of {text!r} in {ring.name}")
        if basis_id is None:
            basis_id = ring.unit
        _accumulate(acc, basis_id, ring.coeff_type.monomial(exp))
    return ClassVector(ring, acc)


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    ring: str
    ok: bool = True
    failures: list[str] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.ok = False
        self.failures.append(message)

    def count(self, what: str, n: int = 1) -> None:
        self.checked[what] = self.checked.get(what, 0) + n

    def __str__(self) -> str:
        head = f"{self.ring}: {'PASS' if self.ok else 'FAIL'}"
        return "\n".join([head, *("  " + f for f in self.failures[:20])])


def _degree_failures(ring: RingSpec, value: Components, expected: int, label: str, unit_deg: int) -> list[str]:
    out = []
    for b, c in value.items():
        for k in c.exponents:
            if unit_deg == 0 and k != 0:
                out.append(f"{label}: weakly exact ring has Novikov term {ring.variable}^{k}")
                continue
            deg = ring.degree_of(b) - k * unit_deg
            if deg != expected:
                out.append(f"{label}: term {b}*{ring.variable}^{k} has degree {deg}, expected {expected}")
    return out


def validate(ring: RingSpec, max_failures: int = 50) -> ValidationReport:
    """Check degree law, unit, commutativity, associativity and module laws."""
    rep = ValidationReport(ring.name)
    unit_deg = 0 if ring.context.weakly_exact else ring.unit_degree
    ids = [b.id for b in ring.basis]
    for b in ring.basis:
        if not 0 <= b.degree <= ring.top_degree:
            rep.fail(f"basis {b.id} has degree {b.degree} outside [0, {ring.top_degree}]")
    if ring.degree_of(ring.unit) != ring.top_degree:
        rep.fail(f"unit {ring.unit} does not have top degree {ring.top_degree}")

    def done() -> bool:
        return len(rep.failures) >= max_failures

    for x, y in itertools.product(ids, repeat=2):
        val = ring.basis_product(x, y)
        expected = ring.degree_of(x) + ring.degree_of(y) - ring.shift
        for msg in _degree_failures(ring, val, expected, f"{x}*{y}", unit_deg):
            rep.fail(msg)
        rep.count("degree")
        if ring.commutative and ring.index[x] < ring.index[y]:
            rep.count("commutativity")
    for x in ids:
        bx = ring[x]
        if product(ring.one(), bx) != bx or product(bx, ring.one()) != bx:
            rep.fail(f"unit law fails for {x}")
        rep.count("unit")
    if done():
        return rep

    basis_vecs = {x: ring[x] for x in ids}
    for x, y in itertools.product(ids, repeat=2):
        xy = ClassVector(ring, dict(ring.basis_product(x, y)))
        for z in ids:
            lhs = product(xy, basis_vecs[z])
            rhs = product(basis_vecs[x], ClassVector(ring, dict(ring.basis_product(y, z))))
            rep.count("associativity")
            if lhs != rhs:
                rep.fail(f"associativity fails on ({x}, {y}, {z}): {lhs} != {rhs}")
                if done():
                    return rep

    if ring.has_module:
        _validate_module(ring, rep, unit_deg, done)
    return rep


def _validate_module(ring: RingSpec, rep: ValidationReport, unit_deg: int, done) -> None:
    amb = ring.ambient_ring
    aids = [b.id for b in amb.basis]
    lids = [b.id for b in ring.basis]
    for a in aids:
        for x in lids:
            expected = amb.degree_of(a) + ring.degree_of(x) - 2 * amb.dim
            for msg in _degree_failures(ring, ring.module_product(a, x), expected, f"{a}.{x}", unit_deg):
                rep.fail(msg)
            rep.count("module degree")
    for x in lids:
        if module_act(amb.one(), ring[x]) != ring[x]:
            rep.fail(f"unit module law fails for {x}")
        rep.count("module unit")
    for a, b in itertools.product(aids, repeat=2):
        ab = ClassVector(amb, dict(amb.basis_product(a, b)))
        for x in lids:
            lhs = module_act(ab, ring[x])
            rhs = module_act(amb[a], module_act(amb[b], ring[x]))
            rep.count("module associativity")
            if lhs != rhs:
                rep.fail(f"module associativity fails on ({a}, {b}, {x})")
                if done():
                    return
    for a in aids:
        av = amb[a]
        for x, y in itertools.product(lids, repeat=2):
            xv, yv = ring[x], ring[y]
            first = module_act(av, product(xv, yv))
            second = product(module_act(av, xv), yv)
            third = product(xv, module_act(av, yv))
            rep.count("two-sided algebra")
            if not (first == second == third):
                rep.fail(f"two-sided algebra law fails on ({a}, {x}, {y})")
                if done():
                    return


def require_valid(ring: RingSpec) -> RingSpec:
    rep = validate(ring)
    if not rep.ok:
        raise InvalidRing(f"{ring.name} failed validation", rep.failures)
    return ring
