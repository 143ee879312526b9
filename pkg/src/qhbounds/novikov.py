"""Z2 Laurent polynomials standing in for the Novikov rings Lambda and Gamma.

``Laurent`` is Z2[t^-1, t] with deg t = -N_L; ``GammaElement`` is Z2[s^-1, s]
with deg s = -2 C_M.  Only finite support is modelled.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ContextMismatch, InfiniteSupport, ParseError

INFINITE = math.inf
NEG_INFINITY = -math.inf


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("actions and kappa must be exact rationals, not floats")
    return Fraction(x)


@dataclass(frozen=True)
class MonotoneContext:
    """Monotonicity data of a Lagrangian: N_L, C_M and kappa_L.

    ``maslov_min`` is ``INFINITE`` in the weakly exact case, where the area
    period is zero and t is not allowed.
    """

    maslov_min: int | float
    chern_min: int
    kappa: Fraction = field(default=Fraction(1))

    def __post_init__(self):
        object.__setattr__(self, "kappa", _as_fraction(self.kappa))
        if self.maslov_min != INFINITE:
            if int(self.maslov_min) != self.maslov_min or self.maslov_min < 2:
                raise ContextMismatch(f"minimal Maslov number must be >= 2, got {self.maslov_min}")
            object.__setattr__(self, "maslov_min", int(self.maslov_min))
        if int(self.chern_min) != self.chern_min or self.chern_min < 1:
            raise ContextMismatch(f"minimal Chern number must be a positive integer, got {self.chern_min}")
        if self.kappa <= 0:
            raise ContextMismatch("kappa must be positive")
        if not self.weakly_exact and (2 * self.chern_min) % self.maslov_min:
            raise ContextMismatch(
                f"N_L = {self.maslov_min} does not divide 2 C_M = {2 * self.chern_min}"
            )

    @property
    def weakly_exact(self) -> bool:
        return self.maslov_min == INFINITE

    @property
    def area(self) -> Fraction:
        """A_L = kappa * N_L (zero when weakly exact)."""
        if self.weakly_exact:
            return Fraction(0)
        return self.kappa * self.maslov_min

    def to_dict(self) -> dict:
        return {
            "N_L": "inf" if self.weakly_exact else self.maslov_min,
            "C_M": self.chern_min,
            "kappa": str(self.kappa),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "MonotoneContext":
        nl = d["N_L"]
        nl = INFINITE if nl in ("inf", "INFINITE", None) else int(nl)
        return cls(nl, int(d["C_M"]), Fraction(str(d.get("kappa", 1))))


WEAKLY_EXACT = MonotoneContext(INFINITE, 1)


class Laurent:
    """Finite-support Laurent polynomial over Z2, stored as its set of exponents."""

    __slots__ = ("_exps",)
    VAR = "t"

    def __init__(self, exponents: Iterable[int] = ()):
        exps = set()
        for k in exponents:
            exps ^= {int(k)}
        self._exps = frozenset(exps)

    @classmethod
    def _raw(cls, exps: frozenset) -> "Laurent":
        obj = cls.__new__(cls)
        obj._exps = exps
        return obj

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, int]) -> "Laurent":
        return cls._raw(frozenset(k for k, c in coeffs.items() if c % 2))

    @classmethod
    def monomial(cls, k: int = 0) -> "Laurent":
        return cls._raw(frozenset((int(k),)))

    @classmethod
    def zero(cls) -> "Laurent":
        return cls._raw(frozenset())

    @classmethod
    def one(cls) -> "Laurent":
        return cls.monomial(0)

    @property
    def exponents(self) -> frozenset:
        return self._exps

    def coefficient(self, k: int) -> int:
        return 1 if k in self._exps else 0

    def _check(self, other) -> None:
        if not isinstance(other, Laurent) or other.VAR != self.VAR:
            raise ContextMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other: "Laurent") -> "Laurent":
        self._check(other)
        return self._raw(self._exps ^ other._exps)

    __sub__ = __add__

    def __mul__(self, other: "Laurent") -> "Laurent":
        self._check(other)
        if len(self._exps) == 1 and len(other._exps) == 1:
            (a,), (b,) = self._exps, other._exps
            return self._raw(frozenset((a + b,)))
        out: set[int] = set()
        for a in self._exps:
            for b in other._exps:
                out ^= {a + b}
        return self._raw(frozenset(out))

    def shift(self, k: int) -> "Laurent":
        """Multiply by the monomial of exponent k."""
        return self._raw(frozenset(e + k for e in self._exps))

    def inverse(self) -> "Laurent":
        """Inverse of a monomial; any other unit would need infinite support."""
        if len(self._exps) != 1:
            raise InfiniteSupport(f"{self} has no finite-support inverse")
        (k,) = self._exps
        return self._raw(frozenset((-k,)))

    def __bool__(self) -> bool:
        return bool(self._exps)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other in (0, 1):
            return self._exps == (frozenset((0,)) if other else frozenset())
        return isinstance(other, Laurent) and other.VAR == self.VAR and self._exps == other._exps

    def __hash__(self) -> int:
        return hash((self.VAR, self._exps))

    def __len__(self) -> int:
        return len(self._exps)

    def valuation(self) -> int | float:
        """max{-k : a_k != 0}; NEG_INFINITY for zero."""
        if not self._exps:
            return NEG_INFINITY
        return -min(self._exps)

    def is_monomial(self) -> bool:
        return len(self._exps) == 1

    def degree(self, ctx: MonotoneContext) -> int:
        """Degree of a monomial; raises for polynomials with several terms."""
        if len(self._exps) != 1:
            raise ValueError("degree is only defined for monomials")
        (k,) = self._exps
        return -k * self.unit_degree(ctx)

    @classmethod
    def unit_degree(cls, ctx: MonotoneContext) -> int:
        """|deg| of the variable: N_L for t."""
        if ctx.weakly_exact:
            raise ContextMismatch("t is not available in the weakly exact case")
        return ctx.maslov_min

    def __str__(self) -> str:
        if not self._exps:
            return "0"
        parts = []
        for k in sorted(self._exps):
            if k == 0:
                parts.append("1")
            elif k == 1:
                parts.append(self.VAR)
            else:
                parts.append(f"{self.VAR}^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Laurent":
        text = text.strip()
        if text == "0":
            return cls.zero()
        var = re.escape(cls.VAR)
        term_re = re.compile(rf"^(?:1|{var}(?:\^\(?(-?\d+)\)?)?)$")
        exps: list[int] = []
        for raw in text.split("+"):
            term = raw.replace(" ", "")
            m = term_re.match(term)
            if not m:
                raise ParseError(f"bad {cls.VAR}-monomial {raw!r} in {text!r}")
            if term == "1":
                exps.append(0)
            else:
                exps.append(int(m.group(1)) if m.group(1) is not None else 1)
        return cls(exps)


class GammaElement(Laurent):
    """Element of Z2[s^-1, s], deg s = -2 C_M."""

    __slots__ = ()
    VAR = "s"

    @classmethod
    def unit_degree(cls, ctx: MonotoneContext) -> int:
        return 2 * ctx.chern_min


def add(a: Laurent, b: Laurent) -> Laurent:
    return a + b


def mul(a: Laurent, b: Laurent) -> Laurent:
    return a * b


def valuation(a: Laurent) -> int | float:
    return a.valuation()


def embed_gamma(g: GammaElement, ctx: MonotoneContext) -> Laurent:
    """s -> t^(2 C_M / N_L); preserves degree."""
    if ctx.weakly_exact or (2 * ctx.chern_min) % ctx.maslov_min:
        raise ContextMismatch("embedding needs a finite N_L dividing 2 C_M")
    step = 2 * ctx.chern_min // ctx.maslov_min
    return Laurent._raw(frozenset(j * step for j in g.exponents))


def variable_class(var: str) -> type[Laurent]:
    if var == "t":
        return Laurent
    if var == "s":
        return GammaElement
    raise ParseError(f"unknown Novikov variable {var!r}")
