"""Built-in rings: the explicit quantum and classical examples.

Every builder returns a :class:`~qhbounds.algebra.RingSpec`.  Eagerly built
rings are small; the Clifford and torus rings have 2^n basis elements and
compute their constants on demand.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .algebra import BasisElement, Kind, RingSpec
from .errors import BadParameters
from .novikov import WEAKLY_EXACT, GammaElement, Laurent, MonotoneContext

ONE = Laurent.one()


def _t(k: int) -> Laurent:
    return Laurent.monomial(k)


class Space(str, enum.Enum):
    RP_N = "RP_N"
    TORUS_N = "TORUS_N"
    SPHERE_N = "SPHERE_N"


class Parity(str, enum.Enum):
    ODD = "ODD"
    EVEN = "EVEN"


def _check_n(n: int, lo: int = 1) -> int:
    if int(n) != n or n < lo:
        raise BadParameters(f"n must be an integer >= {lo}, got {n!r}")
    return int(n)


# -- projective space ---------------------------------------------------------


def _cp_table(n: int, wrap: Laurent) -> dict:
    table = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            if i + j <= n:
                table[(f"h{i}", f"h{j}")] = {f"h{i + j}": type(wrap).one()}
            else:
                table[(f"h{i}", f"h{j}")] = {f"h{i + j - n - 1}": wrap}
    return table


def _cp_basis(n: int) -> list[BasisElement]:
    return [BasisElement(f"h{j}", 2 * n - 2 * j) for j in range(n + 1)]


def cp_n_ambient(n: int, maslov_min: int, kappa: Fraction = Fraction(1)) -> RingSpec:
    """QH(CP^n, Lambda) for a Lagrangian of minimal Maslov number N_L.

    Basis h0 = [CP^n], h1 = hyperplane, ..., hn = [pt]; h^(n+1) = [CP^n] t^((2n+2)/N_L).
    """
    n = _check_n(n)
    if maslov_min < 2 or (2 * n + 2) % maslov_min:
        raise BadParameters(f"N_L = {maslov_min} must be >= 2 and divide 2n+2 = {2 * n + 2}")
    ctx = MonotoneContext(maslov_min, n + 1, kappa)
    wrap = _t((2 * n + 2) // maslov_min)
    return RingSpec(
        f"CP{n}[N_L={maslov_min}]", Kind.AMBIENT, n, ctx, _cp_basis(n), "h0", _cp_table(n, wrap),
        provenance="quantum homology of CP^n, h^{*(n+1)} = [CP^n] t^{(2n+2)/N_L}",
    )


def cp_n_gamma(n: int, kappa: Fraction = Fraction(1)) -> RingSpec:
    """QH(CP^n) over Gamma: h^(n+1) = [CP^n] s."""
    n = _check_n(n)
    # N_L of the diagonal, 2 C_M, so that s and t coincide
    ctx = MonotoneContext(2 * n + 2, n + 1, kappa)
    return RingSpec(
        f"CP{n}[Gamma]", Kind.AMBIENT, n, ctx, _cp_basis(n), "h0",
        _cp_table(n, GammaElement.monomial(1)), variable="s",
        provenance="quantum homology of CP^n over Gamma, h^{*(n+1)} = [CP^n] s",
    )


# -- quadric ------------------------------------------------------------------


def quadric_ambient(k: int, parity: Parity | str | None = None, kappa: Fraction = Fraction(1)) -> RingSpec:
    """QH(Q^{2k}, Lambda) for a Lagrangian with H_1(L; Z) = 0 (N_L = 2n).

    Basis by complex codimension: u (0), h1..h{k-1}, the two middle plane
    classes a, b (k), the linear-subspace classes l{k+1}..l{n-1}, and p (n).
    One power of t corresponds to degree-one curves; only p * p picks up t^2.
    """
    k = _check_n(k)
    actual = Parity.ODD if k % 2 else Parity.EVEN
    if parity is not None and Parity(parity) is not actual:
        raise BadParameters(f"k = {k} has parity {actual.value}, not {Parity(parity).value}")
    n = 2 * k
    ctx = MonotoneContext(2 * n, n, kappa)
    q = _t(1)

    basis = [BasisElement("u", 2 * n)]
    basis += [BasisElement(f"h{j}", 2 * n - 2 * j) for j in range(1, k)]
    basis += [BasisElement("a", n), BasisElement("b", n)]
    basis += [BasisElement(f"l{m}", 2 * n - 2 * m) for m in range(k + 1, n)]
    basis.append(BasisElement("p", 0))

    def hpow(r: int, coeff: Laurent = ONE) -> dict:
        if r == 0:
            return {"u": coeff}
        if r < k:
            return {f"h{r}": coeff}
        if r == k:
            return {"a": coeff, "b": coeff}
        return {}

    def codim(x: str) -> int:
        if x in ("a", "b"):
            return k
        if x == "u":
            return 0
        if x == "p":
            return n
        return int(x[1:])

    def rule(x: str, y: str) -> dict:
        if x == "u":
            return {y: ONE}
        if y == "u":
            return {x: ONE}
        # order the pair as (h, a/b, l, p)
        rank = {"h": 0, "a": 1, "b": 1, "l": 2, "p": 3}
        if (rank[x[0]], x) > (rank[y[0]], y):
            x, y = y, x
        cx, cy = codim(x), codim(y)
        if x[0] == "h":
            if y[0] == "h":
                return hpow(cx + cy)
            if y in ("a", "b"):
                return {f"l{k + cx}": ONE}
            if y[0] == "l":
                s = cx + cy
                if s < n:
                    return {f"l{s}": ONE}
                if s == n:
                    return {"p": ONE, "u": q}
                return {}
            return {x: q}  # h_j * p
        if x in ("a", "b"):
            if y in ("a", "b"):
                same = x == y
                if same == (k % 2 == 1):
                    return {"u": q}
                return {"p": ONE}
            if y[0] == "l":
                return hpow(cy - k, q)
            return {"b" if x == "a" else "a": q}  # a * p
        if x[0] == "l":
            if y[0] == "l":
                return hpow(cx + cy - n, q)
            return {x: q}  # l_m * p
        return {"u": _t(2)}  # p * p

    ids = [b.id for b in basis]
    table = {(x, y): rule(x, y) for x, y in itertools.combinations_with_replacement(ids, 2)}
    return RingSpec(
        f"Q{n}", Kind.AMBIENT, n, ctx, basis, "u", table,
        provenance=(
            "quantum homology of the quadric Q^{2k}; middle products "
            + ("a*b = p, a*a = b*b = ut" if k % 2 else "a*a = b*b = p, a*b = ut")
        ),
    )


# -- exterior / Clifford type rings ------------------------------------------------


def _subset_basis(n: int) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], str]]:
    subsets = [s for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r)]
    names = {}
    for s in subsets:
        if not s:
            names[s] = "T"
        elif len(s) == n and n >= 2:
            names[s] = "pt"
        else:
            names[s] = ".".join(f"t{i}" for i in s)
    return subsets, names


def torus_basis_id(n: int, subset) -> str:
    """Basis id of the product of the t_i, i in ``subset`` (1-based), in the torus rings."""
    return _subset_basis(n)[1][tuple(sorted(subset))]


def clifford_lqh(n: int, kappa: Fraction = Fraction(1)) -> RingSpec:
    """QH of the Clifford torus in CP^n: t_i o t_i = [T] t and
    t_i o t_j + t_j o t_i = [T] t.

    The basis element for a subset S is the ordered product of its t_i
    (degree n - |S|).  The ring is a Clifford algebra, non-commutative for n >= 2.
    """
    n = _check_n(n)
    ctx = MonotoneContext(2, n + 1, kappa)
    subsets, names = _subset_basis(n)
    ids = {v: k for k, v in names.items()}
    tt = _t(1)

    @lru_cache(maxsize=None)
    def rmul(s: tuple[int, ...], i: int) -> tuple:
        if not s or i > s[-1]:
            return ((s + (i,), ONE),)
        m, rest = s[-1], s[:-1]
        if i == m:
            return ((rest, tt),)
        # e_rest e_m e_i = (e_rest e_i) e_m + t e_rest
        acc: dict = {}
        for sub, c in rmul(rest, i):
            _acc(acc, sub + (m,), c)
        _acc(acc, rest, tt)
        return tuple(acc.items())

    def rule(x: str, y: str) -> dict:
        vec = {ids[x]: ONE}
        for r in ids[y]:
            nxt: dict = {}
            for s, c in vec.items():
                for sub, c2 in rmul(s, r):
                    _acc(nxt, sub, c * c2)
            vec = nxt
        return {names[s]: c for s, c in vec.items()}

    basis = [BasisElement(names[s], n - len(s)) for s in subsets]
    return RingSpec(
        f"Clifford{n}", Kind.LAGRANGIAN, n, ctx, basis, "T", rule=rule, commutative=(n == 1),
        provenance="Lagrangian quantum homology of the Clifford torus, t_i o t_i = [T]t",
    )


def _acc(acc: dict, key, coeff: Laurent) -> None:
    new = acc.get(key, Laurent.zero()) + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


def equator() -> RingSpec:
    """QH of the equator in S^2 = CP^1: [pt] o [pt] = [L] t."""
    ctx = MonotoneContext(2, 2)
    basis = [BasisElement("L", 1), BasisElement("pt", 0)]
    table = {("L", "L"): {"L": ONE}, ("L", "pt"): {"pt": ONE}, ("pt", "pt"): {"L": _t(1)}}
    return RingSpec("equator", Kind.LAGRANGIAN, 1, ctx, basis, "L", table,
                    provenance="equator in S^2, [pt] o [pt] = [L] t")


def rp_n_lagrangian(n: int, kappa: Fraction = Fraction(1)) -> RingSpec:
    """QH(RP^n) inside CP^n, N_L = n + 1: x^(n+1) = [RP^n] t.

    Basis x0 = [RP^n], x1 = [RP^(n-1)], ..., xn = [pt].
    """
    n = _check_n(n)
    ctx = MonotoneContext(n + 1, n + 1, kappa)
    basis = [BasisElement(f"x{j}", n - j) for j in range(n + 1)]
    table = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            if i + j <= n:
                table[(f"x{i}", f"x{j}")] = {f"x{i + j}": ONE}
            else:
                table[(f"x{i}", f"x{j}")] = {f"x{i + j - n - 1}": _t(1)}
    return RingSpec(f"RP{n}", Kind.LAGRANGIAN, n, ctx, basis, "x0", table,
                    provenance="Lagrangian quantum homology of RP^n in CP^n")


def singular_ring(space: Space | str, n: int) -> RingSpec:
    """Classical Z2 intersection ring of RP^n, T^n or S^n (no Novikov terms)."""
    space = Space(space)
    n = _check_n(n)
    if space is Space.RP_N:
        basis = [BasisElement(f"x{j}", n - j) for j in range(n + 1)]
        table = {
            (f"x{i}", f"x{j}"): {f"x{i + j}": ONE}
            for i in range(n + 1) for j in range(i, n + 1) if i + j <= n
        }
        return RingSpec(f"RP{n}-classical", Kind.LAGRANGIAN, n, WEAKLY_EXACT, basis, "x0", table,
                        provenance="H_*(RP^n; Z2), truncated polynomial ring")
    if space is Space.SPHERE_N:
        basis = [BasisElement("S", n), BasisElement("pt", 0)]
        table = {("S", "S"): {"S": ONE}, ("S", "pt"): {"pt": ONE}}
        return RingSpec(f"S{n}-classical", Kind.LAGRANGIAN, n, WEAKLY_EXACT, basis, "S", table,
                        provenance="H_*(S^n; Z2)")
    subsets, names = _subset_basis(n)
    ids = {v: k for k, v in names.items()}

    def rule(x: str, y: str) -> dict:
        sx, sy = ids[x], ids[y]
        if set(sx) & set(sy):
            return {}
        return {names[tuple(sorted(sx + sy))]: ONE}

    basis = [BasisElement(names[s], n - len(s)) for s in subsets]
    return RingSpec(f"T{n}-classical", Kind.LAGRANGIAN, n, WEAKLY_EXACT, basis, "T", rule=rule,
                    provenance="H_*(T^n; Z2), exterior intersection ring on the t_i")


def poincare_ring(betti: Sequence[int]) -> RingSpec:
    """A classical ring with the given Betti numbers and Poincare duality pairing.

    Class e{d}_{i} pairs with e{top-d}_{i} to the point; other non-unit
    products vanish.
    """
    betti = [int(b) for b in betti]
    top = len(betti) - 1
    if top < 0 or betti[0] != 1 or betti[top] != 1 or betti != betti[::-1]:
        raise BadParameters(f"Betti profile {betti} is not that of a closed connected manifold")
    if top % 2:
        raise BadParameters("an aspherical symplectic factor has even dimension")
    if top == 0:
        basis = [BasisElement("P", 0)]
        return RingSpec("point", Kind.LAGRANGIAN, 0, WEAKLY_EXACT, basis, "P", {("P", "P"): {"P": ONE}})
    ids = {}
    basis = []
    for d in range(top, -1, -1):
        for i in range(betti[d]):
            name = "P" if d == top else "ptP" if d == 0 else f"e{d}_{i}"
            ids[(d, i)] = name
            basis.append(BasisElement(name, d))
    table = {("P", b.id): {b.id: ONE} for b in basis}
    for d in range(1, top):
        for i in range(betti[d]):
            x, y = ids[(d, i)], ids[(top - d, i)]
            table[(x, y)] = {"ptP": ONE}
            table[(y, x)] = {"ptP": ONE}
    return RingSpec(f"P{betti}", Kind.LAGRANGIAN, top, WEAKLY_EXACT, basis, "P", table)


def product_with_aspherical(m: RingSpec, factor: RingSpec | Sequence[int]) -> RingSpec:
    """Kunneth ring QH(M) (x) H(P) for a symplectically aspherical P."""
    if m.kind is not Kind.AMBIENT:
        raise BadParameters("the quantum factor must be an ambient ring")
    p = factor if isinstance(factor, RingSpec) else poincare_ring(factor)
    if not p.context.weakly_exact:
        raise BadParameters("the aspherical factor must be classical")
    if p.shift % 2:
        raise BadParameters("the aspherical factor must have even real dimension")
    basis = [
        BasisElement(f"{x.id}|{y.id}", x.degree + y.degree) for x in m.basis for y in p.basis
    ]
    split = {b.id: tuple(b.id.split("|", 1)) for b in basis}

    def rule(a: str, b: str) -> dict:
        (x1, y1), (x2, y2) = split[a], split[b]
        left = m.basis_product(x1, x2)
        right = p.basis_product(y1, y2)
        out: dict = {}
        for z, c in left.items():
            for w, c2 in right.items():
                if 0 not in c2.exponents:
                    continue
                out[f"{z}|{w}"] = c
        return out

    return RingSpec(
        f"{m.name}x{p.name}", Kind.AMBIENT, m.dim + p.shift // 2, m.context, basis,
        f"{m.unit}|{p.unit}", rule=rule, commutative=m.commutative and p.commutative,
        variable=m.variable, provenance=f"Kunneth product of {m.name} with aspherical {p.name}",
    )


# -- registry -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    builder: Callable[..., RingSpec]
    params: str
    provenance: str


CATALOG: dict[str, CatalogEntry] = {
    e.key: e
    for e in [
        CatalogEntry("cp", lambda n, maslov=None: cp_n_ambient(n, maslov or n + 1), "n [N_L=n+1]",
                     "QH(CP^n, Lambda)"),
        CatalogEntry("cpgamma", lambda n: cp_n_gamma(n), "n", "QH(CP^n) over Gamma"),
        CatalogEntry("quadric", lambda k: quadric_ambient(k), "k (n = 2k)", "QH(Q^{2k}, Lambda)"),
        CatalogEntry("clifford", lambda n: clifford_lqh(n), "n", "QH(Clifford torus in CP^n)"),
        CatalogEntry("equator", lambda n=1: equator(), "", "QH(equator in S^2)"),
        CatalogEntry("rp", lambda n: rp_n_lagrangian(n), "n", "QH(RP^n in CP^n)"),
        CatalogEntry("rp-classical", lambda n: singular_ring(Space.RP_N, n), "n", "H(RP^n; Z2)"),
        CatalogEntry("torus", lambda n: singular_ring(Space.TORUS_N, n), "n", "H(T^n; Z2)"),
        CatalogEntry("sphere", lambda n: singular_ring(Space.SPHERE_N, n), "n", "H(S^n; Z2)"),
    ]
}


def build(key: str, *args: int) -> RingSpec:
    try:
        entry = CATALOG[key]
    except KeyError:
        raise BadParameters(f"unknown catalog key {key!r}; known: {', '.join(CATALOG)}") from None
    try:
        return entry.builder(*args)
    except TypeError as exc:
        raise BadParameters(f"{key} expects parameters: {entry.params}") from exc
