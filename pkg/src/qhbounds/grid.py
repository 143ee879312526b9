"""Cubical grids on tori and on the 2-sphere, lower-star sublevel sets and the
classical minimax selector.

Homology classes of the built-in complexes are stored as coordinates in a
fixed basis: for the torus the coordinate subtori T^S, for the sphere the
point and the fundamental class.  Coordinates of a cycle are read off with
dual cocycles, so "a lies in the image of H(sublevel)" becomes "a lies in
the span of the coordinate vectors of sublevel cycles".
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .catalog import Space, singular_ring, torus_basis_id
from .errors import BadParameters, ClassNotFound, ParseError
from .gf2 import EchelonBasis, bits


class ComplexKind(str, enum.Enum):
    TORUS = "torus"
    SPHERE = "sphere"


class CubicalComplex:
    """Closed cubical complex; cells are (corner, axes) pairs."""

    def __init__(self, kind: ComplexKind, shape: tuple[int, ...], keys: list, hbasis: dict[int, list],
                 coord_of: Callable[[tuple, tuple, int], int], wrap: bool):
        self.kind = kind
        self.shape = shape
        self.hbasis = hbasis
        self.top = max(hbasis)
        self.keys = keys
        self.cell_id = {k: i for i, k in enumerate(keys)}
        self.dim = [len(axes) for _, axes in keys]
        self.n_vertices = sum(1 for d in self.dim if d == 0)
        self.by_dim: dict[int, list[int]] = {}
        for i, d in enumerate(self.dim):
            self.by_dim.setdefault(d, []).append(i)
        nd = len(shape)

        def shifted(corner, axis):
            c = list(corner)
            c[axis] += 1
            if wrap:
                c[axis] %= shape[axis]
            return tuple(c)

        self.boundary: list[tuple[int, ...]] = []
        self.verts: list[tuple[int, ...]] = []
        self.coord: list[int] = []
        for corner, axes in keys:
            faces = []
            for a in axes:
                rest = tuple(x for x in axes if x != a)
                faces.append(self.cell_id[(corner, rest)])
                faces.append(self.cell_id[(shifted(corner, a), rest)])
            self.boundary.append(tuple(faces))
            vs = []
            for offs in itertools.product((0, 1), repeat=len(axes)):
                c = corner
                for a, o in zip(axes, offs):
                    if o:
                        c = shifted(c, a)
                vs.append(self.cell_id[(c, ())])
            self.verts.append(tuple(vs))
            self.coord.append(coord_of(corner, axes, nd))

    def __len__(self) -> int:
        return len(self.keys)

    def boundary_bits(self, cell: int) -> int:
        v = 0
        for f in self.boundary[cell]:
            v ^= 1 << f
        return v

    def chain_boundary(self, cells: Iterable[int]) -> int:
        v = 0
        for c in cells:
            v ^= self.boundary_bits(c)
        return v

    def vertex_coords(self) -> list[tuple[int, ...]]:
        return [self.keys[i][0] for i in self.by_dim[0]]


def torus_complex(shape: Sequence[int]) -> CubicalComplex:
    shape = tuple(int(m) for m in shape)
    if not shape or any(m < 3 for m in shape):
        raise BadParameters("torus grids need at least 3 vertices along every axis")
    d = len(shape)
    verts = list(itertools.product(*(range(m) for m in shape)))
    keys = [(c, axes) for k in range(d + 1) for axes in itertools.combinations(range(d), k) for c in verts]
    hbasis = {k: list(itertools.combinations(range(d), k)) for k in range(d + 1)}
    index = {k: {s: i for i, s in enumerate(v)} for k, v in hbasis.items()}

    def coord_of(corner, axes, nd):
        if all(corner[i] == shape[i] - 1 for i in axes):
            return 1 << index[len(axes)][axes]
        return 0

    return CubicalComplex(ComplexKind.TORUS, shape, keys, hbasis, coord_of, wrap=True)


def sphere_complex(shape: Sequence[int] | int) -> CubicalComplex:
    """Surface of the box [0,a] x [0,b] x [0,c]."""
    if isinstance(shape, int):
        shape = (shape, shape, shape)
    shape = tuple(int(m) for m in shape)
    if len(shape) != 3 or any(m < 1 for m in shape):
        raise BadParameters("sphere grids need three positive box sizes")

    def on_surface(corner, axes):
        return any(corner[j] in (0, shape[j]) for j in range(3) if j not in axes)

    keys = []
    for k in range(3):
        for axes in itertools.combinations(range(3), k):
            ranges = [range(shape[i]) if i in axes else range(shape[i] + 1) for i in range(3)]
            keys.extend((c, axes) for c in itertools.product(*ranges) if on_surface(c, axes))
    first_square = next(k for k in keys if len(k[1]) == 2)

    def coord_of(corner, axes, nd):
        if not axes:
            return 1
        return 1 if (corner, axes) == first_square else 0

    return CubicalComplex(ComplexKind.SPHERE, shape, keys, {0: ["pt"], 1: [], 2: ["S"]}, coord_of, wrap=False)


# -- functions on grids -----------------------------------------------------------


class GridFunction:
    """Exact rational values on the vertices of a built-in complex."""

    def __init__(self, complex_: CubicalComplex, values: Sequence):
        if len(values) != complex_.n_vertices:
            raise BadParameters(f"expected {complex_.n_vertices} vertex values, got {len(values)}")
        self.complex = complex_
        self.values = [v if isinstance(v, (int, Fraction)) else Fraction(v) for v in values]
        self._cell_values: list | None = None

    @classmethod
    def torus(cls, shape: Sequence[int], values: Sequence) -> "GridFunction":
        return cls(torus_complex(shape), values)

    @classmethod
    def sphere(cls, shape, values: Sequence) -> "GridFunction":
        return cls(sphere_complex(shape), values)

    @classmethod
    def from_callable(cls, complex_: CubicalComplex, fn: Callable[[tuple[int, ...]], object]) -> "GridFunction":
        return cls(complex_, [fn(c) for c in complex_.vertex_coords()])

    def _rank(self) -> None:
        # exact comparisons happen once: values are scaled to integers by the common
        # denominator, ranked, and cells then sort by integer rank
        scale = math.lcm(*{v.denominator for v in self.values})
        keys = [v.numerator * (scale // v.denominator) for v in self.values]
        distinct = sorted(set(keys))
        pos = {k: i for i, k in enumerate(distinct)}
        vrank = [pos[k] for k in keys]
        levels: list = [None] * len(distinct)
        for r, v in zip(vrank, self.values):
            levels[r] = v
        self._levels = levels
        self._cell_rank = [max(vrank[v] for v in vs) for vs in self.complex.verts]
        self._cell_values = [levels[r] for r in self._cell_rank]

    @property
    def levels(self) -> list:
        """Distinct vertex values in increasing order."""
        if self._cell_values is None:
            self._rank()
        return self._levels

    @property
    def cell_values(self) -> list:
        if self._cell_values is None:
            self._rank()
        return self._cell_values

    def with_values(self, values: Sequence) -> "GridFunction":
        return GridFunction(self.complex, values)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return self.with_values([a + b for a, b in zip(self.values, other.values)])

    def shifted(self, c) -> "GridFunction":
        return self.with_values([a + c for a in self.values])

    def sup_distance(self, other: "GridFunction"):
        return max(abs(a - b) for a, b in zip(self.values, other.values))

    def filtration_order(self, dim: int | None = None) -> list[int]:
        """Cells by (value, dimension, index): the lower-star filtration order."""
        if self._cell_values is None:
            self._rank()
        cx, rank = self.complex, self._cell_rank
        cells = range(len(cx)) if dim is None else cx.by_dim.get(dim, [])
        return sorted(cells, key=lambda c: (rank[c], cx.dim[c], c))


# -- homology classes --------------------------------------------------------------


@dataclass(frozen=True)
class HomologyClass:
    degree: int
    mask: int

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if other.degree != self.degree:
            raise BadParameters("cannot add classes of different degrees")
        return HomologyClass(self.degree, self.mask ^ other.mask)

    def __bool__(self) -> bool:
        return bool(self.mask)


def point_class(cx: CubicalComplex) -> HomologyClass:
    return HomologyClass(0, 1)


def fundamental_class(cx: CubicalComplex) -> HomologyClass:
    return HomologyClass(cx.top, 1)


def subtorus_class(cx: CubicalComplex, axes: Iterable[int]) -> HomologyClass:
    if cx.kind is not ComplexKind.TORUS:
        raise ClassNotFound("coordinate subtori only exist on torus grids")
    axes = tuple(sorted(set(axes)))
    basis = cx.hbasis[len(axes)]
    if axes not in basis:
        raise ClassNotFound(f"no subtorus on axes {axes}")
    return HomologyClass(len(axes), 1 << basis.index(axes))


def loop_class(cx: CubicalComplex, axis: int) -> HomologyClass:
    if cx.kind is not ComplexKind.TORUS:
        raise ClassNotFound("the sphere has no loop classes")
    if not 0 <= axis < len(cx.shape):
        raise ClassNotFound(f"no axis {axis}")
    return subtorus_class(cx, (axis,))


def parse_selector(cx: CubicalComplex, text: str) -> HomologyClass:
    """``point``, ``fundamental``, ``loop:i`` or ``subtorus:i,j,...``."""
    text = text.strip().lower()
    if text == "point":
        return point_class(cx)
    if text == "fundamental":
        return fundamental_class(cx)
    name, _, arg = text.partition(":")
    try:
        if name == "loop":
            return loop_class(cx, int(arg))
        if name == "subtorus":
            return subtorus_class(cx, [int(x) for x in arg.split(",") if x])
    except ValueError as exc:
        raise ParseError(f"bad class selector {text!r}") from exc
    raise ParseError(f"unknown class selector {text!r}")


def explicit_class(cx: CubicalComplex, cells: Iterable[int]) -> HomologyClass:
    """Class of an explicit Z2 cycle given by its cells."""
    cells = list(cells)
    if not cells:
        raise ClassNotFound("empty chain")
    dims = {cx.dim[c] for c in cells}
    if len(dims) != 1:
        raise BadParameters("a cycle must be homogeneous")
    chain = 0
    for c in cells:
        chain ^= 1 << c
    if cx.chain_boundary(bits(chain)):
        raise BadParameters("the chain is not a cycle")
    mask = 0
    for c in bits(chain):
        mask ^= cx.coord[c]
    return HomologyClass(dims.pop(), mask)


def representative_cycle(cx: CubicalComplex, cls: HomologyClass) -> list[int]:
    """A cycle (as cells) representing ``cls``; sums of basic subtori or point/fundamental."""
    if cx.kind is ComplexKind.SPHERE:
        if not cls.mask:
            return []
        if cls.degree == 0:
            return [cx.by_dim[0][0]]
        return list(cx.by_dim[2])
    chain = 0
    basis = cx.hbasis[cls.degree]
    for i in bits(cls.mask):
        axes = basis[i]
        ranges = [range(cx.shape[j]) if j in axes else (0,) for j in range(len(cx.shape))]
        for corner in itertools.product(*ranges):
            chain ^= 1 << cx.cell_id[(corner, axes)]
    return bits(chain)


def torus_intersection(cx: CubicalComplex, a: HomologyClass, b: HomologyClass) -> HomologyClass:
    """Intersection product of torus classes, computed in the catalog ring H_*(T^d; Z2).

    The subtorus on axes A corresponds to the product of the t_i over the
    axes not in A.
    """
    if cx.kind is not ComplexKind.TORUS:
        raise BadParameters("intersection pairing is provided for torus grids")
    d = len(cx.shape)
    ring = singular_ring(Space.TORUS_N, d)

    def to_ring(cls: HomologyClass):
        vec = ring.zero()
        for i in bits(cls.mask):
            axes = cx.hbasis[cls.degree][i]
            vec = vec + ring[torus_basis_id(d, [j + 1 for j in range(d) if j not in axes])]
        return vec

    prod = to_ring(a) * to_ring(b)
    degree = a.degree + b.degree - d
    if degree < 0:
        return HomologyClass(0, 0)
    back = {torus_basis_id(d, [j + 1 for j in range(d) if j not in axes]): i
            for i, axes in enumerate(cx.hbasis[degree])}
    mask = 0
    for bid, coeff in prod.components.items():
        if 0 in coeff.exponents:
            mask ^= 1 << back[bid]
    return HomologyClass(degree, mask)


# -- image of sublevel homology ------------------------------------------------------


class _Forest:
    """Union-find carrying Z2 coordinate potentials along tree paths."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.pot = [0] * n
        self.size = [1] * n

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root, acc = x, 0
        for y in reversed(path):
            acc ^= self.pot[y]
            self.pot[y] = acc
            self.parent[y] = root
        return root, (self.pot[path[0]] if path else 0)

    def link(self, u: int, v: int, c: int) -> int | None:
        """Add edge u-v with coordinates c; returns cycle coordinates if it closes a loop."""
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            return pu ^ pv ^ c
        if self.size[ru] > self.size[rv]:
            ru, rv = rv, ru
        self.parent[ru] = rv
        self.pot[ru] = pu ^ c ^ pv
        self.size[rv] += self.size[ru]
        return None


def _cycle_coords_stream(cx: CubicalComplex, cells: Iterable[int], degree: int):
    """Yield (cell, coordinates of the new cycle) whenever a cell closes a cycle."""
    if degree == 1:
        forest = _Forest(len(cx.by_dim[0]))
        for e in cells:
            u, v = cx.verts[e]
            z = forest.link(u, v, cx.coord[e])
            if z is not None:
                yield e, z
        return
    rows = EchelonBasis()
    for c in cells:
        if degree == 0:
            yield c, cx.coord[c]
            continue
        rem, tag = rows.reduce_tracked(cx.boundary_bits(c), cx.coord[c])
        if rem:
            top = rem.bit_length() - 1
            rows.rows[top] = rem
            rows.tags[top] = tag
        else:
            yield c, tag


def ls_selector(f: GridFunction, cls: HomologyClass) -> Fraction | int:
    """Least sublevel value whose homology image contains ``cls``."""
    cx = f.complex
    if not cls.mask or cls.degree not in cx.hbasis or cls.mask >> len(cx.hbasis[cls.degree]):
        raise ClassNotFound("the selected class is zero or not a class of this complex")
    cv = f.cell_values
    if cls.degree == 0:
        return f.levels[0]
    if cls.degree == cx.top:
        return f.levels[-1]
    span = EchelonBasis()
    for cell, z in _cycle_coords_stream(cx, f.filtration_order(cls.degree), cls.degree):
        span.add(z)
        if span.contains(cls.mask):
            return cv[cell]
    raise ClassNotFound("class never reached")  # pragma: no cover - the full complex carries every class


def image_ranks(cx: CubicalComplex, cells: Iterable[int]) -> dict[int, int]:
    """Rank of H_k(subcomplex) -> H_k(X) for each k; ``cells`` must form a subcomplex."""
    chosen = set(cells)
    out = {}
    for k in sorted(cx.hbasis):
        layer = [c for c in cx.by_dim[k] if c in chosen]
        if not cx.hbasis[k]:
            out[k] = 0
        elif k == cx.top:
            out[k] = 1 if len(layer) == len(cx.by_dim[k]) else 0
        else:
            span = EchelonBasis()
            for _, z in _cycle_coords_stream(cx, layer, k):
                span.add(z)
            out[k] = len(span)
    return out


def level_set_ranks(f: GridFunction, value, delta) -> dict[int, int]:
    """Per-degree image ranks for the band of cells with all vertex values within delta of value."""
    delta = Fraction(delta)
    if delta < 0:
        raise BadParameters("delta must be nonnegative")
    lo, hi = value - delta, value + delta
    vals = f.values
    cx = f.complex
    inside = [c for c, vs in enumerate(cx.verts) if all(lo <= vals[v] <= hi for v in vs)]
    return image_ranks(cx, inside)


def level_set_nontrivial(f: GridFunction, value, delta, min_degree: int = 0) -> bool:
    return any(r for k, r in level_set_ranks(f, value, delta).items() if k >= min_degree)


# -- critical values ------------------------------------------------------------------


def persistence_pairs(f: GridFunction) -> tuple[list[tuple[int, int]], list[int]]:
    """Lower-star persistence over Z2: (birth cell, death cell) pairs and essential cells."""
    cx = f.complex
    order = f.filtration_order()
    pos = {c: i for i, c in enumerate(order)}
    pivots: dict[int, int] = {}
    paired: set[int] = set()
    pairs = []
    for dim in sorted(cx.hbasis, reverse=True):
        for c in (x for x in order if cx.dim[x] == dim):
            if c in paired:
                continue  # clearing: a creator never needs reducing
            col = 0
            for fc in cx.boundary[c]:
                col ^= 1 << pos[fc]
            while col:
                low = col.bit_length() - 1
                other = pivots.get(low)
                if other is None:
                    pivots[low] = col
                    birth = order[low]
                    pairs.append((birth, c))
                    paired.update((birth, c))
                    break
                col ^= other
    essential = [c for c in order if c not in paired]
    return pairs, essential


def critical_values(f: GridFunction) -> set:
    """Values at which the homology of the sublevel set changes."""
    cv = f.cell_values
    pairs, essential = persistence_pairs(f)
    out = {cv[c] for c in essential}
    for b, d in pairs:
        if cv[b] != cv[d]:
            out.update((cv[b], cv[d]))
    return out


def selector_value_is_critical(f: GridFunction, value) -> bool:
    return value in critical_values(f)
