"""Independent oracles and random generators shared by the test modules.

The oracles deliberately avoid the package's own linear algebra: they use
plain Python sets and a textbook Gaussian elimination.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from qhbounds.filtered import FilteredComplex, FilteredGenerator, chain_add, chain_scale
from qhbounds.novikov import Laurent, MonotoneContext

NEG_INF = -math.inf


# -- Laurent oracle ----------------------------------------------------------------


def random_laurent(rng: random.Random, lo: int = -16, hi: int = 16, max_terms: int = 6) -> Laurent:
    k = rng.randint(0, max_terms)
    return Laurent(rng.sample(range(lo, hi + 1), k))


def coeffs(x: Laurent) -> dict[int, int]:
    return {k: 1 for k in x.exponents}


def naive_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, ca in a.items():
        for j, cb in b.items():
            out[i + j] = (out.get(i + j, 0) + ca * cb) % 2
    return {k: v for k, v in out.items() if v}


def naive_add(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        out[k] = (out.get(k, 0) + v) % 2
    return {k: v for k, v in out.items() if v}


# -- Z2 elimination (textbook, list of sets) ------------------------------------------


def in_span(vectors, target) -> bool:
    """Is ``target`` (a set of hashable coordinates) a Z2 combination of ``vectors``?"""
    rows: list[tuple[object, set]] = []
    for v in vectors:
        v = set(v)
        for pivot, row in rows:
            if pivot in v:
                v ^= row
        if v:
            pivot = min(v, key=repr)
            new_rows = []
            for p, row in rows:
                new_rows.append((p, row ^ v if pivot in row else row))
            rows = new_rows + [(pivot, v)]
    t = set(target)
    for pivot, row in rows:
        if pivot in t:
            t ^= row
    return not t


# -- random filtered complexes ---------------------------------------------------------


def _apply(mapping: dict, chain: dict) -> dict:
    out: dict = {}
    for g, c in chain.items():
        out = chain_add(out, chain_scale(mapping[g], c))
    return out


def random_filtered_complex(rng: random.Random, n_gens: int | None = None,
                            maslov: int | None = None) -> FilteredComplex:
    """A random valid complex: a paired model complex conjugated by a filtration-lowering
    unipotent change of basis, so the differential is dense but still valid."""
    n_gens = n_gens or rng.randint(1, 12)
    nl = maslov or rng.choice((2, 3))
    kappa = rng.choice((Fraction(1), Fraction(1, 2), Fraction(3, 2)))
    ctx = MonotoneContext(nl, nl * rng.randint(1, 2), kappa)
    area = ctx.area
    degs: list[int] = []
    acts: list[Fraction] = []
    model: dict[int, dict] = {}
    i = 0
    while i < n_gens:
        deg = rng.randint(0, 4)
        act = Fraction(rng.randint(-24, 24), 4)
        if i + 1 < n_gens and rng.random() < 0.6:
            k = rng.choice((-1, 0, 0, 1))
            degs += [deg, deg - 1 + k * nl]
            acts += [act, act + k * area - Fraction(rng.randint(1, 12), 4)]
            model[i] = {f"g{i + 1}": Laurent.monomial(k)}
            model[i + 1] = {}
            i += 2
        else:
            degs.append(deg)
            acts.append(act)
            model[i] = {}
            i += 1
    ids = [f"g{j}" for j in range(n_gens)]
    model_d = {ids[j]: {k: v for k, v in model[j].items()} for j in range(n_gens)}
    # nilpotent part N: g_i -> sum of strictly lower terms of the same degree
    nil: dict[str, dict] = {}
    for a in range(n_gens):
        row: dict = {}
        for b in range(n_gens):
            if a == b or (degs[b] - degs[a]) % nl or rng.random() > 0.35:
                continue
            k = (degs[b] - degs[a]) // nl
            if acts[b] - k * area < acts[a]:
                row = chain_add(row, {ids[b]: Laurent.monomial(k)})
        nil[ids[a]] = row
    ident = {g: {g: Laurent.one()} for g in ids}
    p = {g: chain_add(ident[g], nil[g]) for g in ids}
    # P^-1 = sum of N^m in characteristic 2
    p_inv = {}
    for g in ids:
        total, term = dict(ident[g]), dict(ident[g])
        while True:
            term = _apply(nil, term)
            if not term:
                break
            total = chain_add(total, term)
        p_inv[g] = total
    diff = {g: _apply(p_inv, _apply(model_d, p[g])) for g in ids}
    gens = [FilteredGenerator(ids[j], acts[j], degs[j]) for j in range(n_gens)]
    return FilteredComplex(ctx, gens, diff)


def random_cycle(rng: random.Random, cx: FilteredComplex, degree: int) -> dict:
    """A random cycle of the given degree: random subsets of terms kept when d vanishes."""
    terms = oracle_terms(cx, degree)
    found = []
    for _ in range(300):
        chain: dict = {}
        for g, k in terms:
            if rng.random() < 0.5:
                chain = chain_add(chain, {g: Laurent.monomial(k)})
        if chain and not cx.apply_d(chain):
            found.append(chain)
            if len(found) >= 5:
                break
    return rng.choice(found) if found else {}


# -- spectral invariant oracle ----------------------------------------------------------


def oracle_terms(cx: FilteredComplex, degree: int, window: int = 12) -> list[tuple[str, int]]:
    """Every shifted generator g*t^k of the given degree with |k| <= window."""
    nl = cx.context.maslov_min
    out = []
    for g in cx.generators:
        for k in range(-window, window + 1):
            if g.degree - k * nl == degree:
                out.append((g.id, k))
    return out


def _as_terms(chain: dict) -> set[tuple[str, int]]:
    return {(g, k) for g, c in chain.items() for k in c.exponents}


def _term_filtration(cx: FilteredComplex, terms) -> Fraction | float:
    area = cx.context.area
    return max((cx.by_id[g].action - k * area for g, k in terms), default=NEG_INF)


def brute_force_spectral(cx: FilteredComplex, chain: dict, degree: int) -> Fraction | float:
    """min over all representatives c + d(y), y ranging over every chain of degree+1."""
    upper = oracle_terms(cx, degree + 1)
    images = []
    for g, k in upper:
        images.append(_as_terms({h: c.shift(k) for h, c in cx.d[g].items()}))
    base = _as_terms(chain)
    best: Fraction | float = math.inf
    for mask in range(1 << len(images)):
        rep = set(base)
        for i, img in enumerate(images):
            if mask >> i & 1:
                rep ^= img
        val = _term_filtration(cx, rep)
        if val < best:
            best = val
    return best


# -- random Morse data and the sublevel oracle ----------------------------------------------


def random_morse_data(rng: random.Random, n_points: int | None = None, top_index: int = 3):
    """Critical values, indices and a Z2 Morse differential with d^2 = 0, lowering index and f."""
    n_points = n_points or rng.randint(1, 50)
    values = rng.sample(range(-200, 200), n_points)
    names = [f"q{i}" for i in range(n_points)]
    f = {q: Fraction(v, rng.choice((1, 2, 4))) for q, v in zip(names, values)}
    idx = {}
    model: dict[str, set] = {q: set() for q in names}
    pool = sorted(names, key=lambda q: f[q])
    rng.shuffle(pool)
    while pool:
        a = pool.pop()
        idx.setdefault(a, rng.randint(0, top_index))
        if pool and idx[a] > 0 and rng.random() < 0.6:
            cands = [b for b in pool if f[b] < f[a] and b not in idx]
            if cands:
                b = rng.choice(cands)
                pool.remove(b)
                idx[b] = idx[a] - 1
                model[a] = {b}
    # filtration-lowering unipotent change of basis within each index
    nil = {q: {r for r in names if r != q and idx[r] == idx[q] and f[r] < f[q] and rng.random() < 0.3}
           for q in names}

    def apply(mapping, chain):
        out: set = set()
        for q in chain:
            out ^= mapping[q]
        return out

    p = {q: {q} ^ nil[q] for q in names}
    p_inv = {}
    for q in names:
        total, term = {q}, {q}
        while term:
            term = apply(nil, term)
            total ^= term
        p_inv[q] = total
    diff = {q: sorted(apply(p_inv, apply(model, p[q]))) for q in names}
    return f, idx, diff


def morse_cycle(rng: random.Random, idx: dict, diff: dict, degree: int) -> set:
    """A random nonzero cycle of the Morse complex in the given degree, or an empty set."""
    pts = [q for q in idx if idx[q] == degree]
    for _ in range(200):
        pick = {q for q in pts if rng.random() < 0.5}
        if not pick:
            continue
        bd: set = set()
        for q in pick:
            bd ^= set(diff[q])
        if not bd:
            return pick
    return set()


def brute_force_sublevel_selector(f: dict, idx: dict, diff: dict, cycle: set) -> Fraction | float:
    """Least value v with the cycle homologous to a chain supported on {f <= v}."""
    degree = idx[next(iter(cycle))]
    boundaries = [set(diff[q]) for q in idx if idx[q] == degree + 1]
    if in_span(boundaries, cycle):
        return NEG_INF
    for v in sorted(set(f.values())):
        low = [{q} for q in idx if idx[q] == degree and f[q] <= v]
        if in_span(boundaries + low, cycle):
            return v
    raise AssertionError("cycle never reached")


# -- grid oracle ------------------------------------------------------------------------------


def brute_force_ls(f, cycle_cells: list[int], degree: int):
    """Least vertex value v such that the cycle is homologous to a chain in the sublevel set {<= v}."""
    cx = f.complex
    cv = f.cell_values
    boundaries = [_mod2(cx.boundary[c]) for c in cx.by_dim.get(degree + 1, [])]
    target = _mod2(cycle_cells)
    for v in sorted(set(f.values)):
        low = [{c} for c in cx.by_dim[degree] if cv[c] <= v]
        if in_span(boundaries + low, target):
            return v
    raise AssertionError("class never reached")


def _mod2(items) -> set:
    out: set = set()
    for x in items:
        out ^= {x}
    return out
