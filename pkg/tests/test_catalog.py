from __future__ import annotations

import itertools

import pytest

from qhbounds import catalog
from qhbounds.algebra import validate
from qhbounds.catalog import Parity, Space
from qhbounds.errors import BadParameters
from qhbounds.novikov import GammaElement, Laurent

T = Laurent.monomial


def test_cp_examples():
    r = catalog.cp_n_ambient(2, 3)
    assert r["h1"] * r["h2"] == r["h0"].shift(2)
    r = catalog.cp_n_ambient(1, 2)
    assert r["h1"] * r["h1"] == r["h0"].shift(2)
    for n in range(1, 6):
        r = catalog.cp_n_ambient(n, n + 1)
        for b in r.basis:
            assert r.one() * r[b.id] == r[b.id]


def test_cp_maslov_must_divide():
    with pytest.raises(BadParameters):
        catalog.cp_n_ambient(2, 4)


def test_cp_gamma():
    r = catalog.cp_n_gamma(3)
    assert r.variable == "s"
    assert r["h1"] * r["h3"] == r.element({"h0": GammaElement.monomial(1)})
    h = r["h1"]
    acc = r.one()
    for k in range(4):
        assert acc == r[f"h{k}"]
        acc = acc * h


def test_quadric_examples():
    q1 = catalog.quadric_ambient(1, Parity.ODD)
    assert q1["a"] * q1["a"] == q1["u"].shift(1) == q1["b"] * q1["b"]
    assert q1["u"] * q1["a"] == q1["a"]
    q2 = catalog.quadric_ambient(2, Parity.EVEN)
    assert q2["a"] * q2["b"] == q2["u"].shift(1)
    with pytest.raises(BadParameters):
        catalog.quadric_ambient(2, Parity.ODD)


def test_clifford_examples():
    for n in range(1, 5):
        r = catalog.clifford_lqh(n)
        for i in range(1, n + 1):
            ti = r[f"t{i}"]
            assert ti * ti == r["T"].shift(1)
        x = r[catalog.torus_basis_id(n, [1])]
        assert r["T"] * x == x


def test_equator_example():
    e = catalog.equator()
    assert e["pt"] * e["pt"] == e["L"].shift(1)


def test_singular_rings():
    rp3 = catalog.singular_ring(Space.RP_N, 3)
    x = rp3["x1"]
    assert x * x * x == rp3["x3"]
    s4 = catalog.singular_ring(Space.SPHERE_N, 4)
    assert not (s4["pt"] * s4["pt"])
    t2 = catalog.singular_ring(Space.TORUS_N, 2)
    assert t2["t1"] * t2["t2"] == t2["pt"]
    assert not (t2["t1"] * t2["t1"])


def test_torus_ring_is_the_exterior_algebra_dual():
    """Brute force: product of subset classes is the complement-union rule."""
    n = 4
    r = catalog.singular_ring(Space.TORUS_N, n)
    subsets = [s for k in range(n + 1) for s in itertools.combinations(range(1, n + 1), k)]
    for a, b in itertools.product(subsets, repeat=2):
        prod = r[catalog.torus_basis_id(n, a)] * r[catalog.torus_basis_id(n, b)]
        if set(a) & set(b):
            assert not prod
        else:
            assert prod == r[catalog.torus_basis_id(n, set(a) | set(b))]


def test_products_with_aspherical_factor():
    cp1 = catalog.cp_n_ambient(1, 2)
    point = catalog.poincare_ring([1])
    p = catalog.product_with_aspherical(cp1, point)
    assert len(p.basis) == len(cp1.basis)
    assert p[p.basis[1].id] * p[p.basis[1].id] == p.one().shift(2)

    cp = catalog.cp_n_ambient(2, 3)
    t2 = catalog.singular_ring(Space.TORUS_N, 2)
    prod = catalog.product_with_aspherical(cp, t2)
    assert prod["h0|t1"] * prod["h0|t2"] == prod["h0|pt"]
    assert validate(prod).ok


def test_registry_builds_every_key():
    args = {"cp": (2,), "cpgamma": (2,), "quadric": (2,), "clifford": (2,), "equator": (),
            "rp": (2,), "rp-classical": (2,), "torus": (2,), "sphere": (2,)}
    assert set(args) == set(catalog.CATALOG)
    for key, a in args.items():
        assert catalog.build(key, *a).basis


@pytest.mark.parametrize("n", range(1, 9))
def test_catalog_rings_validate(n):
    rings = [catalog.cp_n_ambient(n, n + 1), catalog.cp_n_gamma(n), catalog.quadric_ambient(n),
             catalog.rp_n_lagrangian(n), catalog.singular_ring(Space.RP_N, n),
             catalog.singular_ring(Space.SPHERE_N, n)]
    if n <= 5:
        rings += [catalog.clifford_lqh(n), catalog.singular_ring(Space.TORUS_N, n)]
    for ring in rings:
        rep = validate(ring)
        assert rep.ok, (ring.name, rep.failures)
