from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qhbounds import catalog
from qhbounds.algebra import (BasisElement, ClassVector, Kind, RingSpec, classical_part, fold,
                              format_class, module_act, parse_class, power, product, require_valid,
                              validate, valuation_ambient, valuation_lagrangian)
from qhbounds.errors import InvalidRing, NoModuleStructure, ParseError, RingMismatch
from qhbounds.novikov import NEG_INFINITY, Laurent, MonotoneContext

T = Laurent.monomial


def equator_with_module() -> RingSpec:
    """Equator ring with an action of QH(CP^1) (N_L = 2) in which h1 acts as t.

    The constants satisfy every module axiom; they exercise the module code,
    not a geometric computation.
    """
    amb = catalog.cp_n_ambient(1, 2)
    eq = catalog.equator()
    mods = {("h0", "L"): {"L": T(0)}, ("h0", "pt"): {"pt": T(0)},
            ("h1", "L"): {"L": T(1)}, ("h1", "pt"): {"pt": T(1)}}
    return RingSpec("equator+module", Kind.LAGRANGIAN, 1, eq.context, eq.basis, eq.unit,
                    eq.stored_products(), module_constants=mods, ambient_ring=amb)


def test_cp_powers_wrap_with_t_squared():
    for n in range(1, 8):
        ring = catalog.cp_n_ambient(n, n + 1)
        h = ring["h1"]
        assert power(h, n + 1) == ring.one().shift(2)
        for k in range(n + 1):
            assert power(h, k) == ring[f"h{k}"]
            assert classical_part(power(h, k)) == ring[f"h{k}"]


def test_clifford_and_equator_squares():
    for n in range(1, 5):
        ring = catalog.clifford_lqh(n)
        for i in range(1, n + 1):
            assert ring[f"t{i}"] * ring[f"t{i}"] == ring["T"].shift(1)
    eq = catalog.equator()
    assert eq["pt"] * eq["pt"] == eq["L"].shift(1)
    assert eq["L"] * eq["pt"] == eq["pt"]


def test_unit_law_on_random_classes():
    rng = random.Random(3)
    for ring in (catalog.cp_n_ambient(3, 4), catalog.quadric_ambient(2), catalog.clifford_lqh(3)):
        for _ in range(30):
            comps = {b.id: Laurent(rng.sample(range(-4, 5), rng.randint(0, 2))) for b in ring.basis}
            x = ring.element(comps)
            assert product(ring.one(), x) == x == product(x, ring.one())


def test_fold_and_degree_law():
    ring = catalog.cp_n_ambient(2, 3)
    x = fold([ring["h1"], ring["h2"]], ring)
    assert x == ring.one().shift(2)
    assert x.degree() == ring["h1"].degree() + ring["h2"].degree() - 2 * ring.dim
    lag = catalog.clifford_lqh(2)
    y = lag["t1"] * lag["t2"]
    assert y.degree() == 1 + 1 - lag.dim


def test_parse_and_format_round_trip():
    ring = catalog.cp_n_ambient(2, 3)
    x = parse_class(ring, "h1*t^2 + t^-1*h2 + h0")
    assert format_class(parse_class(ring, format_class(x))) == format_class(x)
    assert parse_class(ring, "0") == ring.zero()
    assert parse_class(ring, "h1 + h1") == ring.zero()
    with pytest.raises(ParseError):
        parse_class(ring, "h7")


def test_ring_mismatch():
    a, b = catalog.cp_n_ambient(1, 2), catalog.cp_n_ambient(2, 3)
    with pytest.raises(RingMismatch):
        product(a["h1"], b["h1"])


def test_valuations():
    ring = catalog.cp_n_ambient(1, 2, Fraction(1, 2))  # A_L = 1
    assert valuation_ambient(ring.one()) == 0
    x = ring["h0"].shift(2) + ring["h1"].shift(-1)
    assert valuation_ambient(x) == 1
    assert valuation_ambient(ring.zero()) == NEG_INFINITY
    lag = catalog.clifford_lqh(2)
    assert valuation_lagrangian(lag.one()) == 0
    assert valuation_lagrangian(lag["t1"].shift(1)) == -1
    assert valuation_lagrangian(lag.zero()) == NEG_INFINITY
    with pytest.raises(RingMismatch):
        valuation_lagrangian(ring.one())


def test_classical_part_examples():
    lag = catalog.clifford_lqh(2)
    assert classical_part(lag["pt"] + lag["T"].shift(1)) == lag["pt"]
    assert classical_part(lag.zero()) == lag.zero()


def test_module_action():
    ring = equator_with_module()
    assert validate(ring).ok
    amb = ring.ambient_ring
    rng = random.Random(5)
    for _ in range(20):
        alpha = ring.element({b.id: Laurent(rng.sample(range(-3, 4), rng.randint(0, 2))) for b in ring.basis})
        assert module_act(amb.one(), alpha) == alpha
        assert module_act(amb.zero(), alpha) == ring.zero()
        a = amb[rng.choice(["h0", "h1"])]
        r = rng.randint(-3, 3)
        assert module_act(a.shift(r), alpha) == module_act(a, alpha).shift(r)
    with pytest.raises(NoModuleStructure):
        module_act(amb.one(), catalog.equator().one())


def test_validate_catalog_rings():
    for ring in (catalog.cp_n_ambient(3, 4), catalog.cp_n_ambient(3, 2), catalog.cp_n_gamma(3),
                 catalog.quadric_ambient(3), catalog.equator(), catalog.clifford_lqh(3),
                 catalog.rp_n_lagrangian(4)):
        report = validate(ring)
        assert report.ok, report.failures


def test_validate_reports_corrupted_constant():
    good = catalog.cp_n_ambient(2, 3)
    table = dict(good.stored_products())
    table[("h1", "h1")] = {"h1": T(0)}  # wrong degree and breaks associativity
    bad = RingSpec("broken", Kind.AMBIENT, 2, good.context, good.basis, "h0", table)
    report = validate(bad)
    assert not report.ok
    assert any("h1*h1" in f for f in report.failures)
    with pytest.raises(InvalidRing):
        require_valid(bad)


def test_validate_reports_associativity_failure():
    ctx = MonotoneContext(2, 1)
    basis = [BasisElement("u", 2), BasisElement("a", 1), BasisElement("b", 1), BasisElement("p", 0)]
    # degree-correct but non-associative: (a*a)*b = p*b = 0 while a*(a*b) = a t
    table = {("a", "a"): {"p": T(0)}, ("a", "b"): {"u": T(1)}, ("a", "p"): {"b": T(1)},
             ("b", "b"): {}, ("b", "p"): {}, ("p", "p"): {}}
    for x in ("u", "a", "b", "p"):
        table[("u", x)] = {x: T(0)}
    ring = RingSpec("nonassoc", Kind.LAGRANGIAN, 2, ctx, basis, "u", table)
    report = validate(ring)
    assert any("associativity" in f for f in report.failures)


def test_class_vector_equality_and_hash():
    ring = catalog.equator()
    x = ring["pt"] + ring["L"].shift(2)
    y = ring["L"].shift(2) + ring["pt"]
    assert x == y and hash(x) == hash(y)
    assert isinstance(x, ClassVector)
    assert not (x + y)
