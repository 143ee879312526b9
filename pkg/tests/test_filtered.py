from __future__ import annotations

import random
from fractions import Fraction

import pytest

from helpers import (brute_force_spectral, brute_force_sublevel_selector, morse_cycle, random_cycle,
                     random_filtered_complex, random_morse_data)
from qhbounds.errors import InvalidMorseData, NotACycle, ParseError
from qhbounds.filtered import (FilteredComplex, FilteredGenerator, chain_add, chain_shift, format_chain,
                               morse_to_filtered, parse_chain, spectral_invariant)
from qhbounds.novikov import NEG_INFINITY, WEAKLY_EXACT, Laurent, MonotoneContext

ONE = Laurent.one()
CTX = MonotoneContext(2, 2)  # A_L = 2


def test_single_generator():
    cx = FilteredComplex(CTX, [FilteredGenerator("g", Fraction(7, 2), 1)])
    assert spectral_invariant(cx, "g") == Fraction(7, 2)
    assert spectral_invariant(cx, "g*t") == Fraction(7, 2) - 2
    assert spectral_invariant(cx, "t^-2*g") == Fraction(7, 2) + 4
    assert spectral_invariant(cx, "0") == NEG_INFINITY


def test_boundary_is_the_zero_class():
    gens = [FilteredGenerator("a", Fraction(3), 1), FilteredGenerator("b", Fraction(1), 0),
            FilteredGenerator("c", Fraction(2), 0)]
    cx = FilteredComplex(CTX, gens, {"a": {"b": ONE}})
    assert spectral_invariant(cx, "b") == NEG_INFINITY
    assert spectral_invariant(cx, "c") == 2
    # c + b has the same class as c, and the same minimum
    assert spectral_invariant(cx, "c + b") == 2
    for z in ("b", "c", "b + c"):
        chain = parse_chain(z, cx.by_id)
        assert spectral_invariant(cx, chain) == brute_force_spectral(cx, chain, 0)


def test_representative_lowering():
    # d(a) = b + c with action(c) > action(b): the class [c] is represented by b
    gens = [FilteredGenerator("a", Fraction(5), 1), FilteredGenerator("b", Fraction(1), 0),
            FilteredGenerator("c", Fraction(4), 0)]
    cx = FilteredComplex(CTX, gens, {"a": parse_chain("b + c", ["a", "b", "c"])})
    assert spectral_invariant(cx, "c") == 1


def test_not_a_cycle():
    gens = [FilteredGenerator("a", Fraction(3), 1), FilteredGenerator("b", Fraction(1), 0)]
    cx = FilteredComplex(CTX, gens, {"a": {"b": ONE}})
    with pytest.raises(NotACycle):
        spectral_invariant(cx, "a")


def test_invalid_complexes_are_rejected():
    gens = [FilteredGenerator("a", Fraction(1), 1), FilteredGenerator("b", Fraction(3), 0)]
    with pytest.raises(ValueError):
        FilteredComplex(CTX, gens, {"a": {"b": ONE}})  # raises the action
    gens = [FilteredGenerator("a", Fraction(3), 2), FilteredGenerator("b", Fraction(1), 0)]
    with pytest.raises(ValueError):
        FilteredComplex(CTX, gens, {"a": {"b": ONE}})  # wrong degree
    with pytest.raises(TypeError):
        FilteredGenerator("x", 0.5, 0)


def test_chain_parsing_and_formatting():
    ids = ["g1", "g2"]
    c = parse_chain("g1 + g2*t^-1 + t^2*g1 + g1", ids)
    assert c == {"g1": Laurent.monomial(2), "g2": Laurent.monomial(-1)}
    assert parse_chain(format_chain(c, ids), ids) == c
    assert chain_add(c, c) == {}
    assert chain_shift(c, 1) == {"g1": Laurent.monomial(3), "g2": Laurent.monomial(0)}
    with pytest.raises(ParseError):
        parse_chain("g3", ids)
    with pytest.raises(ParseError):
        parse_chain("t^2", ids)


def test_dict_round_trip():
    cx = random_filtered_complex(random.Random(4), 8)
    again = FilteredComplex.from_dict(cx.to_dict())
    assert again.to_dict() == cx.to_dict()


def test_spectral_invariant_matches_brute_force():
    rng = random.Random(21)
    checked = 0
    for _ in range(60):
        cx = random_filtered_complex(rng)
        for degree in range(-2, 6):
            z = random_cycle(rng, cx, degree)
            if z:
                assert spectral_invariant(cx, z) == brute_force_spectral(cx, z, degree)
                checked += 1
    assert checked > 100


def test_spectrality_shift_and_valuation_inequality():
    rng = random.Random(22)
    for _ in range(60):
        cx = random_filtered_complex(rng)
        area = cx.context.area
        spectrum = cx.spectrum(range(-30, 31))
        for degree in range(0, 5):
            a, b = random_cycle(rng, cx, degree), random_cycle(rng, cx, degree)
            if not a or not b:
                continue
            la, lb = spectral_invariant(cx, a), spectral_invariant(cx, b)
            assert la == NEG_INFINITY or la in spectrum
            m = rng.randint(-3, 3)
            shifted = spectral_invariant(cx, chain_shift(a, m))
            assert shifted == (la - m * area if la != NEG_INFINITY else NEG_INFINITY)
            lab = spectral_invariant(cx, chain_add(a, b))
            assert lab <= max(la, lb)
            if la != lb:
                assert lab == max(la, lb)


def test_circle_height_function():
    cx = morse_to_filtered({"min": Fraction(-1), "max": Fraction(1)}, {"min": 0, "max": 1}, {})
    assert spectral_invariant(cx, "min") == -1
    assert spectral_invariant(cx, "max") == 1


def test_perfect_torus_function():
    f = {"m": Fraction(-2), "s1": Fraction(0), "s2": Fraction(1), "M": Fraction(2)}
    idx = {"m": 0, "s1": 1, "s2": 1, "M": 2}
    cx = morse_to_filtered(f, idx, {})
    for q, v in f.items():
        assert spectral_invariant(cx, q) == v
    assert spectral_invariant(cx, "s1 + s2") == 1


def test_single_minimum():
    cx = morse_to_filtered({"p": Fraction(5, 3)}, {"p": 0}, {})
    assert spectral_invariant(cx, "p") == Fraction(5, 3)
    assert cx.context == WEAKLY_EXACT


def test_invalid_morse_data():
    with pytest.raises(InvalidMorseData):
        morse_to_filtered({"a": 1, "b": 2}, {"a": 1, "b": 0}, {"a": ["b"]})  # f goes up
    with pytest.raises(InvalidMorseData):
        morse_to_filtered({"a": 2, "b": 1}, {"a": 2, "b": 0}, {"a": ["b"]})  # index drops by 2
    with pytest.raises(InvalidMorseData):
        morse_to_filtered({"a": 2}, {"a": 1, "b": 0}, {})
    with pytest.raises(InvalidMorseData):
        f = {"a": 3, "b": 2, "c": 1}
        morse_to_filtered(f, {"a": 2, "b": 1, "c": 0}, {"a": ["b"], "b": ["c"]})  # d^2 != 0


def test_morse_correspondence_on_random_data():
    rng = random.Random(23)
    checked = 0
    for _ in range(40):
        f, idx, diff = random_morse_data(rng)
        cx = morse_to_filtered(f, idx, diff)
        for degree in range(4):
            z = morse_cycle(rng, idx, diff, degree)
            if z:
                chain = {q: ONE for q in z}
                assert spectral_invariant(cx, chain) == brute_force_sublevel_selector(f, idx, diff, z)
                checked += 1
    assert checked > 50
