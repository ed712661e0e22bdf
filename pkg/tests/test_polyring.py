from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from secantlab.polyring import (
    GF,
    QQ,
    PolyParseError,
    PolynomialRing,
    elim,
    field_from_spec,
    format_ideal_text,
    format_poly,
    grevlex,
    lex,
    monomials_of_degree,
    parse_poly,
    read_ideal_text,
)

R3 = PolynomialRing(["x", "y", "z"], QQ)
F3 = PolynomialRing(["x", "y", "z"], GF(32003))


def polys(ring, max_terms=5, max_deg=3, coeff=10):
    exps = st.tuples(*[st.integers(0, max_deg)] * ring.nvars)
    return st.dictionaries(exps, st.integers(-coeff, coeff), max_size=max_terms).map(
        lambda d: ring.poly({e: c for e, c in d.items() if c})
    )


exps3 = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))


# --- fields


def test_rationals_coerce_fractions_and_strings():
    assert QQ(Fraction(3, 4)) == mpq(3, 4)
    assert QQ("-5/6") == mpq(-5, 6)
    with pytest.raises(TypeError):
        QQ(0.5)


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(Fraction(1, 2)) == 4
    assert F.inv(3) * 3 % 7 == 1
    assert F.lift(6) == -1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValueError):
        F(Fraction(1, 7))


@pytest.mark.parametrize("p", [2, 8, 1, 9])
def test_prime_field_rejects_bad_characteristic(p):
    with pytest.raises(ValueError):
        GF(p)


@pytest.mark.parametrize("text,p", [("QQ", 0), ("GF(32003)", 32003), ("32003", 32003),
                                    ("GF 101", 101), ("F7", 7)])
def test_field_from_spec(text, p):
    assert field_from_spec(text).p == p


def test_field_from_spec_rejects_garbage():
    with pytest.raises(PolyParseError):
        field_from_spec("reals")


# --- orders


def test_grevlex_lex_and_elimination_orders():
    x, y, z = R3.gens()
    a = (y ** 2).lm(grevlex)
    assert (y ** 2 + x * z).lm(grevlex) == a
    assert (y ** 2 + x * z).lm(lex) == (1, 0, 1)
    # elim(1) puts any monomial involving z above z-free ones
    assert (x ** 3 + z).lm(elim(1)) == (0, 0, 1)
    assert (x ** 3 + y * z).lm(elim(2)) == (0, 1, 1)


@pytest.mark.parametrize("order", [grevlex, lex, elim(1), elim(2)])
@given(a=exps3, b=exps3, c=exps3)
def test_orders_are_multiplicative_total_orders(order, a, b, c):
    ka, kb = order.key(a), order.key(b)
    assert (ka == kb) == (a == b)
    if ka > kb:
        ac = tuple(x + y for x, y in zip(a, c))
        bc = tuple(x + y for x, y in zip(b, c))
        assert order.key(ac) > order.key(bc)
    assert order.key(a) >= order.key((0, 0, 0))


# --- arithmetic


@given(polys(R3), polys(R3), polys(R3))
def test_ring_axioms_over_rationals(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R3.zero
    assert f * R3.one == f


@given(polys(F3), polys(F3), polys(F3))
def test_ring_axioms_mod_p(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f + (-f) == F3.zero


@given(polys(R3), polys(R3))
def test_degree_is_additive(f, g):
    if f and g:
        assert (f * g).degree() == f.degree() + g.degree()


@given(polys(R3), polys(R3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_evaluation_is_a_ring_map(f, g, pt):
    pt = [QQ(v) for v in pt]
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)


@given(polys(R3, coeff=50), st.lists(st.integers(-30, 30), min_size=3, max_size=3))
def test_reduction_mod_p_commutes_with_evaluation(f, pt):
    F = GF(32003)
    rational = f.evaluate([QQ(v) for v in pt])
    modp = f.change_ring(F3).evaluate([F(v) for v in pt])
    assert F(rational) == modp


@given(polys(R3), polys(R3))
def test_product_rule(f, g):
    for i in range(3):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


def test_powers_and_substitution():
    x, y, z = R3.gens()
    f = (x + y) ** 3
    assert f == x ** 3 + 3 * x ** 2 * y + 3 * x * y ** 2 + y ** 3
    S = PolynomialRing(["s", "t"], QQ)
    s, t = S.gens()
    img = (x * z - y ** 2).substitute([s ** 2, s * t, t ** 2], S)
    assert not img


def test_homogeneity_and_components():
    x, y, z = R3.gens()
    f = x ** 2 + y * z + x
    assert not f.is_homogeneous()
    assert f.homogeneous_component(2) == x ** 2 + y * z
    assert (x * y - z ** 2).is_homogeneous()


def test_monomials_of_degree_counts():
    for n in range(1, 5):
        for d in range(5):
            ms = list(monomials_of_degree(n, d))
            assert len(ms) == comb(n + d - 1, d)
            assert len(set(ms)) == len(ms)


# --- parsing and the ideal file format


@pytest.mark.parametrize("text", ["x^2 - 3/2*y*z + 5", "-(x+y)^2*z", "x*y*z - 7", "0", "2*x - x - x"])
def test_parse_format_roundtrip(text):
    f = parse_poly(text, R3)
    assert parse_poly(format_poly(f), R3) == f


def test_parse_examples():
    x, y, z = R3.gens()
    assert parse_poly("x^2 - 3/2*y*z", R3) == x ** 2 - y * z * Fraction(3, 2)
    assert parse_poly("2*(x+y)", R3) == 2 * x + 2 * y
    assert R3("x*y") == x * y


@pytest.mark.parametrize("bad", ["x^", "x + + ", "w", "x^-1", "(x", "1/0", "2(x+y)"])
def test_parse_errors(bad):
    with pytest.raises(PolyParseError):
        parse_poly(bad, R3)


def test_ideal_file_roundtrip():
    ring = PolynomialRing.projective(3, GF(101))
    x = ring.gens()
    gens = [x[0] * x[2] - x[1] ** 2, x[1] * x[3] - x[2] ** 2 * 3]
    text = format_ideal_text(ring, gens, comment="two quadrics")
    ring2, gens2 = read_ideal_text(text)
    assert ring2.names == ring.names and ring2.field == ring.field
    assert gens2 == gens


def test_ideal_file_requires_ring_line():
    with pytest.raises(PolyParseError):
        read_ideal_text("field: QQ\nx0^2\n")


def test_change_field_maps_coefficients():
    x, y, z = R3.gens()
    f = x * Fraction(1, 2) + y
    g = f.change_ring(F3)
    assert g.terms[(1, 0, 0)] == pow(2, -1, 32003)


def test_random_elements_respect_bounds():
    rng = random.Random(1)
    for _ in range(50):
        assert -3 <= QQ.random_element(rng, 3) <= 3
        assert 0 <= GF(11).random_element(rng) < 11
