from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import hilbert_function as oracle_hf
from secantlab.groebner import Ideal
from secantlab.hilbert import (
    binom_poly,
    hilbert_from_leading,
    hilbert_function,
    hilbert_series,
    numerical_invariants,
    sectional_genus_by_slicing,
)
from secantlab.polyring import GF, QQ, PolynomialRing
from secantlab.varieties import parse_variety

CORPUS = ["veronese:2,2", "veronese:1,3", "veronese:1,4", "segre:1,2", "segre:2,2",
          "scroll:1+2", "scroll:2+2", "quadric:3", "ci:2,2", "g14:3", "veronese:2,3"]


@pytest.mark.parametrize("spec", CORPUS)
def test_hilbert_function_matches_degreewise_rank(spec):
    X = parse_variety(spec, GF(32003))
    hd = hilbert_series(X.ideal)
    n = X.ring.nvars
    for d in range(5):
        assert hd.function(d) == oracle_hf(X.ideal.gens, n, d)


@pytest.mark.parametrize("spec", CORPUS)
def test_polynomial_agrees_with_function_past_regularity_index(spec):
    X = parse_variety(spec, GF(32003))
    hd = hilbert_series(X.ideal)
    j0 = hd.regularity_index()
    for j in range(j0, j0 + 6):
        assert hd.hilbert_poly(j) == hd.function(j)


# (dim, degree, sectional genus, Delta-genus); curve genera from the classical formulas
KNOWN = {
    "veronese:2,2": (2, 4, 0, 0),
    "veronese:1,3": (1, 3, 0, 0),
    "veronese:1,4": (1, 4, 0, 0),
    "veronese:2,3": (2, 9, 1, 1),
    "segre:1,2": (3, 3, 0, 0),
    "segre:2,2": (4, 6, 1, 1),  # elliptic sextic curve sections
    "scroll:1+2": (2, 3, 0, 0),
    "scroll:2+2": (2, 4, 0, 0),
    "quadric:3": (2, 2, 0, 0),
    "ci:2,2": (1, 4, 1, 1),
    "g14:3": (3, 5, 1, 1),
    "g14:0": (6, 5, 1, 1),
}


@pytest.mark.parametrize("spec", sorted(KNOWN))
def test_numerical_invariants(spec):
    X = parse_variety(spec, GF(32003))
    inv = numerical_invariants(X, random.Random(0), slice_check=X.r <= 7)
    dim, deg, g, delta = KNOWN[spec]
    assert (inv.dim, inv.degree, inv.sectional_genus, inv.delta) == (dim, deg, g, delta)
    if inv.sectional_genus_by_slicing is not None:
        assert inv.sectional_genus_by_slicing == g
    assert not inv.notes


def test_closed_form_hilbert_polynomials():
    v22 = hilbert_series(parse_variety("veronese:2,2").ideal)
    tc = hilbert_series(parse_variety("veronese:1,3").ideal)
    eq = hilbert_series(parse_variety("ci:2,2").ideal)
    s22 = hilbert_series(parse_variety("segre:2,2").ideal)
    for k in range(8):
        assert v22.hilbert_poly(k) == (2 * k + 1) * (k + 1)
        assert tc.hilbert_poly(k) == 3 * k + 1
        assert s22.hilbert_poly(k) == comb(k + 2, 2) ** 2
        if k >= 1:
            assert eq.hilbert_poly(k) == 4 * k
    assert v22.h_vector == (1, 3)
    assert eq.h_vector == (1, 2, 1)
    assert v22.numerator == (1, 0, -6, 8, -3)


def test_empty_and_zero_dimensional_schemes():
    S = PolynomialRing.projective(2, QQ)
    x = S.gens()
    unit = hilbert_series(Ideal(S, [S.one]))
    assert unit.dim == -1 and unit.degree == 0
    pts = hilbert_series(Ideal(S, [x[2], x[0] * x[1]]))
    assert pts.dim == 0 and pts.degree == 2
    assert [pts.function(j) for j in range(4)] == [1, 2, 2, 2]
    whole = hilbert_series(Ideal(S, []))
    assert whole.dim == 2 and whole.degree == 1


def test_non_homogeneous_ideal_rejected():
    S = PolynomialRing.projective(2, QQ)
    x = S.gens()
    with pytest.raises(ValueError):
        hilbert_series(Ideal(S, [x[0] ** 2 - x[1]]))
    with pytest.raises(ValueError):
        hilbert_function(Ideal(S, [x[0]]), -1)


def test_sectional_genus_by_slicing_on_surface():
    X = parse_variety("veronese:2,3", GF(32003))
    assert sectional_genus_by_slicing(X.ideal, random.Random(5)) == 1


def test_binomials():
    assert binom_poly(5, 2) == 10
    assert binom_poly(-1, 3) == -1
    assert binom_poly(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom_poly(4, -1) == 0


def _count_standard(gens, n, d):
    count = 0
    for e in product(range(d + 1), repeat=n):
        if sum(e) != d:
            continue
        if not any(all(a <= b for a, b in zip(g, e)) for g in gens):
            count += 1
    return count


monomial_gens = st.lists(st.tuples(*[st.integers(0, 3)] * 4), min_size=1, max_size=6)


@given(monomial_gens)
def test_monomial_numerator_against_standard_monomial_count(gens):
    gens = [g for g in gens if sum(g) > 0] or [(1, 0, 0, 0)]
    hd = hilbert_from_leading(gens, 4)
    for d in range(7):
        assert hd.function(d) == _count_standard(gens, 4, d)
    # the numerator evaluated at t = 1 vanishes unless the quotient has full dimension
    assert sum(hd.numerator) == (1 if hd.krull_dim == 4 else 0)
