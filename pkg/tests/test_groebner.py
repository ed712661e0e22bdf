from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from secantlab.groebner import (
    BudgetExceeded,
    Ideal,
    apply_linear_change,
    degree_part,
    divide_exact,
    eliminate,
    groebner_basis,
    ideal_quotient,
    intersect,
    minimal_generators,
    normal_form,
    reduce_by,
    restrict_to_linear_space,
    saturate,
    saturate_by_variable,
    saturate_irrelevant,
)
from secantlab.polyring import GF, QQ, PolynomialRing, elim, grevlex, lex
from secantlab.varieties import parse_variety

CORPUS = ["veronese:2,2", "veronese:1,3", "veronese:1,4", "segre:1,2", "segre:2,2",
          "scroll:1+2", "scroll:2+2", "quadric:3", "ci:2,2", "g14:3", "g14:0", "veronese:2,3"]


def s_poly(f, g, order):
    a, b = f.lm(order), g.lm(order)
    lcm = tuple(max(x, y) for x, y in zip(a, b))
    F = f.ring.field
    u = tuple(x - y for x, y in zip(lcm, a))
    v = tuple(x - y for x, y in zip(lcm, b))
    return f.mul_term(u, F.inv(f.lc(order))) - g.mul_term(v, F.inv(g.lc(order)))


def assert_groebner(I, G, order):
    for g in I.gens:
        assert not reduce_by(g, G, order)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            assert not reduce_by(s_poly(G[i], G[j], order), G, order)
    # reduced: monic and no leading monomial divides a term of another element
    lms = [g.lm(order) for g in G]
    for g in G:
        assert g.lc(order) == 1
    for i, g in enumerate(G):
        for j, m in enumerate(lms):
            if i != j:
                assert not any(all(a <= b for a, b in zip(m, e)) for e in g.terms)


@pytest.mark.parametrize("spec", CORPUS)
def test_groebner_postconditions_on_corpus(spec):
    X = parse_variety(spec, GF(32003))
    G = groebner_basis(X.ideal, grevlex)
    assert_groebner(X.ideal, G, grevlex)
    assert Ideal(X.ideal.ring, G).equals(X.ideal)


@pytest.mark.parametrize("order", [lex, elim(2)])
def test_groebner_postconditions_other_orders(order):
    X = parse_variety("veronese:1,3", QQ)
    G = groebner_basis(X.ideal, order)
    assert_groebner(X.ideal, G, order)


R = PolynomialRing(["x", "y", "z", "w"], GF(32003))
small_polys = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-5, 5)), min_size=1, max_size=3
).map(lambda ts: R.poly({e: c for e, c in ts if c}))


@given(st.lists(small_polys, min_size=1, max_size=3))
def test_random_ideals_satisfy_postconditions(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    I = Ideal(R, gens)
    G = groebner_basis(I, grevlex)
    assert_groebner(I, G, grevlex)


def test_unit_and_zero_ideals():
    x, y, z, w = R.gens()
    assert Ideal(R, [x, x + R.one]).is_unit()
    assert Ideal(R, []).is_zero()
    assert groebner_basis(Ideal(R, [x * y - 1, x])) == [R.one]


def test_twisted_cubic_lex_basis_and_membership():
    X = parse_variety("veronese:1,3", QQ)
    I = X.ideal
    x0, x1, x2, x3 = I.ring.gens()
    assert (x0 * x3 - x1 * x2) in I
    assert x0 * x2 not in I
    assert normal_form(x1 ** 2 + x0 * x2 - x0 * x2, I) == normal_form(x1 ** 2, I)
    assert [str(g) for g in groebner_basis(I, lex)] == ["-x1^2 + x0*x2", "-x1*x2 + x0*x3", "-x2^2 + x1*x3"]


def test_eliminate_implicitizes_twisted_cubic():
    T = PolynomialRing(["x0", "x1", "x2", "x3", "s", "t"], QQ)
    x0, x1, x2, x3, s, t = T.gens()
    J = Ideal(T, [x0 - s ** 3, x1 - s ** 2 * t, x2 - s * t ** 2, x3 - t ** 3])
    E = eliminate(J, 2)
    X = parse_variety("veronese:1,3", QQ)
    S = E.ring
    assert Ideal(S, [g.change_ring(S) for g in X.ideal.gens]).equals(E)


def test_intersection_and_quotient_of_monomial_ideals():
    S = PolynomialRing(["x", "y"], QQ)
    x, y = S.gens()
    assert intersect(Ideal(S, [x]), Ideal(S, [y])).equals(Ideal(S, [x * y]))
    I = Ideal(S, [x ** 2 * y, x * y ** 2])
    assert ideal_quotient(I, Ideal(S, [x])).equals(Ideal(S, [x * y, y ** 2]))
    assert ideal_quotient(I, Ideal(S, [x * y])).equals(Ideal(S, [x, y]))


monomial_ideals = st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=4)
R3 = PolynomialRing(["a", "b", "c"], GF(32003))


@given(monomial_ideals, monomial_ideals)
def test_quotient_times_divisor_lies_in_ideal(I_exps, J_exps):
    I = Ideal(R3, [R3.monomial(e) for e in I_exps])
    J = Ideal(R3, [R3.monomial(e) for e in J_exps])
    if I.is_unit():
        return
    Q = ideal_quotient(I, J)
    for q in Q.gens:
        for j in J.gens:
            assert (q * j) in I
    assert I.is_subset_of(Q)


@given(monomial_ideals, monomial_ideals)
def test_intersection_is_contained_in_both(I_exps, J_exps):
    I = Ideal(R3, [R3.monomial(e) for e in I_exps])
    J = Ideal(R3, [R3.monomial(e) for e in J_exps])
    K = intersect(I, J)
    assert K.is_subset_of(I) and K.is_subset_of(J)
    prod = Ideal(R3, [f * g for f in I.gens for g in J.gens])
    assert prod.is_subset_of(K)


def test_saturation_removes_irrelevant_component():
    X = parse_variety("veronese:1,3", QQ)
    I = X.ideal
    m2 = [a * b for a in I.ring.gens() for b in I.ring.gens()]
    J = Ideal(I.ring, [f * g for f in I.gens for g in m2])
    assert not J.equals(I)
    assert saturate(J).equals(I)
    assert saturate_irrelevant(J, random.Random(3)).equals(I)


def test_saturate_by_variable_and_explicit_saturation():
    S = PolynomialRing(["x", "y", "z"], QQ)
    x, y, z = S.gens()
    I = Ideal(S, [x * z ** 2, y * z ** 3])
    sat, _, _ = saturate_by_variable(I, 2)
    assert sat.equals(Ideal(S, [x, y]))
    assert saturate(I, Ideal(S, [z])).equals(Ideal(S, [x, y]))


def test_divide_exact():
    S = PolynomialRing(["x", "y"], QQ)
    x, y = S.gens()
    assert divide_exact((x + y) * (x - 2 * y), x + y) == x - 2 * y
    with pytest.raises(ValueError):
        divide_exact(x ** 2 + 1, x)


def test_degree_part_and_minimal_generators():
    X = parse_variety("veronese:2,2", QQ)
    I = X.ideal
    assert len(degree_part(I, 2)) == 6
    assert len(degree_part(I, 3)) == 56 - 28  # dim S_3 minus h^0(O_P2(6))
    x = I.ring.gens()
    redundant = Ideal(I.ring, list(I.gens) + [x[0] * I.gens[0], I.gens[0] + I.gens[1]])
    assert len(minimal_generators(redundant)) == 6


def test_linear_change_and_restriction():
    X = parse_variety("veronese:1,3", QQ)
    n = 4
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    M[0][3] = 2
    J = apply_linear_change(X.ideal, M)
    assert groebner_basis(J) != groebner_basis(X.ideal)
    Minv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Minv[0][3] = -2
    assert apply_linear_change(J, Minv).equals(X.ideal)
    with pytest.raises(ValueError):
        apply_linear_change(X.ideal, [[1, 0, 0, 0]] * 4)
    # restricting the ideal (x0 - x3, x0*x1 - x2^2) to x0 = x3 gives one quadric in 3 variables
    S = X.ideal.ring
    x0, x1, x2, x3 = S.gens()
    sub, Jr, lift, _ = restrict_to_linear_space(Ideal(S, [x0 - x3, x0 * x1 - x2 ** 2]), [x0 - x3])
    assert sub.nvars == 3 and len(groebner_basis(Jr)) == 1


def test_budget_is_a_hard_cap():
    X = parse_variety("g14:0", GF(32003))
    with pytest.raises(BudgetExceeded):
        groebner_basis(Ideal(X.ideal.ring, X.ideal.gens), grevlex, pair_budget=3)
