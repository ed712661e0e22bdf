"""Acceptance criteria, each at its stated tolerance and time limit.

Every criterion records one PASS/FAIL line (shown in the pytest terminal
summary and printed directly). Run alone with
``pytest tests/test_acceptance.py -s``.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from math import comb

from oracles import brute_force_betti
from secantlab.betti import graded_betti, table_predicates
from secantlab.groebner import Ideal, groebner_basis, reduce_by
from secantlab.hilbert import hilbert_series, numerical_invariants
from secantlab.polyring import GF, PolynomialRing, grevlex
from secantlab.projsec import (
    center_general,
    center_on_secant,
    classify_quadric,
    project,
    ruled_join_variety,
    secant_locus_conductor,
    secant_locus_incidence,
)
from secantlab.stratify import stratification_survey
from secantlab.suites import (
    NEGATIVE_MINIMAL,
    POSITIVE_MINIMAL,
    PROJECTED,
    choose_center,
    minimal_degree_conditions,
)
from secantlab.varieties import generic_complete_intersection, implicitize, parse_variety, random_point

F = GF(32003)


@contextmanager
def criterion(log, number: int, title: str, limit: float):
    t0 = time.perf_counter()
    status, detail = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        status = "PASS" if elapsed < limit else "FAIL"
        detail = f"{elapsed:.1f}s (limit {limit:.0f}s)"
    except AssertionError as exc:
        detail = f"assertion failed: {str(exc).splitlines()[0] if str(exc) else 'see traceback'}"
        raise
    finally:
        line = f"[{status}] criterion {number}: {title} -- {detail}"
        log.append(line)
        print(line)
    assert status == "PASS", line


def _h0_I2(I) -> int:
    r = I.ring.nvars - 1
    return comb(r + 2, 2) - hilbert_series(I).function(2)


def _predicates(I, n=None):
    T = graded_betti(I)
    hd = hilbert_series(I)
    return T, table_predicates(T, I.ring.nvars - 1, hd.dim if n is None else n,
                               projectively_normal=False)


def _delta_and_genus(ideal):
    hd = hilbert_series(ideal)
    n = hd.dim
    return n + hd.degree - ideal.ring.nvars, 1 - hd.hilbert_poly.chi[n - 1]


def test_criterion_1_veronese_surface_secant_conics(acceptance_log):
    with criterion(acceptance_log, 1, "veronese(2,2): s = 1 and a smooth conic for 10 secant centers", 120):
        X = parse_variety("veronese:2,2", F)
        for i in range(10):
            q = center_on_secant(X, random.Random(f"c1/{i}"))[0]
            a = secant_locus_incidence(X, q)
            b = secant_locus_conductor(X, q)
            assert a.s == b.s == 1
            assert a.ideal.equals(b.ideal)
            qc = classify_quadric(a.ideal)
            assert (qc.is_quadric, qc.m, qc.rank, qc.smooth) == (True, 2, 3, True), qc.kind


def test_criterion_2_projected_veronese_surface(acceptance_log):
    with criterion(acceptance_log, 2, "veronese(2,2) projected from a secant point", 180):
        X = parse_variety("veronese:2,2", F)
        q = center_on_secant(X, random.Random("c2"))[0]
        Y = project(X, q).variety
        T, P = _predicates(Y.ideal)
        assert _h0_I2(Y.ideal) == 2 == _h0_I2(X.ideal) + 1 - 5
        assert P.regularity == 3
        assert P.depth == 3
        assert hilbert_series(Y.ideal).degree == 4
        assert _delta_and_genus(X.ideal) == (0, 0)
        assert _delta_and_genus(Y.ideal) == (1, 1)
        inv = numerical_invariants(Y, random.Random(2))
        assert inv.sectional_genus_by_slicing == 1
        assert T.check_euler()


def test_criterion_3_segre_threefold(acceptance_log):
    with criterion(acceptance_log, 3, "segre(1,2): smooth quadric surface loci, ACM projection", 300):
        X = parse_variety("segre:1,2", F)
        for i in range(10):
            q = center_general(X, random.Random(f"c3/{i}"))
            rep = secant_locus_incidence(X, q)
            assert rep.s == 2
            assert rep.ideal.equals(secant_locus_conductor(X, q).ideal)
            qc = classify_quadric(rep.ideal)
            assert (qc.is_quadric, qc.m, qc.rank, qc.smooth) == (True, 3, 4, True), qc.kind
            Y = project(X, q).variety
            T, P = _predicates(Y.ideal)
            assert _h0_I2(Y.ideal) == 0 == 3 + 2 - 5
            assert P.depth == 4 and P.is_acm
            assert P.regularity == 3


def test_criterion_4_del_pezzo_threefold(acceptance_log):
    with criterion(acceptance_log, 4, "g14 section X_3: s = 1, no quadrics, Betti 5,5,1", 600):
        X = parse_variety("g14:3", F)
        k = hilbert_series(X.ideal).dim
        assert (X.r, k) == (6, 3)
        q = choose_center(X, "general", 0)
        rep = secant_locus_incidence(X, q)
        assert rep.s == 1 == k - 2
        assert rep.ideal.equals(secant_locus_conductor(X, q).ideal)
        Y = project(X, q).variety
        assert _h0_I2(Y.ideal) == 0 == 5 + rep.s - X.r
        T, P = _predicates(Y.ideal)
        assert {key: v for key, v in T.nonzero().items() if key != (0, 0)} == {
            (1, 2): 5, (2, 2): 5, (3, 2): 1}
        assert P.depth == 3 and P.regularity == 3
        assert T.check_euler()


def test_criterion_5_sharpness_for_two_quadrics(acceptance_log):
    with criterion(acceptance_log, 5, "two general quadrics in P^3: N_1 not N_2, quartic plane image", 120):
        X = generic_complete_intersection([2, 2], 3, F, seed=0)
        TX = graded_betti(X.ideal)
        PX = table_predicates(TX, 3, 1)
        assert PX.satisfies_np(1) and not PX.satisfies_np(2)
        assert TX[2, 2] == 1
        q = center_general(X, random.Random("c5"))
        sec = secant_locus_incidence(X, q)
        qc = classify_quadric(sec.ideal)
        assert not qc.is_quadric and qc.kind.startswith("not-a-quadric")
        Y = project(X, q).variety
        hy = hilbert_series(Y.ideal)
        assert Y.r == 2 and hy.dim == 1 and hy.degree == 4
        assert len(Y.ideal.minimal_generators()) == 1
        _, PY = _predicates(Y.ideal)
        assert PY.regularity == 4


def test_criterion_6_minimal_degree_coherence(acceptance_log):
    with criterion(acceptance_log, 6, "minimal degree: three conditions hold or fail together", 600):
        for spec in POSITIVE_MINIMAL:
            X = parse_variety(spec, F)
            c = minimal_degree_conditions(X.ideal, X.r)
            assert (c["minimal_degree"], c["two_regular"], c["n2_codim"]) == (True, True, True), spec
        negatives = [(spec, parse_variety(spec, F).ideal) for spec in NEGATIVE_MINIMAL]
        negatives += [("g14:1", parse_variety("g14:1", F).ideal)]
        for spec, kind in PROJECTED:
            X = parse_variety(spec, F)
            negatives.append((f"{spec}/{kind}", project(X, choose_center(X, kind, 0)).variety.ideal))
        for name, I in negatives:
            c = minimal_degree_conditions(I, I.ring.nvars - 1)
            assert (c["minimal_degree"], c["two_regular"], c["n2_codim"]) == (False, False, False), name


DUAL_CASES = [("veronese:2,2", "secant"), ("veronese:2,2", "general"), ("segre:1,2", "general"),
              ("scroll:1+2", "secant"), ("scroll:1+2", "general"), ("scroll:2+2", "secant"),
              ("veronese:1,3", "general"), ("veronese:1,4", "secant"), ("quadric:3", "general"),
              ("veronese:2,3", "secant"), ("g14:3", "general")]


def test_criterion_7_dual_routes_and_betti_oracle(acceptance_log):
    with criterion(acceptance_log, 7, "incidence = conductor on 11 cases; Betti = syzygy oracle on 6", 600):
        agreed = 0
        for spec, kind in DUAL_CASES:
            X = parse_variety(spec, F)
            rng = random.Random(f"c7/{spec}/{kind}")
            q = center_on_secant(X, rng)[0] if kind == "secant" else center_general(X, rng)
            a = secant_locus_incidence(X, q)
            b = secant_locus_conductor(X, q)
            assert a.ideal.equals(b.ideal), (spec, kind)
            agreed += 1
        assert agreed >= 8
        S = PolynomialRing.projective(2, F)
        x = S.gens()
        small = [parse_variety(s, F).ideal for s in ("veronese:2,2", "ci:2,2", "veronese:1,3",
                                                       "segre:1,2", "scroll:1+2")]
        small.append(Ideal(S, [x[0] * x[1], x[1] * x[2], x[0] * x[2]]))
        for I in small:
            T = graded_betti(I)
            assert T.nonzero() == brute_force_betti(I.gens, I.ring.nvars, T.j_max + I.ring.nvars + 1)


def _s_poly(f, g):
    a, b = f.lm(grevlex), g.lm(grevlex)
    lcm = tuple(max(u, v) for u, v in zip(a, b))
    K = f.ring.field
    return (f.mul_term(tuple(l - u for l, u in zip(lcm, a)), K.inv(f.lc(grevlex)))
            - g.mul_term(tuple(l - v for l, v in zip(lcm, b)), K.inv(g.lc(grevlex))))


CORPUS = ["veronese:2,2", "veronese:1,3", "veronese:1,4", "veronese:2,3", "segre:1,2", "segre:2,2",
          "scroll:1+2", "scroll:2+2", "quadric:3", "ci:2,2", "g14:3", "g14:0"]
IMPLICITIZED = ["veronese:2,2", "veronese:1,4", "segre:1,2", "scroll:1+2", "scroll:2+2", "g14:0"]


def test_criterion_8_property_suites(acceptance_log):
    with criterion(acceptance_log, 8, "GB postconditions, 100-point implicitization, Euler, determinism", 600):
        for spec in CORPUS:
            I = parse_variety(spec, F).ideal
            G = groebner_basis(I, grevlex)
            assert all(not reduce_by(g, G, grevlex) for g in I.gens), spec
            for i in range(len(G)):
                for j in range(i + 1, len(G)):
                    assert not reduce_by(_s_poly(G[i], G[j]), G, grevlex), spec
            assert graded_betti(I).check_euler(), spec
        for spec in IMPLICITIZED:
            X = parse_variety(spec, F)
            J = implicitize(X.parametrization, X.ring)
            assert J.equals(X.ideal)
            rng = random.Random(f"c8/{spec}")
            for _ in range(100):
                pt = random_point(X, F, rng)
                assert all(not g.evaluate(pt) for g in J.gens), spec
        X = parse_variety("veronese:2,2", F)
        runs = [stratification_survey(X, 8, seed=5, special_samplers={"on-secant": 3}).to_json()
                for _ in range(2)]
        assert runs[0] == runs[1]


def test_criterion_9_stratification_surveys(acceptance_log):
    with criterion(acceptance_log, 9, "survey supports {-1,1}, {-1,0}, {2}; tangent membership", 900):
        v22 = stratification_survey(parse_variety("veronese:2,2", F), 50, seed=0,
                                    special_samplers={"on-secant": 10}, tangent="variety")
        assert v22.support == {-1, 1} and v22.verdict == "consistent", v22.summary()
        positive = [r for r in v22.records if r.s is not None and r.s > 0]
        assert positive and all(r.tangent_member for r in positive)
        v23 = stratification_survey(parse_variety("veronese:2,3", F), 50, seed=0,
                                    special_samplers={"on-secant": 10})
        assert v23.support == {-1, 0} and v23.verdict == "consistent", v23.summary()
        s12 = stratification_survey(parse_variety("segre:1,2", F), 50, seed=0)
        assert s12.support == {2} and s12.verdict == "consistent", s12.summary()
        # an independent check of the tangent-variety membership on the Veronese surface
        tan = ruled_join_variety(parse_variety("veronese:2,2", F), "tangent")
        for r in positive:
            assert all(not g.evaluate(r.q) for g in tan.gens)
