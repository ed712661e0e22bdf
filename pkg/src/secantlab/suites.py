"""Named verification suites run by the ``verify`` command.

Each suite returns a :class:`VerificationReport` whose checks compare a
predicted value with a computed one.  Suite names are stable identifiers
used on the command line.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .betti import graded_betti, table_predicates
from .groebner import groebner_basis
from .hilbert import hilbert_series
from .polyring import Field, format_poly
from .projsec import (
    VerificationReport,
    _Centered,
    _conductor,
    _h0_I2,
    _project,
    center_general,
    center_general_off_secant,
    center_on_secant,
    classify_quadric,
    project,
    secant_locus_incidence,
    singular_along,
    verify_projection_theorem,
)
from .varieties import Variety, generic_complete_intersection, parse_variety

CENTER_KINDS = ("general", "on-secant", "general-off-secant")


def choose_center(X: Variety, spec: str | Sequence | None, seed: int) -> list:
    """Resolve a center spec (coordinates or a sampler name) to a point."""
    rng = random.Random(seed)
    if spec is None or spec == "general":
        return center_general(X, rng)
    if spec == "on-secant":
        return center_on_secant(X, rng)[0]
    if spec == "general-off-secant":
        return center_general_off_secant(X, rng)
    if isinstance(spec, str):
        try:
            coords = [X.field(int(t)) for t in spec.replace(" ", "").split(",")]
        except ValueError:
            raise ValueError(f"bad center {spec!r}: expected integers or one of {CENTER_KINDS}")
    else:
        coords = [X.field(c) for c in spec]
    if len(coords) != X.ring.nvars:
        raise ValueError(f"center needs {X.ring.nvars} coordinates, got {len(coords)}")
    if not any(coords):
        raise ValueError("center must be a nonzero vector")
    return coords


# ---------------------------------------------------------------------------
# suites


def suite_projection(X: Variety, q, seed: int = 0) -> VerificationReport:
    return verify_projection_theorem(X, q, seed=seed, suite="thm3.3")


def suite_quadric_locus(X: Variety, q, seed: int = 0) -> VerificationReport:
    """Secant locus is empty or a quadric in its span, and the projection is birational."""
    C = _Centered(X, q)
    rep = VerificationReport("cor3.2", X.name, str(X.field), list(C.q))
    inc = secant_locus_incidence(X, C.q)
    con = _conductor(C)
    agree = inc.ideal.equals(con.ideal)
    rep.add("secant loci agree (incidence vs conductor)", True, agree)
    if not agree:
        rep.verdict = "inconsistent"
    s = inc.s
    rep.data["s"] = s
    rep.data["secant"] = inc.as_dict()
    rep.ideals["secant"] = [format_poly(g) for g in inc.ideal.gens]
    if s >= 0:
        qc = classify_quadric(inc.ideal)
        rep.add("secant locus is a quadric in its span", True, qc.is_quadric, note=qc.kind)
        if qc.is_quadric:
            shape = s == qc.m - 1 or (s == qc.m and qc.rank == 0)
            rep.add("span dimension m = s + 1", s + 1, qc.m, passed=shape)
            rep.data["quadric"] = {"m": qc.m, "rank": qc.rank, "smooth": qc.smooth}
    P = _project(C, s)
    hx = hilbert_series(X.ideal)
    hy = hilbert_series(P.variety.ideal)
    rep.add("projection birational (deg X_q = deg X)", hx.degree, hy.degree)
    if s >= 0:
        rep.add("dim Lambda = s", s, hilbert_series(con.lam).dim)
        rep.add("Lambda contained in Sing(X_q)", True, singular_along(P.variety.ideal, con.lam))
    hyp = table_predicates(graded_betti(X.ideal, seed=seed), X.r, hx.dim).satisfies_np(2)
    return rep.finalize(hypothesis_ok=hyp)


def minimal_degree_conditions(I, r: int, seed: int = 0) -> dict:
    """The three conditions characterizing varieties of minimal degree."""
    hd = hilbert_series(I)
    T = graded_betti(I, seed=seed)
    P = table_predicates(T, r, hd.dim, projectively_normal=False)
    codim = r - hd.dim
    return {
        "degree": hd.degree,
        "codim": codim,
        "regularity": P.regularity,
        "minimal_degree": hd.degree == codim + 1,
        "two_regular": P.regularity == 2,
        "n2_codim": P.satisfies_ndp(2, codim),
    }


POSITIVE_MINIMAL = ("scroll:1+2", "scroll:2+2", "veronese:1,3", "segre:1,2",
                    "quadric:3", "veronese:2,2")
NEGATIVE_MINIMAL = ("ci:2,2", "g14:3", "g14:2")
PROJECTED = (("veronese:2,2", "on-secant"), ("veronese:2,2", "general"),
             ("segre:1,2", "general"), ("veronese:1,3", "general"),
             ("scroll:1+2", "general"), ("g14:3", "general"))


def suite_minimal_degree(field: Field, seed: int = 0,
                         varieties: Sequence[str] | None = None) -> VerificationReport:
    """Degree = codim + 1, 2-regularity and N_(2,codim) hold or fail together."""
    rep = VerificationReport("thm5.1", ",".join(varieties) if varieties else "corpus",
                             str(field), [])
    cases: list[tuple[str, object, int, bool | None]] = []
    if varieties:
        for spec in varieties:
            X = parse_variety(spec, field, seed)
            cases.append((spec, X.ideal, X.r, None))
    else:
        for spec in POSITIVE_MINIMAL:
            X = parse_variety(spec, field, seed)
            cases.append((spec, X.ideal, X.r, True))
        for spec in NEGATIVE_MINIMAL:
            X = parse_variety(spec, field, seed)
            cases.append((spec, X.ideal, X.r, False))
        for spec, kind in PROJECTED:
            X = parse_variety(spec, field, seed)
            q = choose_center(X, kind, seed)
            Y = project(X, q).variety
            cases.append((f"{spec} projected from {kind} center", Y.ideal, X.r - 1, False))
    for name, I, r, expect in cases:
        c = minimal_degree_conditions(I, r, seed)
        vals = [c["minimal_degree"], c["two_regular"], c["n2_codim"]]
        together = len(set(vals)) == 1
        ok = together and (expect is None or vals[0] == expect)
        rep.add(f"{name}: conditions coincide", expect if expect is not None else "equal",
                vals, passed=ok,
                note=f"deg {c['degree']}, codim {c['codim']}, Reg {c['regularity']}")
        rep.data[name] = c
    return rep.finalize()


DEL_PEZZO_BETTI = {(1, 2): 5, (2, 2): 5, (3, 2): 1}


def suite_grassmann_section(X: Variety, q, seed: int = 0) -> VerificationReport:
    """Projection of a degree-5 Del Pezzo linear section of G(1,4)."""
    base = verify_projection_theorem(X, q, seed=seed, suite="ex5.4")
    rep = base
    k = hilbert_series(X.ideal).dim
    s = rep.data["s"]
    r = X.r
    rep.add("dim secant locus = k - 2", k - 2, s)
    C = _Centered(X, q)
    Y = _project(C, s).variety
    T = graded_betti(Y.ideal, seed=seed)
    P = table_predicates(T, r - 1, k, projectively_normal=False)
    ent = {key: v for key, v in T.entries.items() if v and key != (0, 0)}
    rep.add("no quadrics in the projected ideal (2 + s - k)", 2 + s - k, _h0_I2(Y.ideal))
    rep.add("quadric count d(d-3)/2 + s - r", 5 + s - r, _h0_I2(Y.ideal))
    rep.add("Betti table 0 <- R(-3)^5 <- R(-4)^5 <- R(-5)", DEL_PEZZO_BETTI, ent)
    rep.add("depth = k", k, P.depth)
    rep.add("Reg = 3", 3, P.regularity)
    rep.data["betti_table"] = T.format()
    rep.verdict = "pass"
    return rep.finalize(hypothesis_ok=True)


def suite_sharpness(field: Field, seed: int = 0, X: Variety | None = None,
                    q=None) -> VerificationReport:
    """Two general quadrics in P^3: N_1 without N_2, and a quartic projection."""
    if X is None:
        X = generic_complete_intersection([2, 2], 3, field, seed)
    if q is None:
        q = choose_center(X, "general", seed)
    rep = VerificationReport("ex3.7", X.name, str(field), list(q))
    hx = hilbert_series(X.ideal)
    TX = graded_betti(X.ideal, seed=seed)
    PX = table_predicates(TX, X.r, hx.dim)
    rep.add("X satisfies N_1", True, PX.satisfies_np(1))
    rep.add("X fails N_2 (beta_2,2 = 1)", 1, TX[2, 2])
    inc = secant_locus_incidence(X, q)
    rep.data["s"] = inc.s
    rep.data["secant"] = inc.as_dict()
    rep.add("secant locus is not a quadric in its span", False, inc.quadric.is_quadric,
            note=inc.quadric.kind)
    Y = project(X, q, s=inc.s).variety
    hy = hilbert_series(Y.ideal)
    TY = graded_betti(Y.ideal, seed=seed)
    PY = table_predicates(TY, X.r - 1, hy.dim, projectively_normal=False)
    gens = groebner_basis(Y.ideal)
    rep.add("projection is a hypersurface of degree 4",
            {"generators": 1, "degree": 4},
            {"generators": len(Y.ideal.minimal_generators()), "degree": hy.degree})
    rep.add("Reg(X_q) = 4", 4, PY.regularity)
    rep.add("regularity formula max(3, Reg X) fails", True, PY.regularity != max(3, PX.regularity))
    rep.ideals["projection"] = [format_poly(g) for g in gens]
    return rep.finalize()


SUITES: dict[str, Callable] = {
    "thm3.3": suite_projection,
    "cor3.2": suite_quadric_locus,
    "thm5.1": suite_minimal_degree,
    "ex5.4": suite_grassmann_section,
    "ex3.7": suite_sharpness,
}
