"""Projection from a point, secant loci, quadric classification and the
projection-theorem checks.

Coordinates are changed so that the center is ``e_r``; the projection is
then elimination of the last variable.  The secant locus is computed by two
independent routes:

* incidence: ``I_X(x) + (D_f(x, t))`` with the divided differences
  ``D_f = (f(x + t q) - f(x)) / t``; a point ``x`` of ``X`` survives the
  elimination of ``t`` exactly when the line through ``x`` and ``q`` meets
  ``X`` again (or is tangent at ``x`` when ``t = 0``);
* conductor: from an elimination basis of ``I_X`` read off
  ``I_Lambda = {a in S : a x_r + b in I_X for some b in S}``, check that it
  is linear and intersect ``X`` with the span of ``q`` and ``Lambda``.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

from . import linalg
from .betti import graded_betti, table_predicates
from .groebner import (
    Ideal,
    apply_linear_change,
    degree_part,
    eliminate,
    groebner_basis,
    normal_form,
    restrict_to_linear_space,
    saturate_by_variable,
    saturate_irrelevant,
    _invert,
)
from .hilbert import hilbert_series, sectional_genus_by_slicing
from .polyring import Field, Poly, PolynomialRing, elim, format_poly
from .varieties import SectionRingProfile, Variety, random_point

log = logging.getLogger(__name__)

__all__ = [
    "CenterOnVariety",
    "HypothesisUnmet",
    "ProjectionResult",
    "SecantReport",
    "QuadricClass",
    "Check",
    "VerificationReport",
    "project",
    "secant_locus_incidence",
    "secant_locus_conductor",
    "classify_quadric",
    "singular_locus",
    "singular_along",
    "ruled_join_variety",
    "on_tangent_variety",
    "verify_projection_theorem",
    "center_on_secant",
    "center_general",
    "center_general_off_secant",
]


class CenterOnVariety(ValueError):
    """The projection center lies on the variety."""


class HypothesisUnmet(ValueError):
    """The conductor method was asked for on a variety without property N_2."""


# ---------------------------------------------------------------------------
# points and coordinates


def _point(X: Variety, q: Sequence) -> list:
    F = X.field
    if len(q) != X.ring.nvars:
        raise ValueError(f"center needs {X.ring.nvars} coordinates, got {len(q)}")
    pt = [F(c) for c in q]
    if not any(pt):
        raise ValueError("the zero vector is not a projective point")
    return pt


def _check_off(X: Variety, q: Sequence):
    if X.contains_point(q):
        raise CenterOnVariety("center lies on X; inner projections are not handled")


def centering_matrix(q: Sequence, field: Field) -> list[list]:
    """Invertible M with M e_r = q; its other columns are coordinate vectors."""
    n = len(q)
    k = max(i for i in range(n) if q[i])
    others = [i for i in range(n) if i != k]
    M = [[field(0) for _ in range(n)] for _ in range(n)]
    for j, i in enumerate(others):
        M[i][j] = field(1)
    for i in range(n):
        M[i][n - 1] = field(q[i])
    return M


class _Centered:
    """``I_X`` written in coordinates with the center at ``e_r``, with caches."""

    def __init__(self, X: Variety, q: Sequence):
        self.X = X
        self.q = _point(X, q)
        _check_off(X, self.q)
        F = X.field
        self.M = centering_matrix(self.q, F)
        self.Minv = _invert(self.M, F)
        self.I = apply_linear_change(X.ideal, self.M)
        self.R = X.ring
        n = self.R.nvars
        self.S = PolynomialRing(self.R.names[: n - 1], F)
        self._elim = None

    def elim_basis(self) -> list[Poly]:
        if self._elim is None:
            self._elim = groebner_basis(self.I, elim(1))
        return self._elim

    def projected_ideal(self) -> Ideal:
        n = self.R.nvars
        keep = [g for g in self.elim_basis() if all(e[n - 1] == 0 for e in g.terms)]
        return Ideal(self.S, [Poly(self.S, {e[:-1]: c for e, c in g.terms.items()}) for g in keep])

    def conductor(self) -> Ideal:
        """Unsaturated ``I_Lambda`` in ``S``."""
        n = self.R.nvars
        gens = []
        for g in self.elim_basis():
            dr = max(e[n - 1] for e in g.terms)
            if dr == 0:
                gens.append(Poly(self.S, {e[:-1]: c for e, c in g.terms.items()}))
            elif dr == 1:
                a = {e[:-1]: c for e, c in g.terms.items() if e[n - 1] == 1}
                gens.append(Poly(self.S, a))
        return Ideal(self.S, gens)

    def to_original(self, J: Ideal) -> Ideal:
        """Ideal in new coordinates -> ideal in the original coordinates."""
        return apply_linear_change(J, self.Minv)


# ---------------------------------------------------------------------------
# reports


@dataclass
class QuadricClass:
    is_quadric: bool
    m: int
    rank: int = 0
    smooth: bool = False
    kind: str = ""
    diagonal: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "is_quadric": self.is_quadric,
            "span_dim": self.m,
            "rank": self.rank,
            "smooth": self.smooth,
            "kind": self.kind,
        }


@dataclass
class SecantReport:
    ideal: Ideal
    s: int
    method: str
    center: list
    span_dim: int | None = None
    quadric: QuadricClass | None = None
    lam: Ideal | None = None
    lam_linear: bool | None = None
    length: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return self.s == -1

    def as_dict(self, emit_ideals: bool = False) -> dict:
        d = {
            "method": self.method,
            "s": self.s,
            "span_dim": self.span_dim,
            "degree": self.length,
            "quadric": self.quadric.as_dict() if self.quadric else None,
            "lambda_linear": self.lam_linear,
            "notes": list(self.notes),
        }
        if emit_ideals:
            d["ideal"] = [format_poly(g) for g in self.ideal.gens]
            if self.lam is not None:
                d["lambda"] = [format_poly(g) for g in self.lam.gens]
        return d


@dataclass
class ProjectionResult:
    center: list
    matrix: list
    variety: Variety
    source: Variety
    s: int | None
    birational: bool
    lam: Ideal | None = None

    @property
    def ideal(self) -> Ideal:
        return self.variety.ideal


def _span_dim(J: Ideal) -> int:
    r = J.ring.nvars - 1
    return r - len(degree_part(J, 1))


def _report(J: Ideal, method: str, q, lam=None, lam_linear=None) -> SecantReport:
    hd = hilbert_series(J)
    s = hd.dim
    rep = SecantReport(J, s, method, [c for c in q], lam=lam, lam_linear=lam_linear)
    if s >= 0:
        rep.span_dim = _span_dim(J)
        rep.length = hd.degree
        rep.quadric = classify_quadric(J)
    return rep


# ---------------------------------------------------------------------------
# projection


def _projected_profile(X: Variety, s: int) -> SectionRingProfile | None:
    if X.profile is None:
        return None
    P = X.profile

    def h0(j, P=P, s=s):
        if s < 0:
            return P(j)
        return P(j) - (comb(s + j - 1, s) if j >= 1 else 0)

    return SectionRingProfile(h0, False, f"h0_X(j) - C({s}+j-1, {s})")


def project(X: Variety, q: Sequence, s: int | None = None) -> ProjectionResult:
    """Image of ``X`` under the projection from ``q``."""
    C = _Centered(X, q)
    return _project(C, s)


def _project(C: _Centered, s: int | None) -> ProjectionResult:
    X = C.X
    J0 = C.projected_ideal()
    J = saturate_irrelevant(J0)
    if len(groebner_basis(J)) != len(groebner_basis(J0)) or not J.equals(J0):
        log.warning("projected ideal was not saturated after elimination")
    if s is None:
        s = secant_locus_incidence(X, C.q).s
    deg_X = hilbert_series(X.ideal).degree
    deg_q = hilbert_series(J).degree
    Y = Variety(f"{X.name}|proj", C.S, J, None, _projected_profile(X, s),
                {"projected_from": X.name})
    return ProjectionResult(list(C.q), C.M, Y, X, s, deg_q == deg_X)


# ---------------------------------------------------------------------------
# secant loci


def _divided_difference(f: Poly, q: Sequence, T: PolynomialRing) -> Poly:
    """``(f(x + t q) - f(x)) / t`` in ``T = K[x, t]``."""
    n = f.ring.nvars
    t = T.var(n)
    images = [T.var(i) + t.scale(q[i]) if q[i] else T.var(i) for i in range(n)]
    shifted = f.substitute(images, T)
    base = f.embed(T, list(range(n)))
    diff = shifted - base
    out = {}
    for e, c in diff.terms.items():
        assert e[n] >= 1
        out[e[:n] + (e[n] - 1,)] = c
    return Poly(T, out)


def secant_locus_incidence(X: Variety, q: Sequence) -> SecantReport:
    """Secant locus from the incidence of ``x`` and ``x + t q`` on ``X``."""
    q = _point(X, q)
    _check_off(X, q)
    R = X.ring
    n = R.nvars
    tname = "t"
    while tname in R.names:
        tname += "_"
    T = PolynomialRing(list(R.names) + [tname], R.field)
    gens = [g.embed(T, list(range(n))) for g in X.ideal.gens]
    gens += [_divided_difference(g, q, T) for g in X.ideal.gens]
    E = eliminate(Ideal(T, gens), 1)
    J = saturate_irrelevant(Ideal(R, [g.change_ring(R) for g in E.gens]))
    return _report(J, "incidence", q)


def secant_locus_conductor(X: Variety, q: Sequence, force: bool = False) -> SecantReport:
    """Secant locus as ``X`` intersected with the span of ``q`` and ``Lambda``."""
    if not (force or X.claims_n2):
        raise HypothesisUnmet(f"{X.name} is not registered with property N_2")
    C = _Centered(X, q)
    return _conductor(C)


def _conductor(C: _Centered) -> SecantReport:
    lam = saturate_irrelevant(C.conductor())
    G = groebner_basis(lam)
    R = C.R
    if any(g.is_constant() for g in G):
        return _report(Ideal(R, [R.one], saturated=True), "conductor", C.q, lam=lam, lam_linear=True)
    linear = all(g.degree() == 1 for g in G)
    rep_notes = []
    if not linear:
        rep_notes.append("Lambda is not a linear space")
    n = R.nvars
    lin = [g.embed(R, list(range(n - 1))) for g in G if g.degree() == 1]
    Jy = saturate_irrelevant(Ideal(R, list(C.I.gens) + lin))
    J = saturate_irrelevant(C.to_original(Jy))
    rep = _report(J, "conductor", C.q, lam=lam, lam_linear=linear)
    rep.notes += rep_notes
    return rep


# ---------------------------------------------------------------------------
# quadrics


def _symmetric_matrix(Q: Poly) -> list[list]:
    F = Q.ring.field
    n = Q.ring.nvars
    half = F.inv(F(2))
    A = [[F(0)] * n for _ in range(n)]
    for e, c in Q.terms.items():
        idx = [i for i, x in enumerate(e) for _ in range(x)]
        i, j = idx
        if i == j:
            A[i][i] = c
        else:
            v = c * half
            if F.p:
                v %= F.p
            A[i][j] = v
            A[j][i] = v
    return A


def diagonalize_symmetric(A: list[list], F: Field) -> list:
    """Diagonal entries of a congruent diagonal form (char != 2)."""
    p = F.p
    n = len(A)
    A = [list(row) for row in A]

    def red(x):
        return x % p if p else x

    diag = []
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if A[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j]), None)
            if off is None:
                diag += [F(0)] * (n - k)
                break
            i, j = off
            # x_i -> x_i + x_j makes the (i, i) entry 2 A[i][j] != 0
            for c in range(n):
                A[i][c] = red(A[i][c] + A[j][c])
            for rr in range(n):
                A[rr][i] = red(A[rr][i] + A[rr][j])
            piv = i
        # move pivot to position k
        A[k], A[piv] = A[piv], A[k]
        for row in A:
            row[k], row[piv] = row[piv], row[k]
        d = A[k][k]
        inv = F.inv(d)
        for i in range(k + 1, n):
            if A[i][k]:
                f = red(A[i][k] * inv)
                for c in range(k, n):
                    A[i][c] = red(A[i][c] - f * A[k][c])
                for rr in range(k, n):
                    A[rr][i] = red(A[rr][i] - f * A[rr][k])
        diag.append(d)
        k += 1
    return diag


_KINDS = {
    (1, 2): "two distinct points",
    (1, 1): "double point",
    (2, 3): "smooth conic",
    (2, 2): "pair of lines",
    (2, 1): "double line",
    (3, 4): "smooth quadric surface",
    (3, 3): "quadric cone",
    (3, 2): "pair of planes",
    (3, 1): "double plane",
}


def classify_quadric(sigma: Ideal) -> QuadricClass:
    """Decide whether ``sigma`` is a quadric hypersurface in its linear span."""
    hd = hilbert_series(sigma)
    if hd.dim < 0:
        raise ValueError("empty scheme")
    ring = sigma.ring
    r = ring.nvars - 1
    lin = degree_part(sigma, 1)
    m = r - len(lin)
    if lin:
        sub, J, _, _ = restrict_to_linear_space(sigma, lin)
    else:
        sub, J = ring, sigma
    G = [g for g in groebner_basis(J) if g]
    if not G:
        return QuadricClass(False, m, kind="linear space")
    if len(G) != 1 or G[0].degree() != 2:
        degs = sorted(g.degree() for g in G)
        return QuadricClass(False, m, kind=f"not-a-quadric (residual degrees {degs})")
    Q = G[0]
    A = _symmetric_matrix(Q)
    diag = diagonalize_symmetric(A, sub.field)
    rank = sum(1 for d in diag if d)
    kind = _KINDS.get((m, rank))
    if kind is None:
        kind = f"smooth quadric of dimension {m - 1}" if rank == m + 1 else f"quadric of rank {rank}"
    return QuadricClass(True, m, rank, rank == m + 1, kind, diag)


# ---------------------------------------------------------------------------
# singular locus, joins


def _det(M: list[list[Poly]], ring: PolynomialRing) -> Poly:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    out = ring.zero
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, ring)
        out = out + term if j % 2 == 0 else out - term
    return out


def jacobian_minors(I: Ideal, c: int, gens: Sequence[Poly] | None = None) -> list[Poly]:
    ring = I.ring
    gens = list(gens if gens is not None else I.gens)
    n = ring.nvars
    J = [[g.diff(k) for k in range(n)] for g in gens]
    out = []
    for rows in itertools.combinations(range(len(gens)), c):
        for cols in itertools.combinations(range(n), c):
            d = _det([[J[i][k] for k in cols] for i in rows], ring)
            if d:
                out.append(d)
    return out


def singular_locus(I: Ideal, saturate: bool = True) -> Ideal:
    """``I`` plus the codim-size Jacobian minors (saturated by default)."""
    hd = hilbert_series(I)
    c = I.ring.nvars - 1 - hd.dim
    gens = groebner_basis(I) if len(I.gens) > 12 else list(I.gens)
    J = Ideal(I.ring, list(I.gens) + jacobian_minors(I, c, gens))
    return saturate_irrelevant(J) if saturate else J


def contained_in(sub_ideal: Ideal, gens: Sequence[Poly]) -> bool:
    """All ``gens`` lie in ``sub_ideal`` (set containment V(sub) in V(gens) for radical sub)."""
    return all(not normal_form(g, sub_ideal) for g in gens)


def singular_along(I: Ideal, lam: Ideal) -> bool:
    """Exact test that every point of the linear space V(lam) is singular on V(I).

    Restricted to the span, each codim-size Jacobian minor is a form of
    degree at most ``D = c * (max generator degree - 1)`` in the linear
    parameters of the span.  Such a form vanishes identically once it
    vanishes on a grid with ``D + 1`` values per parameter, so it suffices
    to see the numeric Jacobian rank drop below ``c`` at every grid point.
    """
    ring = I.ring
    F = ring.field
    n = ring.nvars
    c = n - 1 - hilbert_series(I).dim
    G = groebner_basis(lam)
    if any(g.degree() != 1 for g in G):
        raise ValueError("expected a linear space")
    rows = [{e.index(1): v for e, v in g.terms.items()} for g in G]
    # columns of the constraint matrix -> parametrization of the span
    cols = [{i: row[k] for i, row in enumerate(rows) if k in row} for k in range(n)]
    basis = linalg.nullspace(cols, len(rows), F.p)
    if not basis:
        return True
    gens = list(I.gens)
    D = c * max(1, max(g.degree() for g in gens) - 1)
    jac = [[g.diff(k) for k in range(n)] for g in gens]
    for u in itertools.product(range(D + 1), repeat=len(basis)):
        if not any(u):
            continue
        pt = [F(0)] * n
        for ui, v in zip(u, basis):
            if ui:
                for k, x in v.items():
                    pt[k] = pt[k] + F(ui) * x
        if F.p:
            pt = [x % F.p for x in pt]
        mat = []
        for row in jac:
            vals = {k: d.evaluate(pt) for k, d in enumerate(row) if d}
            vals = {k: v for k, v in vals.items() if v}
            if vals:
                mat.append(vals)
        if linalg.rank(mat, F.p) >= c:
            return False
    return True


def ruled_join_variety(X: Variety, kind: str = "secant") -> Ideal:
    """Ideal of the secant variety or the tangent variety of ``X``."""
    R = X.ring
    n = R.nvars
    F = R.field
    zx = PolynomialRing([f"z{i}" for i in range(n)] + [f"w{i}" for i in range(n)], F)
    z = [zx.var(i) for i in range(n)]
    w = [zx.var(n + i) for i in range(n)]
    gens_w = [g.substitute(w, zx) for g in X.ideal.gens]
    if kind == "secant":
        diff = [zi - wi for zi, wi in zip(z, w)]
        gens = gens_w + [g.substitute(diff, zx) for g in X.ideal.gens]
        E = eliminate(Ideal(zx, gens), n)
    elif kind == "tangent":
        tang = []
        for g in X.ideal.gens:
            t = zx.zero
            for k in range(n):
                dk = g.diff(k)
                if dk:
                    t = t + dk.substitute(w, zx) * z[k]
            if t:
                tang.append(t)
        J = Ideal(zx, gens_w + tang)
        # remove the cone vertex w = 0 by saturating with a generic w-coordinate
        k = _best_coordinate(X)
        Js, _, _ = saturate_by_variable(J, n + k)
        E = eliminate(Js, n)
    else:
        raise ValueError("kind must be 'secant' or 'tangent'")
    out = Ideal(R, [Poly(R, {e[:n]: c for e, c in g.terms.items()}) for g in E.gens])
    return saturate_irrelevant(out) if out.gens else Ideal(R, [], saturated=True)


def _best_coordinate(X: Variety) -> int:
    """A coordinate not vanishing identically on X (any nondegenerate X has all)."""
    for k in range(X.ring.nvars):
        if normal_form(X.ring.var(k), X.ideal):
            return k
    raise ValueError("degenerate variety")


def on_tangent_variety(X: Variety, q: Sequence) -> bool:
    """Direct test: some point x of X has q in its embedded tangent space."""
    q = _point(X, q)
    R = X.ring
    n = R.nvars
    tang = []
    for g in X.ideal.gens:
        t = R.zero
        for k in range(n):
            dk = g.diff(k)
            if dk and q[k]:
                t = t + dk.scale(q[k])
        if t:
            tang.append(t)
    J = saturate_irrelevant(Ideal(R, list(X.ideal.gens) + tang))
    return hilbert_series(J).dim >= 0


# ---------------------------------------------------------------------------
# centers


def center_general(X: Variety, rng: random.Random, bound: int = 20) -> list:
    """Small-integer random point off ``X``."""
    F = X.field
    while True:
        q = [F(rng.randint(-bound, bound)) for _ in range(X.ring.nvars)]
        if any(q) and not X.contains_point(q):
            return q


def center_on_secant(X: Variety, rng: random.Random) -> tuple[list, list, list]:
    """``lambda P1 + mu P2`` for random points of ``X``; returns (q, P1, P2)."""
    F = X.field
    while True:
        P1 = random_point(X, F, rng)
        P2 = random_point(X, F, rng)
        lam = F(rng.choice([1, 2, 3, -1, -2]))
        mu = F(rng.choice([1, 2, 3, -1, -3]))
        q = [lam * a + mu * b for a, b in zip(P1, P2)]
        if F.p:
            q = [c % F.p for c in q]
        if any(q) and not X.contains_point(q):
            return q, P1, P2


def center_general_off_secant(X: Variety, rng: random.Random, attempts: int = 20) -> list:
    for _ in range(attempts):
        q = center_general(X, rng)
        if secant_locus_incidence(X, q).s == -1:
            return q
    raise RuntimeError("every sampled center lay on the secant variety")


# ---------------------------------------------------------------------------
# verification


def _jsonable(v: Any):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    try:
        return int(v)
    except (TypeError, ValueError):
        return str(v)


@dataclass
class Check:
    name: str
    predicted: Any
    computed: Any
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        d = {"name": self.name, "predicted": _jsonable(self.predicted),
             "computed": _jsonable(self.computed), "pass": bool(self.passed)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerificationReport:
    suite: str
    variety: str
    field: str
    center: list
    checks: list[Check] = field(default_factory=list)
    verdict: str = "pass"
    data: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)

    def add(self, name, predicted, computed, passed=None, note=""):
        if passed is None:
            passed = predicted == computed
        self.checks.append(Check(name, predicted, computed, bool(passed), note))
        return passed

    def finalize(self, hypothesis_ok: bool = True) -> "VerificationReport":
        if self.verdict == "inconsistent":
            return self
        if not hypothesis_ok:
            self.verdict = "hypothesis-unmet"
        else:
            self.verdict = "pass" if all(c.passed for c in self.checks) else "fail"
        return self

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self, emit_ideals: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "variety": self.variety,
            "field": self.field,
            "center": [_jsonable(c) for c in self.center],
            "verdict": self.verdict,
            "checks": [c.as_dict() for c in self.checks],
            "data": _jsonable(self.data),
        }
        if emit_ideals:
            d["ideals"] = self.ideals
        return d

    def summary(self) -> str:
        lines = [f"{self.suite} on {self.variety} over {self.field}: {self.verdict.upper()}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}: predicted {c.predicted}, computed {c.computed}"
                         + (f" ({c.note})" if c.note else ""))
        return "\n".join(lines)


def _h0_I2(I: Ideal) -> int:
    r = I.ring.nvars - 1
    return comb(r + 2, 2) - hilbert_series(I).function(2)


def verify_projection_theorem(X: Variety, q: Sequence, seed: int = 0,
                              suite: str = "thm3.3") -> VerificationReport:
    """Compute ``s``, the projection and its invariants; compare with the predictions."""
    rng = random.Random(seed)
    C = _Centered(X, q)
    q = C.q
    rep = VerificationReport(suite, X.name, str(X.field), list(q))
    r = X.r
    hx = hilbert_series(X.ideal)
    n = hx.dim
    TX = graded_betti(X.ideal, seed=seed)
    PX = table_predicates(TX, r, n, projectively_normal=True)
    hyp = PX.satisfies_np(2)
    pn = X.profile is not None and all(X.h0(j) == hx.function(j) for j in range(7))
    rep.data["X"] = {"betti": TX.as_dict(), "predicates": PX.as_dict(), "degree": hx.degree,
                     "dim": n, "projectively_normal": pn}

    inc = secant_locus_incidence(X, q)
    con = _conductor(C)
    agree = inc.ideal.equals(con.ideal)
    rep.add("secant loci agree (incidence vs conductor)", True, agree)
    if not agree:
        same_hp = hilbert_series(inc.ideal).hilbert_poly == hilbert_series(con.ideal).hilbert_poly
        rep.verdict = "inconsistent"
        rep.data["mismatch"] = "scheme-structure mismatch" if same_hp else "different loci"
    s = inc.s
    rep.data["s"] = s
    rep.data["secant"] = inc.as_dict()
    rep.ideals["secant_incidence"] = [format_poly(g) for g in inc.ideal.gens]
    rep.ideals["secant_conductor"] = [format_poly(g) for g in con.ideal.gens]

    P = _project(C, s)
    Y = P.variety
    IY = Y.ideal
    hy = hilbert_series(IY)
    TY = graded_betti(IY, seed=seed)
    PY = table_predicates(TY, r - 1, hy.dim, projectively_normal=False)
    rep.data["X_q"] = {"betti": TY.as_dict(), "predicates": PY.as_dict(), "degree": hy.degree,
                       "dim": hy.dim, "generators": len(IY.gens)}
    rep.ideals["projection"] = [format_poly(g) for g in IY.gens]

    # quadric in <q, Lambda>, birationality, Lambda in Sing(X_q)
    if s >= 0:
        qc = inc.quadric
        rep.add("secant locus is a quadric hypersurface in its span",
                {"quadric": True, "s": qc.m - 1}, {"quadric": qc.is_quadric, "s": s},
                note=qc.kind)
        lam = con.lam
        lam_dim = hilbert_series(lam).dim
        rep.add("dim Lambda = s", s, lam_dim)
        rep.add("Lambda contained in Sing(X_q)", True, singular_along(IY, lam))
    rep.add("pi_q birational (deg X_q = deg X)", hx.degree, hy.degree)

    # linear normality: torsion of E / S_{X_q} in degree 1 is nonzero iff Lambda is empty
    lam_empty = any(g.is_constant() for g in groebner_basis(con.lam))
    h0_1 = r + (1 if lam_empty else 0) if pn else None
    rep.add("X_q linearly normal iff secant locus nonempty", s >= 0,
            None if h0_1 is None else h0_1 == r,
            note="h0(O_Xq(1)) = %s" % h0_1)
    if X.profile is not None and h0_1 is not None:
        dX = n + hx.degree - X.h0(1)
        dY = hy.dim + hy.degree - h0_1
        rep.add("Delta-genus increment", dX + (1 if s >= 0 else 0), dY,
                note=f"Delta(X) = {dX}")
    # sectional genus
    gX = 1 - hx.hilbert_poly.chi[n - 1] if n >= 1 else 0
    gY = 1 - hy.hilbert_poly.chi[hy.dim - 1] if hy.dim >= 1 else 0
    if hy.dim >= 2:
        g_slice = sectional_genus_by_slicing(IY, rng)
        rep.add("sectional genus of X_q by slicing agrees with Hilbert polynomial", gY, g_slice)
    rep.add("sectional genus increment", gX + (1 if s == n - 1 else 0), gY, note=f"g(X) = {gX}")
    # j-normality and quadric count
    if Y.profile is not None:
        pred = [Y.profile(j) for j in range(2, 6)]
        comp = [hy.function(j) for j in range(2, 6)]
        rep.add("j-normal for j = 2..5 (h0 profile = Hilbert function)", pred, comp)
    rep.add("h0(I_Xq(2)) = h0(I_X(2)) + s - r", _h0_I2(X.ideal) + s - r, _h0_I2(IY))
    # N_{3,p-1} and generation in degrees <= 3
    p = PX.np_max
    p_use = p if p is not None else max(r, 2)
    ok4 = p_use < 2 or PY.satisfies_ndp(3, p_use - 1)
    rep.add(f"N_(3,p-1) with p = {'inf' if p is None else p}", True, ok4)
    rep.add("generated by quadrics and cubics", True, PY.generated_in_degree_at_most <= 3,
            note=f"max generator degree {PY.generated_in_degree_at_most}")
    rep.add("Reg(X_q) = max(3, Reg X)", max(3, PX.regularity), PY.regularity)
    rep.add("depth(X_q) = min(depth X, s+2)", min(PX.depth, s + 2), PY.depth)
    return rep.finalize(hypothesis_ok=hyp)
