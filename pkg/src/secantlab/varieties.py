"""Corpus varieties: Veronese, Segre, scrolls, G(1,4) sections, complete intersections.

Ideals are written down directly as determinantal or Pluecker relations with
a fixed generator order; :func:`implicitize` recomputes them from the
parametrizations and is used as a cross-check.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Callable, Sequence

from .groebner import Ideal, eliminate, groebner_basis, saturate_irrelevant
from .hilbert import hilbert_series
from .polyring import (
    QQ,
    Field,
    Poly,
    PolynomialRing,
    monomials_of_degree,
    read_ideal_text,
)

log = logging.getLogger(__name__)

MAX_AMBIENT = 12
MAX_GEN_DEGREE = 4


class SizeCapExceeded(ValueError):
    """Requested construction is beyond the desk-scale caps."""


class DegenerateSection(RuntimeError):
    """Random linear sections failed the genericity check repeatedly."""


class NoParametrization(ValueError):
    pass


@dataclass(frozen=True)
class SectionRingProfile:
    """``j -> h^0(X, O_X(j))`` together with a projective-normality flag."""

    func: Callable[[int], int]
    projectively_normal: bool
    description: str = ""

    def __call__(self, j: int) -> int:
        if j < 0:
            return 0
        return self.func(j)

    def values(self, upto: int) -> list[int]:
        return [self(j) for j in range(upto + 1)]


@dataclass(frozen=True)
class Parametrization:
    """Multihomogeneous polynomial map from a product of projective spaces.

    ``blocks[i]`` is the number of variables of the i-th factor; the source
    ring has ``sum(blocks)`` variables in block order.
    """

    source: PolynomialRing
    blocks: tuple[int, ...]
    forms: tuple[Poly, ...]
    description: str = ""

    def __post_init__(self):
        degs = {f.degree() for f in self.forms}
        if len(degs) != 1:
            raise ValueError("parametrizing forms must share one degree")

    def random_source_point(self, rng: random.Random, field: Field) -> list:
        pt = []
        for b in self.blocks:
            while True:
                blk = [field.random_element(rng, 20) for _ in range(b)]
                if any(blk):
                    break
            pt.extend(blk)
        return pt

    def __call__(self, point: Sequence) -> list:
        return [f.evaluate(point) for f in self.forms]


@dataclass
class Variety:
    name: str
    ring: PolynomialRing
    ideal: Ideal
    parametrization: Parametrization | None = None
    profile: SectionRingProfile | None = None
    claims: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.ring.nvars - 1

    @property
    def field(self) -> Field:
        return self.ring.field

    def h0(self, j: int) -> int:
        if self.profile is None:
            raise ValueError(f"{self.name}: no section-ring profile")
        return self.profile(j)

    @property
    def claims_n2(self) -> bool:
        v = self.claims.get("N_p")
        return v is not None and (v == "all" or int(v) >= 2)

    def hilbert(self):
        return hilbert_series(self.ideal)

    def contains_point(self, q: Sequence) -> bool:
        return all(not g.evaluate(q) for g in self.ideal.gens)

    def change_field(self, field: Field) -> "Variety":
        R = self.ring.change_field(field)
        par = None
        if self.parametrization is not None:
            P = self.parametrization
            S = P.source.change_field(field)
            par = Parametrization(S, P.blocks, tuple(f.change_ring(S) for f in P.forms), P.description)
        I = Ideal(R, [g.change_ring(R) for g in self.ideal.gens], saturated=self.ideal.saturated)
        return Variety(self.name, R, I, par, self.profile, dict(self.claims))


def _check_caps(r: int, deg: int = 2):
    if r > MAX_AMBIENT:
        raise SizeCapExceeded(f"ambient P^{r} exceeds the cap P^{MAX_AMBIENT}")
    if deg > MAX_GEN_DEGREE:
        raise SizeCapExceeded(f"generator degree {deg} exceeds the cap {MAX_GEN_DEGREE}")


def _names(N: int) -> list[str]:
    return [f"x{i}" for i in range(N + 1)]


# ---------------------------------------------------------------------------
# constructors


def veronese(n: int, d: int, field: Field = QQ) -> Variety:
    """d-uple embedding of P^n, cut out by its binomial quadrics."""
    if n < 1 or d < 2:
        raise ValueError("veronese needs n >= 1 and d >= 2")
    mons = list(monomials_of_degree(n + 1, d))
    N = len(mons) - 1
    _check_caps(N)
    R = PolynomialRing(_names(N), field)
    by_sum: dict[tuple, list[tuple[int, int]]] = {}
    for i, a in enumerate(mons):
        for j in range(i, len(mons)):
            b = mons[j]
            s = tuple(x + y for x, y in zip(a, b))
            by_sum.setdefault(s, []).append((i, j))
    gens = []
    x = R.gens()
    for s in sorted(by_sum, reverse=True):
        pairs = by_sum[s]
        i0, j0 = pairs[0]
        for i, j in pairs[1:]:
            gens.append(x[i0] * x[j0] - x[i] * x[j])
    S = PolynomialRing([f"s{i}" for i in range(n + 1)], field)
    forms = tuple(S.monomial(m) for m in mons)
    par = Parametrization(S, (n + 1,), forms, f"degree-{d} monomials on P^{n}")
    prof = SectionRingProfile(lambda j: comb(n + d * j, n), True, f"C({n}+{d}j, {n})")
    claims = {"minimal_degree": (d == 2 and n == 2) or n == 1}
    # metadata only; rational normal curves satisfy N_p for all p
    if n == 1:
        claims["N_p"] = "all"
    elif d == 2:
        claims["N_p"] = 5
    else:
        claims["N_p"] = d
    I = Ideal(R, gens, saturated=True)
    return Variety(f"veronese:{n},{d}", R, I, par, prof, claims)


def segre(a: int, b: int, field: Field = QQ) -> Variety:
    """Segre embedding of P^a x P^b by 2x2 minors of the coordinate matrix."""
    if a < 1 or b < 1:
        raise ValueError("segre needs a, b >= 1")
    if b < 2:
        log.warning("segre(%d,%d) is below the standing hypothesis b >= 2", a, b)
    N = (a + 1) * (b + 1) - 1
    _check_caps(N)
    R = PolynomialRing(_names(N), field)
    x = R.gens()

    def v(i, j):
        return x[i * (b + 1) + j]

    gens = []
    for i, k in itertools.combinations(range(a + 1), 2):
        for j, l in itertools.combinations(range(b + 1), 2):
            gens.append(v(i, j) * v(k, l) - v(i, l) * v(k, j))
    S = PolynomialRing([f"s{i}" for i in range(a + 1)] + [f"u{j}" for j in range(b + 1)], field)
    s = S.gens()
    forms = tuple(s[i] * s[a + 1 + j] for i in range(a + 1) for j in range(b + 1))
    par = Parametrization(S, (a + 1, b + 1), forms, f"P^{a} x P^{b}")
    prof = SectionRingProfile(lambda j: comb(a + j, a) * comb(b + j, b), True,
                              f"C({a}+j,{a}) C({b}+j,{b})")
    claims = {"N_p": "all" if min(a, b) == 1 else 3, "minimal_degree": min(a, b) == 1}
    return Variety(f"segre:{a},{b}", R, Ideal(R, gens, saturated=True), par, prof, claims)


def scroll(*degrees: int, field: Field = QQ) -> Variety:
    """Rational normal scroll S(a1, ..., ak) via 2x2 minors of Hankel blocks."""
    degrees = tuple(int(a) for a in degrees)
    if not degrees or any(a < 1 for a in degrees) or sum(degrees) < 2:
        raise ValueError("scroll needs degrees a_i >= 1 with sum >= 2")
    N = sum(a + 1 for a in degrees) - 1
    _check_caps(N)
    R = PolynomialRing(_names(N), field)
    x = R.gens()
    top, bot = [], []
    off = 0
    for a in degrees:
        top += [x[off + l] for l in range(a)]
        bot += [x[off + l + 1] for l in range(a)]
        off += a + 1
    gens = []
    for i, j in itertools.combinations(range(len(top)), 2):
        gens.append(top[i] * bot[j] - top[j] * bot[i])
    k = len(degrees)
    S = PolynomialRing(["s", "t"] + [f"u{i}" for i in range(k)], field)
    g = S.gens()
    # u_i * s^(D-l) * t^l: equal degrees, same image closure as the bundle chart
    D = max(degrees)
    forms = []
    for i, a in enumerate(degrees):
        for l in range(a + 1):
            forms.append(g[0] ** (D - l) * g[1] ** l * g[2 + i])
    par = Parametrization(S, (2, k), tuple(forms), f"scroll{degrees}")

    def h0(j, degrees=degrees):
        tot = 0
        for m in monomials_of_degree(k, j):
            tot += sum(mi * ai for mi, ai in zip(m, degrees)) + 1
        return tot

    prof = SectionRingProfile(h0, True, "sum over degree-j monomials of (m.a + 1)")
    name = "scroll:" + "+".join(map(str, degrees))
    return Variety(name, R, Ideal(R, gens, saturated=True), par, prof,
                   {"N_p": "all", "minimal_degree": True})


def quadric_hypersurface(r: int, field: Field = QQ) -> Variety:
    """Smooth quadric ``x0*x1 + x2*x3 + ...`` (plus x_r^2 for odd count)."""
    if r < 2:
        raise ValueError("quadric hypersurface needs r >= 2")
    _check_caps(r)
    R = PolynomialRing(_names(r), field)
    x = R.gens()
    q = R.zero
    n = r + 1
    for i in range(0, n - 1, 2):
        q = q + x[i] * x[i + 1]
    if n % 2:
        q = q + x[n - 1] ** 2
    prof = SectionRingProfile(lambda j: comb(r + j, r) - comb(r + j - 2, r), True,
                              "C(r+j,r) - C(r+j-2,r)")
    return Variety(f"quadric:{r}", R, Ideal(R, [q], saturated=True), None, prof,
                   {"N_p": "all", "minimal_degree": True})


def _pluecker(field: Field) -> tuple[PolynomialRing, list[Poly], list[tuple[int, int]]]:
    pairs = list(itertools.combinations(range(5), 2))
    R = PolynomialRing([f"p{i}{j}" for i, j in pairs], field)
    idx = {pr: k for k, pr in enumerate(pairs)}
    x = R.gens()

    def p(i, j):
        return x[idx[(i, j)]]

    gens = []
    for i, j, k, l in itertools.combinations(range(5), 4):
        gens.append(p(i, j) * p(k, l) - p(i, k) * p(j, l) + p(i, l) * p(j, k))
    return R, gens, pairs


def grassmann_g14_section(cut: int, field: Field = QQ, seed: int = 0,
                          attempts: int = 5) -> Variety:
    """G(1,4) in P^9 cut by ``cut`` random hyperplanes, in coordinates of P^(9-cut)."""
    if not 0 <= cut <= 3:
        raise ValueError("cut must be between 0 and 3")
    R0, gens, pairs = _pluecker(field)
    rng = random.Random(seed)
    N = 9 - cut
    R = PolynomialRing(_names(N), field)
    h = (1, 3, 1)
    k = 6 - cut

    def prof_fn(j, k=k):
        return sum(hi * comb(j - i + k, k) for i, hi in enumerate(h) if j - i >= 0)

    prof = SectionRingProfile(prof_fn, True, "h-vector (1,3,1)")
    claims = {"N_p": 2, "minimal_degree": False, "del_pezzo": True}
    par = None
    if cut == 0:
        S = PolynomialRing([f"a{i}" for i in range(5)] + [f"b{i}" for i in range(5)], field)
        s = S.gens()
        forms = tuple(s[i] * s[5 + j] - s[j] * s[5 + i] for i, j in pairs)
        par = Parametrization(S, (10,), forms, "2x2 minors of a 2x5 matrix")
    for _ in range(attempts):
        # hyperplane i expresses the coordinate N+1+i through the first N+1
        images = [R.var(i) for i in range(N + 1)]
        for _c in range(cut):
            images.append(R.linear_form([rng.randint(-20, 20) for _ in range(N + 1)]))
        I = Ideal(R, [g.substitute(images, R) for g in gens], saturated=True)
        hd = hilbert_series(I)
        if (hd.dim, hd.degree) == (k, 5):
            name = "g14:" + str(cut)
            return Variety(name, R, I, par, prof, claims)
    raise DegenerateSection(f"no proper section after {attempts} attempts")


def complete_intersection(forms: Sequence[Poly], name: str = "ci") -> Variety:
    """Variety cut out by homogeneous forms forming a regular sequence."""
    if not forms:
        raise ValueError("need at least one form")
    R = forms[0].ring
    for f in forms:
        if not f.is_homogeneous() or f.degree() < 1:
            raise ValueError("forms must be homogeneous of positive degree")
        _check_caps(R.nvars - 1, f.degree())
    I = Ideal(R, list(forms), saturated=True)
    hd = hilbert_series(I)
    r = R.nvars - 1
    if hd.dim != r - len(forms):
        raise ValueError(f"not a complete intersection: dim {hd.dim} != {r - len(forms)}")
    degs = [f.degree() for f in forms]
    # Koszul: Hilbert series prod(1 - t^d) / (1-t)^(r+1)
    num = [1]
    for d in degs:
        nxt = [0] * (len(num) + d)
        for i, c in enumerate(num):
            nxt[i] += c
            nxt[i + d] -= c
        num = nxt

    def h0(j, num=tuple(num), n=r + 1):
        return sum(c * comb(j - i + n - 1, n - 1) for i, c in enumerate(num) if j >= i)

    quad = all(d == 2 for d in degs)
    claims = {"N_p": (1 if quad and len(degs) > 1 else "all" if quad else 0),
              "minimal_degree": len(degs) == 1 and degs[0] == 2}
    prof = SectionRingProfile(h0, r - len(forms) >= 1, "Koszul: prod(1 - t^d)")
    return Variety(name, R, I, None, prof, claims)


def generic_complete_intersection(degrees: Sequence[int], r: int, field: Field = QQ,
                                  seed: int = 0) -> Variety:
    """Complete intersection of random forms with small integer coefficients."""
    rng = random.Random(seed)
    R = PolynomialRing(_names(r), field)
    for _ in range(5):
        forms = []
        for d in degrees:
            terms = {m: rng.randint(-9, 9) for m in monomials_of_degree(r + 1, d)}
            forms.append(R.poly(terms))
        try:
            return complete_intersection(forms, name="ci:" + ",".join(map(str, degrees)))
        except ValueError:
            continue
    raise DegenerateSection("random forms failed to be a complete intersection")


# ---------------------------------------------------------------------------
# implicitization and sampling


def implicitize(P: Parametrization, target: PolynomialRing) -> Ideal:
    """Kernel of ``y_i -> P.forms[i]`` by elimination from the graph ideal."""
    S = P.source
    if len(P.forms) != target.nvars:
        raise ValueError("need one form per target variable")
    if target.field != S.field:
        raise ValueError("field mismatch")
    nt, ns = target.nvars, S.nvars
    G = PolynomialRing(list(target.names) + [f"_s{i}" for i in range(ns)], S.field)
    ys = [G.var(i) for i in range(nt)]
    pos = list(range(nt, nt + ns))
    graph = [y - f.embed(G, pos) for y, f in zip(ys, P.forms)]
    E = eliminate(Ideal(G, graph), ns)
    out = Ideal(target, [g.change_ring(target) for g in E.gens], saturated=True)
    if any(g.degree() == 1 for g in groebner_basis(out)):
        log.warning("implicitized ideal is degenerate (contains linear forms)")
    return out


def random_point(X: Variety, field: Field | None = None, rng: random.Random | int = 0) -> list:
    """Image of a random source point under the parametrization of ``X``."""
    if X.parametrization is None:
        raise NoParametrization(f"{X.name} has no parametrization")
    if isinstance(rng, int):
        rng = random.Random(rng)
    field = field or X.field
    P = X.parametrization
    if field != P.source.field:
        S = P.source.change_field(field)
        P = Parametrization(S, P.blocks, tuple(f.change_ring(S) for f in P.forms))
    while True:
        pt = P(P.random_source_point(rng, field))
        if any(pt):
            return pt


# ---------------------------------------------------------------------------
# registry


def from_ideal_file(path: str | Path, name: str | None = None) -> Variety:
    ring, polys = read_ideal_text(Path(path).read_text())
    I = Ideal(ring, polys)
    if not I.is_homogeneous:
        raise ValueError(f"{path}: ideal is not homogeneous")
    J = saturate_irrelevant(I)
    return Variety(name or f"file:{path}", ring, J, None, None, {})


def parse_variety(spec: str, field: Field = QQ, seed: int = 0) -> Variety:
    """Build a variety from a registry name such as ``veronese:2,2``."""
    if ":" not in spec:
        raise ValueError(f"bad variety spec {spec!r}")
    kind, arg = spec.split(":", 1)
    kind = kind.strip().lower()
    try:
        if kind == "veronese":
            n, d = (int(t) for t in arg.split(","))
            return veronese(n, d, field)
        if kind == "segre":
            a, b = (int(t) for t in arg.split(","))
            return segre(a, b, field)
        if kind == "scroll":
            return scroll(*(int(t) for t in arg.split("+")), field=field)
        if kind == "g14":
            return grassmann_g14_section(int(arg), field, seed=seed)
        if kind == "quadric":
            return quadric_hypersurface(int(arg), field)
        if kind == "ci":
            if Path(arg).exists():
                ring, polys = read_ideal_text(Path(arg).read_text())
                if ring.field != field:
                    ring = ring.change_field(field)
                    polys = [p.change_ring(ring) for p in polys]
                return complete_intersection(polys, name=f"ci:{arg}")
            # ci:d1,d2[@r] with random forms
            degs, _, rr = arg.partition("@")
            ds = [int(t) for t in degs.split(",")]
            r = int(rr) if rr else len(ds) + 1
            return generic_complete_intersection(ds, r, field, seed=seed)
        if kind == "file":
            V = from_ideal_file(arg)
            if V.ring.field != field:
                V = V.change_field(field)
            return V
    except (ValueError, TypeError) as exc:
        if isinstance(exc, (SizeCapExceeded, DegenerateSection)):
            raise
        raise ValueError(f"bad variety spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown variety kind {kind!r}")
