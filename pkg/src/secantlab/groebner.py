"""Buchberger's algorithm and the classical ideal operations built on it.

The engine works on raw ``{exponent: coeff}`` dicts with monic basis
elements.  Pairs are pruned with the Gebauer-Moeller installation of both
Buchberger criteria and chosen by the normal strategy (smallest lcm degree,
then smallest lcm in the active order), so homogeneous input is processed
degree by degree and runs can be truncated at a degree bound.
"""

from __future__ import annotations

import heapq
import logging
import random
from typing import Iterable, Sequence

from . import linalg
from .polyring import (
    Field,
    MonomialOrder,
    Poly,
    PolynomialRing,
    elim,
    grevlex,
)

log = logging.getLogger(__name__)

__all__ = [
    "BudgetExceeded",
    "Ideal",
    "groebner_basis",
    "normal_form",
    "eliminate",
    "ideal_quotient",
    "saturate",
    "saturate_irrelevant",
    "intersect",
    "apply_linear_change",
    "divide_exact",
]


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its pair budget."""

    def __init__(self, msg: str, degree: int = -1, pairs: int = 0):
        super().__init__(msg)
        self.degree = degree
        self.pairs = pairs


DEFAULT_PAIR_BUDGET = 2_000_000

# ---------------------------------------------------------------------------
# raw kernel


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Elt:
    __slots__ = ("lm", "poly", "tail", "deg")

    def __init__(self, lm, poly):
        self.lm = lm
        self.poly = poly
        self.tail = [(e, c) for e, c in poly.items() if e != lm]
        self.deg = sum(lm)


def _neg_key_fn(order: MonomialOrder):
    key = order.key
    cache: dict = {}

    def nk(m):
        v = cache.get(m)
        if v is None:
            v = tuple([-x for x in key(m)])
            cache[m] = v
        return v

    return nk


def _lead(f: dict, key):
    return max(f, key=key)


def _make_monic(f: dict, lm, p) -> dict:
    c = f[lm]
    if p:
        if c == 1:
            return f
        inv = pow(int(c), -1, p)
        return {e: v * inv % p for e, v in f.items()}
    if c == 1:
        return f
    inv = 1 / c
    return {e: v * inv for e, v in f.items()}


def _find_reducer(m, G):
    for g in G:
        if _divides(g.lm, m):
            return g
    return None


def _reduce(f: dict, G: Sequence[_Elt], nk, p, full: bool = True) -> dict:
    """Remainder of ``f`` on division by monic ``G`` (fully reduced if ``full``)."""
    if not f or not G:
        return dict(f)
    f = dict(f)
    heap = [(nk(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        g = _find_reducer(m, G)
        if g is None:
            rem[m] = c
            if not full:
                # keep the rest untouched
                for _, m2 in heap:
                    c2 = f.pop(m2, None)
                    if c2 is not None:
                        rem[m2] = c2
                break
            continue
        q = tuple([x - y for x, y in zip(m, g.lm)])
        for e, gc in g.tail:
            nm = tuple([x + y for x, y in zip(e, q)])
            old = f.get(nm)
            if old is None:
                v = (-c * gc) % p if p else -c * gc
                if v:
                    f[nm] = v
                    heapq.heappush(heap, (nk(nm), nm))
            else:
                v = (old - c * gc) % p if p else old - c * gc
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return rem


def _spoly(a: _Elt, b: _Elt, p) -> dict:
    L = _lcm(a.lm, b.lm)
    qa = tuple([x - y for x, y in zip(L, a.lm)])
    qb = tuple([x - y for x, y in zip(L, b.lm)])
    out = {}
    for e, c in a.tail:
        out[tuple([x + y for x, y in zip(e, qa)])] = c
    for e, c in b.tail:
        nm = tuple([x + y for x, y in zip(e, qb)])
        old = out.get(nm)
        if old is None:
            out[nm] = (-c) % p if p else -c
        else:
            v = (old - c) % p if p else old - c
            if v:
                out[nm] = v
            else:
                del out[nm]
    return out


def _canonical_sort(polys: list[dict], key) -> list[dict]:
    """Deterministic processing order: by leading monomial, then term count."""
    return sorted(polys, key=lambda f: (key(_lead(f, key)), len(f), sorted(f)))


def buchberger(
    F: Iterable[dict],
    order: MonomialOrder,
    p: int,
    degree_bound: int | None = None,
    pair_budget: int | None = None,
) -> list[dict]:
    """Reduced Groebner basis (monic dicts) of the ideal spanned by ``F``."""
    key = order.key
    nk = _neg_key_fn(order)
    budget = pair_budget or DEFAULT_PAIR_BUDGET
    F = [dict(f) for f in F if f]
    if not F:
        return []
    F = _canonical_sort(F, key)

    elts: list[_Elt] = []
    active: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}
    heap: list = []
    processed = 0

    def reducers():
        return [elts[i] for i in active]

    def add(h: dict):
        lm = _lead(h, key)
        h = _make_monic(h, lm, p)
        e = _Elt(lm, h)
        hi = len(elts)
        elts.append(e)
        # Gebauer-Moeller update
        C = list(active)
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            L1 = _lcm(lm, elts[g1].lm)
            if _coprime(lm, elts[g1].lm):
                D.append(g1)
                continue
            dominated = False
            for g2 in C:
                if _divides(_lcm(lm, elts[g2].lm), L1):
                    dominated = True
                    break
            if not dominated:
                for g2 in D:
                    if _divides(_lcm(lm, elts[g2].lm), L1):
                        dominated = True
                        break
            if not dominated:
                D.append(g1)
        E = [g for g in D if not _coprime(lm, elts[g].lm)]
        for (i, j), L in list(pairs.items()):
            if (
                _divides(lm, L)
                and _lcm(elts[i].lm, lm) != L
                and _lcm(elts[j].lm, lm) != L
            ):
                del pairs[(i, j)]
        for g in E:
            L = _lcm(elts[g].lm, lm)
            if degree_bound is not None and sum(L) > degree_bound:
                continue
            pr = (g, hi)
            pairs[pr] = L
            heapq.heappush(heap, (sum(L), key(L), g, hi))
        active[:] = [g for g in active if not _divides(lm, elts[g].lm)]
        active.append(hi)

    # seed: insert inputs one at a time after reducing against earlier ones
    for f in F:
        h = _reduce(f, reducers(), nk, p)
        if h:
            add(h)
            if sum(elts[-1].lm) == 0:
                return [{elts[-1].lm: 1}]

    while heap:
        d, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        del pairs[(i, j)]
        processed += 1
        if processed > budget:
            raise BudgetExceeded(
                f"Groebner pair budget {budget} exceeded at degree {d} "
                f"({len(active)} basis elements, {len(pairs)} pairs pending)",
                degree=d,
                pairs=processed,
            )
        s = _spoly(elts[i], elts[j], p)
        h = _reduce(s, reducers(), nk, p)
        if h:
            add(h)
            if sum(elts[-1].lm) == 0:
                return [{elts[-1].lm: 1}]

    # minimal then reduced basis
    G = [elts[i] for i in active]
    G.sort(key=lambda g: key(g.lm))
    out = []
    for idx, g in enumerate(G):
        others = G[:idx] + G[idx + 1 :]
        red = _reduce(g.poly, others, nk, p)
        out.append(_make_monic(red, g.lm, p))
    return out


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal of a polynomial ring with cached Groebner bases per order."""

    def __init__(self, ring: PolynomialRing, gens: Iterable[Poly] = (), saturated: bool = False):
        self.ring = ring
        seen = set()
        gl = []
        for g in gens:
            if not isinstance(g, Poly):
                g = ring(g)
            if g.ring != ring:
                raise ValueError(f"generator in {g.ring}, ideal in {ring}")
            if g and g not in seen:
                seen.add(g)
                gl.append(g)
        self.gens: tuple[Poly, ...] = tuple(gl)
        self.saturated = saturated
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))}) in {self.ring}"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def groebner_basis(self, order: MonomialOrder = grevlex, degree_bound: int | None = None,
                       pair_budget: int | None = None) -> list[Poly]:
        return groebner_basis(self, order, degree_bound=degree_bound, pair_budget=pair_budget)

    def normal_form(self, f: Poly, order: MonomialOrder = grevlex) -> Poly:
        return normal_form(f, self, order)

    def contains(self, f: Poly) -> bool:
        return not normal_form(f, self)

    __contains__ = contains

    def is_subset_of(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        """Ideal equality by mutual membership."""
        if self.ring != other.ring:
            return False
        return self.is_subset_of(other) and other.is_subset_of(self)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return any(g.is_constant() for g in gb)

    def is_zero(self) -> bool:
        return not self.gens

    def __add__(self, other: "Ideal | Iterable[Poly]") -> "Ideal":
        extra = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.gens + tuple(extra))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def change_field(self, field: Field) -> "Ideal":
        R = self.ring.change_field(field)
        return Ideal(R, [g.change_ring(R) for g in self.gens], saturated=self.saturated)

    def degree_part(self, d: int) -> list[Poly]:
        """Basis (echelon, grevlex) of the degree-d component, for homogeneous ideals."""
        return degree_part(self, d)

    def linear_forms(self) -> list[Poly]:
        return degree_part(self, 1)

    def minimal_generators(self) -> list[Poly]:
        return minimal_generators(self)

    def gb_cached(self, order: MonomialOrder = grevlex) -> bool:
        return (order, None) in self._gb


def groebner_basis(I: Ideal, order: MonomialOrder = grevlex, degree_bound: int | None = None,
                   pair_budget: int | None = None) -> list[Poly]:
    """Reduced Groebner basis of ``I``; cached on ``I`` per (order, bound)."""
    ck = (order, degree_bound)
    if ck in I._gb:
        return I._gb[ck]
    if degree_bound is not None and (order, None) in I._gb:
        full = I._gb[(order, None)]
        out = [g for g in full if g.degree() <= degree_bound]
        I._gb[ck] = out
        return out
    ring = I.ring
    raw = buchberger(
        [g.terms for g in I.gens],
        order,
        ring.field.p,
        degree_bound=degree_bound,
        pair_budget=pair_budget,
    )
    one = ring.field(1)
    G = []
    for f in raw:
        if len(f) == 1 and not any(next(iter(f))):
            G = [ring.const(1)]
            break
        G.append(Poly(ring, {e: (one if c == 1 else c) for e, c in f.items()}))
    G.sort(key=lambda g: order.key(g.lm(order)), reverse=True)
    I._gb[ck] = G
    return G


def _elts(G: Sequence[Poly], order: MonomialOrder) -> list[_Elt]:
    return [_Elt(g.lm(order), g.terms) for g in G]


def normal_form(f: Poly, I: Ideal, order: MonomialOrder = grevlex) -> Poly:
    """Remainder of ``f`` modulo the reduced Groebner basis of ``I``."""
    if f.ring != I.ring:
        raise ValueError("ring mismatch")
    G = groebner_basis(I, order)
    cache_key = ("_elts", order)
    E = I._gb.get(cache_key)
    if E is None:
        E = _elts(G, order)
        I._gb[cache_key] = E
    red = _reduce(f.terms, E, _neg_key_fn(order), I.ring.field.p)
    return Poly(I.ring, red)


def reduce_by(f: Poly, G: Sequence[Poly], order: MonomialOrder = grevlex) -> Poly:
    """Multivariate division remainder of ``f`` by the polynomials ``G`` (monic copies)."""
    Gm = [g.monic(order) for g in G if g]
    red = _reduce(f.terms, _elts(Gm, order), _neg_key_fn(order), f.ring.field.p)
    return Poly(f.ring, red)


def degree_part(I: Ideal, d: int) -> list[Poly]:
    """Vector space basis of I_d for a homogeneous ideal, from its grevlex basis."""
    ring = I.ring
    G = groebner_basis(I, grevlex, degree_bound=d if I.is_homogeneous else None)
    rows = []
    from .polyring import monomials_of_degree

    for g in G:
        gd = g.degree()
        if gd > d or not g.is_homogeneous():
            continue
        for m in monomials_of_degree(ring.nvars, d - gd):
            rows.append(g.mul_term(m, ring.field(1)))
    mons = sorted({e for r in rows for e in r.terms}, key=grevlex.key, reverse=True)
    idx = {m: i for i, m in enumerate(mons)}
    basis = linalg.row_space([{idx[e]: c for e, c in r.terms.items()} for r in rows], ring.field.p)
    return [Poly(ring, {mons[i]: c for i, c in v.items()}) for v in basis]


def minimal_generators(I: Ideal) -> list[Poly]:
    """Minimal homogeneous generators (degree by degree) of a homogeneous ideal."""
    ring = I.ring
    gens = sorted(I.gens, key=lambda g: g.degree())
    chosen: list[Poly] = []
    for g in gens:
        if chosen and not normal_form(g, Ideal(ring, chosen)):
            continue
        chosen.append(g)
    # second pass: drop generators implied by the others
    out = list(chosen)
    changed = True
    while changed:
        changed = False
        for g in sorted(out, key=lambda g: -g.degree()):
            rest = [h for h in out if h is not g]
            if rest and not normal_form(g, Ideal(ring, rest)):
                out = rest
                changed = True
                break
    return out


# ---------------------------------------------------------------------------
# operations


def eliminate(I: Ideal, last_k: int) -> Ideal:
    """``I`` intersected with the subring of the first n-k variables."""
    ring = I.ring
    n = ring.nvars
    if last_k < 0 or last_k >= n:
        raise ValueError(f"cannot eliminate {last_k} of {n} variables")
    if last_k == 0:
        return I
    G = groebner_basis(I, elim(last_k))
    sub = PolynomialRing(ring.names[: n - last_k], ring.field)
    keep = []
    for g in G:
        if all(not any(e[n - last_k :]) for e in g.terms):
            keep.append(Poly(sub, {e[: n - last_k]: c for e, c in g.terms.items()}))
    return Ideal(sub, keep)


def _with_extra_var(ring: PolynomialRing, name: str = "_t") -> PolynomialRing:
    nm = name
    while nm in ring.names:
        nm += "_"
    return PolynomialRing(ring.names + (nm,), ring.field)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` intersect ``J`` via ``(t*I + (1-t)*J)`` eliminated along ``t``."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    R = _with_extra_var(ring)
    n = ring.nvars
    pos = list(range(n))
    t = R.var(n)
    gens = [t * g.embed(R, pos) for g in I.gens]
    gens += [(R.one - t) * g.embed(R, pos) for g in J.gens]
    out = eliminate(Ideal(R, gens), 1)
    return Ideal(ring, [g.change_ring(ring) for g in out.gens])


def divide_exact(f: Poly, g: Poly, order: MonomialOrder = grevlex) -> Poly:
    """Quotient ``f / g``; raises if ``g`` does not divide ``f``."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    p = ring.field.p
    glm = g.lm(order)
    ginv = ring.field.inv(g.terms[glm])
    rem = dict(f.terms)
    q = {}
    key = order.key
    while rem:
        m = max(rem, key=key)
        if not _divides(glm, m):
            raise ValueError("not an exact division")
        c = rem[m] * ginv
        if p:
            c %= p
        qe = tuple(x - y for x, y in zip(m, glm))
        q[qe] = c
        for e, gc in g.terms.items():
            nm = tuple(x + y for x, y in zip(e, qe))
            v = rem.get(nm, 0) - c * gc
            if p:
                v %= p
            if v:
                rem[nm] = v
            else:
                rem.pop(nm, None)
    return Poly(ring, q)


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J)``, generator by generator of ``J`` through intersections."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    ring = I.ring
    if J.is_zero() or J.is_unit():
        return Ideal(ring, [ring.one]) if J.is_zero() else I
    result = None
    for f in J.gens:
        if not normal_form(f, I):
            continue  # I : f = (1)
        inter = intersect(I, Ideal(ring, [f]))
        quo = Ideal(ring, [divide_exact(h, f) for h in inter.gens])
        result = quo if result is None else intersect(result, quo)
    if result is None:
        return Ideal(ring, [ring.one])
    return result


def saturate(I: Ideal, J: Ideal | None = None) -> Ideal:
    """``(I : J^inf)``; ``J`` defaults to the irrelevant ideal.

    For an explicit ``J`` the quotient is iterated until it stops growing.
    The irrelevant-ideal case uses :func:`saturate_irrelevant`.
    """
    if J is None:
        return saturate_irrelevant(I)
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    cur = I
    while True:
        nxt = ideal_quotient(cur, J)
        if nxt.is_subset_of(cur):
            return Ideal(I.ring, groebner_basis(cur), saturated=False)
        cur = Ideal(I.ring, groebner_basis(nxt))


def saturate_by_variable(I: Ideal, i: int) -> Ideal:
    """``(I : x_i^inf)`` for homogeneous ``I`` via the grevlex divide-out trick."""
    ring = I.ring
    n = ring.nvars
    perm = [k for k in range(n) if k != i] + [i]
    inv = [0] * n
    for j, k in enumerate(perm):
        inv[k] = j
    Ip = Ideal(ring, [g.permute(perm) for g in I.gens])
    G = groebner_basis(Ip, grevlex)
    out = []
    for g in G:
        k = min(e[-1] for e in g.terms)
        if k:
            g = Poly(ring, {e[:-1] + (e[-1] - k,): c for e, c in g.terms.items()})
        out.append(g.permute(inv))
    return Ideal(ring, out), G, Ip


def restrict_to_linear_space(I: Ideal, linear: Sequence[Poly]):
    """Rewrite ``I`` on the linear subspace cut out by ``linear``.

    Returns ``(sub_ring, J, lift)`` where ``J`` lives in the coordinate ring of
    the subspace (the non-pivot variables) and ``lift`` maps polynomials of
    ``sub_ring`` back into ``I.ring``.
    """
    ring = I.ring
    n = ring.nvars
    p = ring.field.p
    rows = []
    for l in linear:
        if not l:
            continue
        if l.degree() != 1 or not l.is_homogeneous():
            raise ValueError("expected linear forms")
        rows.append({e.index(1): c for e, c in l.terms.items()})
    # reduced echelon form with pivots on the smallest indices
    basis = linalg.row_space(rows, p)
    pivots = [min(r) for r in basis]
    free = [k for k in range(n) if k not in pivots]
    if not free:
        raise ValueError("linear space is empty")
    sub = PolynomialRing([ring.names[k] for k in free], ring.field)
    # x_pivot = - sum_{free} c * x_free
    images = []
    fpos = {k: j for j, k in enumerate(free)}
    prow = dict(zip(pivots, basis))
    for k in range(n):
        if k in fpos:
            images.append(sub.var(fpos[k]))
        else:
            r = prow[k]
            images.append(
                sub.linear_form([-(r.get(f, 0)) for f in free])
            )
    J = Ideal(sub, [g.substitute(images, sub) for g in I.gens])
    lin_polys = [Poly(ring, {tuple(1 if t == k else 0 for t in range(n)): c for k, c in r.items()})
                 for r in basis]

    def lift(h: Poly) -> Poly:
        return h.embed(ring, free)

    return sub, J, lift, lin_polys


def _hilbert_polynomial_of(G: Sequence[Poly], ring: PolynomialRing):
    from .hilbert import hilbert_from_leading

    lms = [g.lm(grevlex) for g in G]
    return hilbert_from_leading(lms, ring.nvars).hilbert_poly


def saturate_irrelevant(I: Ideal, rng: random.Random | None = None, attempts: int = 6) -> Ideal:
    """``(I : m^inf)`` for homogeneous ``I``, with ``m`` the irrelevant ideal.

    Linear forms of ``I`` are first used to pass to a smaller ambient space.
    Then ``I : l^inf`` is computed for a coordinate (or random) linear form
    ``l``; the result equals the saturation exactly when ``J / I`` has
    finite length, which is certified by equal Hilbert polynomials.
    """
    ring = I.ring
    if not I.is_homogeneous:
        raise ValueError("saturation w.r.t. the irrelevant ideal needs a homogeneous ideal")
    if I.is_zero():
        return Ideal(ring, [], saturated=True)
    G = groebner_basis(I)
    if any(g.is_constant() for g in G):
        return Ideal(ring, [ring.one], saturated=True)
    lin = [g for g in G if g.degree() == 1]
    if lin:
        if len(lin) >= ring.nvars:
            return Ideal(ring, [ring.one], saturated=True)
        sub, J, lift, lin_polys = restrict_to_linear_space(I, lin)
        Js = saturate_irrelevant(J, rng=rng, attempts=attempts)
        if Js.is_unit():
            return Ideal(ring, [ring.one], saturated=True)
        out = Ideal(ring, list(lin_polys) + [lift(h) for h in Js.gens], saturated=True)
        return Ideal(ring, groebner_basis(out), saturated=True)
    hp = _hilbert_polynomial_of(G, ring)
    n = ring.nvars
    # coordinate forms first: most secant loci avoid some coordinate hyperplane
    for i in range(n - 1, -1, -1):
        J, Gp, _ = saturate_by_variable(I, i)
        if _hp_from_divided(Gp, ring) == hp:
            return Ideal(ring, groebner_basis(J), saturated=True)
    rng = rng or random.Random(0)
    for _ in range(attempts):
        coeffs = [rng.randint(-20, 20) for _ in range(n)]
        if coeffs[-1] == 0:
            coeffs[-1] = 1
        # change coordinates so that the random form becomes x_{n-1}
        M = _completion_matrix(coeffs, ring.field)
        Minv = _invert(M, ring.field)
        It = apply_linear_change(I, Minv)
        J, Gp, _ = saturate_by_variable(It, n - 1)
        if _hp_from_divided(Gp, ring) == hp:
            Jb = apply_linear_change(J, M)
            return Ideal(ring, groebner_basis(Jb), saturated=True)
    log.warning("falling back to iterated quotients for saturation")
    m = Ideal(ring, ring.gens())
    out = saturate(I, m)
    return Ideal(ring, out.gens, saturated=True)


def _hp_from_divided(Gp: Sequence[Poly], ring: PolynomialRing):
    """Hilbert polynomial of ``(I : x_last^inf)`` from a grevlex basis of ``I``."""
    from .hilbert import hilbert_from_leading

    lms = []
    for g in Gp:
        lm = g.lm(grevlex)
        lms.append(lm[:-1] + (0,))
    return hilbert_from_leading(lms, ring.nvars).hilbert_poly


def _completion_matrix(coeffs, field: Field):
    """Invertible matrix whose last row is ``coeffs`` (needs coeffs[-1] != 0)."""
    n = len(coeffs)
    M = [[field(1 if i == j else 0) for j in range(n)] for i in range(n)]
    M[n - 1] = [field(c) for c in coeffs]
    return M


def _invert(M, field: Field):
    n = len(M)
    p = field.p
    A = [list(row) + [field(1 if i == j else 0) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = field.inv(A[col][col])
        A[col] = [(x * inv) % p if p else x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [((x - f * y) % p if p else x - f * y) for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def matrix_rank(M, field: Field) -> int:
    rows = [{j: field(x) for j, x in enumerate(row) if field(x)} for row in M]
    return linalg.rank(rows, field.p)


def apply_linear_change(I: Ideal, matrix: Sequence[Sequence]) -> Ideal:
    """Substitute ``x -> M x`` in every generator (``M`` invertible)."""
    ring = I.ring
    n = ring.nvars
    F = ring.field
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"matrix must be {n}x{n}")
    M = [[F(x) for x in row] for row in matrix]
    if matrix_rank(M, F) != n:
        raise ValueError("singular coordinate change")
    images = [ring.linear_form(M[i]) for i in range(n)]
    return Ideal(ring, [g.substitute(images, ring) for g in I.gens], saturated=I.saturated)
