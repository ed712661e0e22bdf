"""Hilbert series, Hilbert functions and polynomials, degree and genera.

Everything is read off the leading-term ideal of a grevlex basis.  The
numerator of the Hilbert series is computed with the usual pivot
recursion ``N(M) = N(M + (m)) + t^deg(m) * N(M : m)``.

The Hilbert polynomial is stored in the basis ``C(k+i-1, i)``,
``i = 0..n``, so that the top coefficient is the degree and
``1 - chi[n-1]`` is the sectional genus.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .polyring import grevlex

log = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# integer polynomials in t (coefficient lists, low degree first)


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a, k):
    return [0] * k + list(a)


def _div_one_minus_t(a) -> list[int] | None:
    """``a / (1 - t)`` if exact, else None."""
    if sum(a) != 0:
        return None
    out = []
    acc = 0
    for x in a[:-1]:
        acc += x
        out.append(acc)
    return _trim(out or [0])


def binom_poly(x, m: int):
    """Generalized binomial ``x(x-1)...(x-m+1)/m!`` for integer or rational ``x``."""
    if m < 0:
        return 0
    num = Fraction(1)
    for i in range(m):
        num *= x - i
    return num / Fraction(_fact(m))


def _fact(m):
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# monomial ideals


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _numerator(gens: list[tuple], n: int) -> list[int]:
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # base case: pairwise coprime supports
    used = [0] * n
    coprime = True
    for g in gens:
        for i, x in enumerate(g):
            if x:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            out = _pmul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return out
    # pivot: most frequent variable among non-pure-power generators
    counts = [0] * n
    for g in gens:
        if sum(1 for x in g if x) > 1:
            for i, x in enumerate(g):
                if x:
                    counts[i] += 1
    i = max(range(n), key=lambda k: (counts[k], -k))
    exps = sorted(g[i] for g in gens if g[i] and sum(1 for x in g if x) > 1)
    e = exps[len(exps) // 2]
    piv = tuple(e if k == i else 0 for k in range(n))
    plus = [g for g in gens if g[i] < e] + [piv]
    colon = [tuple(max(0, x - e) if k == i else x for k, x in enumerate(g)) for g in gens]
    return _padd(_numerator(plus, n), _shift(_numerator(colon, n), e))


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class HilbertPolynomial:
    """Hilbert polynomial ``sum_i chi[i] * C(k+i-1, i)``; ``dim == -1`` means zero."""

    dim: int
    chi: tuple[int, ...]

    def __call__(self, k: int) -> int:
        val = Fraction(0)
        for i, c in enumerate(self.chi):
            val += c * binom_poly(k + i - 1, i)
        assert val.denominator == 1
        return int(val)

    @property
    def degree(self) -> int:
        return self.chi[-1] if self.chi else 0


@dataclass(frozen=True)
class HilbertData:
    nvars: int
    numerator: tuple[int, ...]
    h_vector: tuple[int, ...]
    krull_dim: int
    degree: int
    hilbert_poly: HilbertPolynomial

    @property
    def dim(self) -> int:
        """Projective dimension (``-1`` for the empty scheme)."""
        return self.krull_dim - 1

    def function(self, j: int) -> int:
        """Coefficient of t^j in the series."""
        if j < 0:
            return 0
        n = self.nvars
        tot = 0
        for k, c in enumerate(self.numerator):
            if c and k <= j:
                tot += c * comb(j - k + n - 1, n - 1)
        return tot

    def regularity_index(self) -> int:
        """Smallest j0 with Hilbert function = polynomial for every j >= j0."""
        return max(0, len(self.h_vector) - self.krull_dim)

    @property
    def top_degree(self) -> int:
        """Degree of the last nonzero term of the numerator."""
        return len(self.numerator) - 1


def hilbert_from_leading(lms: Sequence[tuple], nvars: int) -> HilbertData:
    """Hilbert data of ``R / (lms)``."""
    num = _numerator(list(lms), nvars)
    h = list(num)
    d = nvars
    if h == [0]:
        return HilbertData(nvars, (0,), (0,), 0, 0, HilbertPolynomial(-1, ()))
    while d > 0:
        q = _div_one_minus_t(h)
        if q is None:
            break
        h = q
        d -= 1
    degree = sum(h)
    chi = _chi_from_h(h, d)
    return HilbertData(nvars, tuple(num), tuple(h), d, degree if d > 0 else degree,
                       HilbertPolynomial(d - 1, chi))


def _chi_from_h(h: Sequence[int], d: int) -> tuple[int, ...]:
    if d == 0:
        return ()
    n = d - 1

    def P(k):
        return sum(c * binom_poly(k - j + d - 1, d - 1) for j, c in enumerate(h))

    chi: list[Fraction] = []
    for m in range(n + 1):
        val = P(-m) - sum(chi[i] * binom_poly(-m + i - 1, i) for i in range(m))
        chi.append(val / binom_poly(-1, m))
    for c in chi:
        assert c.denominator == 1
    return tuple(int(c) for c in chi)


def hilbert_series(I) -> HilbertData:
    """Hilbert data of ``R/I`` from the grevlex leading terms."""
    from .groebner import groebner_basis

    if not I.is_homogeneous:
        raise ValueError("Hilbert series needs a homogeneous ideal")
    G = groebner_basis(I, grevlex)
    cached = I._gb.get(("_hilbert",))
    if cached is not None:
        return cached
    hd = hilbert_from_leading([g.lm(grevlex) for g in G], I.ring.nvars)
    I._gb[("_hilbert",)] = hd
    return hd


def hilbert_function(I, j: int) -> int:
    """``dim_K (R/I)_j``."""
    if j < 0:
        raise ValueError("degree must be >= 0")
    return hilbert_series(I).function(j)


# ---------------------------------------------------------------------------
# numerical invariants


@dataclass
class NumericalInvariants:
    dim: int
    degree: int
    h0_1: int | None
    delta: int | None
    sectional_genus: int
    sectional_genus_by_slicing: int | None = None
    chi: tuple[int, ...] = ()
    codim: int = 0
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "codim": self.codim,
            "h0_O1": self.h0_1,
            "delta_genus": self.delta,
            "sectional_genus": self.sectional_genus,
            "sectional_genus_by_slicing": self.sectional_genus_by_slicing,
            "chi": list(self.chi),
        }


class SliceError(RuntimeError):
    """Random linear sections kept failing to be proper curve sections."""


def sectional_genus_by_slicing(I, rng: random.Random, attempts: int = 5) -> int:
    """Arithmetic genus ``1 - P_C(0)`` of a random linear curve section."""
    from .groebner import Ideal, saturate_irrelevant

    hd = hilbert_series(I)
    n = hd.dim
    if n < 1:
        raise ValueError("sectional genus needs dim >= 1")
    ring = I.ring
    for _ in range(attempts):
        forms = [ring.linear_form([rng.randint(-20, 20) for _ in range(ring.nvars)])
                 for _ in range(n - 1)]
        if any(not f for f in forms):
            continue
        C = saturate_irrelevant(Ideal(ring, list(I.gens) + forms), rng=rng)
        hc = hilbert_series(C)
        if hc.dim == 1 and hc.degree == hd.degree:
            return 1 - hc.hilbert_poly(0)
    raise SliceError(f"no proper curve section after {attempts} attempts")


def numerical_invariants(X, rng: random.Random | None = None, slice_check: bool = True,
                         attempts: int = 5) -> NumericalInvariants:
    """Dimension, degree, Delta-genus and sectional genus of a variety.

    ``X`` needs ``.ideal`` and optionally ``.h0(j)`` (section-ring profile).
    The Delta-genus requires the profile; without one it is ``None``.
    """
    I = X.ideal
    hd = hilbert_series(I)
    n = hd.dim
    if n < 0:
        raise ValueError("empty scheme has no numerical invariants")
    r = I.ring.nvars - 1
    h0 = X.h0(1) if getattr(X, "profile", None) is not None else None
    delta = n + hd.degree - h0 if h0 is not None else None
    chi = hd.hilbert_poly.chi
    g = 1 - chi[n - 1] if n >= 1 else 0
    inv = NumericalInvariants(n, hd.degree, h0, delta, g, chi=chi, codim=r - n)
    if slice_check and n >= 1:
        g2 = sectional_genus_by_slicing(I, rng or random.Random(0), attempts=attempts)
        inv.sectional_genus_by_slicing = g2
        if g2 != g:
            inv.notes.append(f"sliced genus {g2} differs from 1 - chi_(n-1) = {g}")
    return inv
