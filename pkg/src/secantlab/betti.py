"""Graded Betti numbers of R/I from Koszul homology.

Two reductions keep the linear algebra small:

* linear forms that are nonzerodivisors on R/I are cut away one at a time;
  each cut is certified by equality of Hilbert numerators and leaves all
  Betti numbers unchanged;
* the rows that can be nonzero are bounded in advance by the regularity of
  R/I, read off Hilbert series along a filter-regular sequence of linear
  forms (each colon module must have finite length, which is again a
  Hilbert series statement).

The table is stored for R/I in the shifted convention
``F_i = sum_j R(-i-j)^beta[i, j]`` with ``beta[0, 0] = 1``.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from . import linalg
from .groebner import Ideal, groebner_basis
from .hilbert import hilbert_series
from .polyring import PolynomialRing, grevlex, monomials_of_degree

log = logging.getLogger(__name__)

__all__ = [
    "BettiTable",
    "ResolutionPredicates",
    "graded_betti",
    "table_predicates",
    "regularity_bound",
    "IncompleteTable",
]


class IncompleteTable(ValueError):
    """Predicates were requested from a table without a completeness certificate."""


@dataclass
class BettiTable:
    """Graded Betti numbers of R/I, ``entries[(i, j)] = beta_{i,i+j}``."""

    nvars: int
    entries: dict[tuple[int, int], int]
    j_max: int
    complete: bool
    cuts: int = 0
    numerator: tuple[int, ...] = ()

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    @property
    def pd(self) -> int:
        return max((i for (i, j), v in self.entries.items() if v), default=0)

    @property
    def regularity(self) -> int:
        """Regularity of the ideal (= reg(R/I) + 1); 1 for the zero ideal."""
        js = [j for (i, j), v in self.entries.items() if v and i >= 1]
        return max(js) + 1 if js else 1

    def euler_characteristic(self, d: int) -> int:
        """``sum_i (-1)^i beta_{i,d}`` in the unshifted internal degree ``d``."""
        return sum((-1) ** i * v for (i, j), v in self.entries.items() if i + j == d)

    def check_euler(self) -> bool:
        """Alternating sums reproduce the Hilbert numerator coefficients."""
        if not self.numerator:
            return True
        top = max(len(self.numerator) - 1, max((i + j for (i, j) in self.entries), default=0))
        for d in range(top + 1):
            c = self.numerator[d] if d < len(self.numerator) else 0
            if self.euler_characteristic(d) != c:
                return False
        return True

    def format(self) -> str:
        """Macaulay-style grid: rows j, columns i."""
        nz = self.nonzero()
        maxi = max((i for i, _ in nz), default=0)
        maxj = max((j for _, j in nz), default=0)
        width = max(3, max((len(str(v)) for v in nz.values()), default=1) + 1)
        cols = range(maxi + 1)
        head = "      " + "".join(f"{i:>{width}}" for i in cols)
        tot = "total:" + "".join(
            f"{sum(v for (a, _), v in nz.items() if a == i):>{width}}" for i in cols
        )
        lines = [head, tot]
        for j in range(maxj + 1):
            row = f"{j:>5}:"
            for i in cols:
                v = nz.get((i, j), 0)
                row += f"{(str(v) if v else '.'):>{width}}"
            lines.append(row)
        if not self.complete:
            lines.append(f"(rows above {self.j_max} not computed)")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "convention": "R/I, shifted: F_i = sum_j R(-i-j)^beta[i][j]",
            "entries": {f"{i},{j}": v for (i, j), v in self.nonzero().items()},
            "j_max": self.j_max,
            "complete": self.complete,
        }


@dataclass
class ResolutionPredicates:
    regularity: int
    pd: int
    depth: int
    codim: int
    is_acm: bool
    np_max: int | None  # None: property N_p for every p
    ndp_max: dict[int, int | None] = field(default_factory=dict)
    generated_in_degree_at_most: int = 0

    def satisfies_np(self, p: int) -> bool:
        return self.np_max is None or p <= self.np_max

    def satisfies_ndp(self, d: int, p: int) -> bool:
        m = self.ndp_max.get(d)
        if d not in self.ndp_max:
            raise KeyError(f"N_(d,p) not tabulated for d = {d}")
        return m is None or p <= m

    def as_dict(self) -> dict:
        return {
            "regularity": self.regularity,
            "pd": self.pd,
            "depth": self.depth,
            "codim": self.codim,
            "acm": self.is_acm,
            "np_max": "inf" if self.np_max is None else self.np_max,
            "ndp_max": {str(d): ("inf" if v is None else v) for d, v in self.ndp_max.items()},
            "generated_in_degree_at_most": self.generated_in_degree_at_most,
        }


def _max_p(entries, j_from: int) -> int | None:
    """Largest p with beta_{i,j} = 0 for 1 <= i <= p and j >= j_from."""
    bad = sorted(i for (i, j), v in entries.items() if v and i >= 1 and j >= j_from)
    if not bad:
        return None
    return bad[0] - 1


def table_predicates(T: BettiTable, r: int, n: int, projectively_normal: bool = True,
                     d_values: Sequence[int] = (2, 3, 4)) -> ResolutionPredicates:
    """Regularity, pd, depth and the N_p / N_{d,p} predicates of a complete table."""
    if not T.complete:
        raise IncompleteTable("table has no completeness certificate")
    if T.nvars != r + 1:
        raise ValueError(f"table over {T.nvars} variables, ambient P^{r}")
    pd = T.pd
    depth = r + 1 - pd
    codim = r - n
    ent = T.entries
    np_max = _max_p(ent, 2) if projectively_normal else 0
    ndp = {d: _max_p(ent, d) for d in d_values}
    gens = [j + 1 for (i, j), v in ent.items() if v and i == 1]
    return ResolutionPredicates(
        regularity=T.regularity,
        pd=pd,
        depth=depth,
        codim=codim,
        is_acm=(pd == codim),
        np_max=np_max,
        ndp_max=ndp,
        generated_in_degree_at_most=max(gens, default=0),
    )


# ---------------------------------------------------------------------------
# cutting by linear forms


def _substitute_last(I: Ideal, k: int, coeffs: Sequence[int]) -> Ideal:
    """Restrict to the hyperplane ``x_k = sum_j coeffs[j] x_j`` (j != k)."""
    ring = I.ring
    n = ring.nvars
    names = [nm for i, nm in enumerate(ring.names) if i != k]
    sub = PolynomialRing(names, ring.field)
    images = []
    others = [i for i in range(n) if i != k]
    pos = {i: j for j, i in enumerate(others)}
    for i in range(n):
        if i == k:
            images.append(sub.linear_form([coeffs[j] for j in range(n - 1)]))
        else:
            images.append(sub.var(pos[i]))
    return Ideal(sub, [g.substitute(images, sub) for g in I.gens])


def _candidate_cuts(n: int, rng: random.Random, randoms: int):
    for k in range(n - 1, -1, -1):
        yield k, [0] * (n - 1)
    for _ in range(randoms):
        yield n - 1, [rng.randint(-20, 20) for _ in range(n - 1)]


def cut_regular(I: Ideal, rng: random.Random, randoms: int = 3, keep: int = 1):
    """Cut by certified nonzerodivisors while possible.

    Returns ``(J, cuts)``; ``J`` has the same graded Betti numbers as ``I``.
    At least ``keep`` variables are kept.
    """
    cur = I
    hd = hilbert_series(cur)
    cuts = 0
    while cur.ring.nvars > keep and hd.krull_dim > 0:
        n = cur.ring.nvars
        found = None
        for k, c in _candidate_cuts(n, rng, randoms):
            J = _substitute_last(cur, k, c)
            hj = hilbert_series(J)
            if hj.numerator == hd.numerator:
                found = J
                break
        if found is None:
            break
        cur = found
        cuts += 1
    return cur, cuts


def regularity_bound(I: Ideal, rng: random.Random, attempts: int = 8) -> int:
    """Castelnuovo-Mumford regularity of R/I from a filter-regular sequence.

    Each step checks that the colon module of the new form has finite
    length (its Hilbert series is a polynomial); the regularity is the
    largest top degree of those colon modules and of the final Artinian
    quotient.  Raises RuntimeError if no filter-regular form is found.
    """
    cur = I
    hd = hilbert_series(cur)
    ends = []
    while hd.krull_dim > 0:
        n = cur.ring.nvars
        ok = False
        for t in range(attempts):
            if t == 0:
                k, c = n - 1, [0] * (n - 1)
            else:
                k, c = n - 1, [rng.randint(-20, 20) for _ in range(n - 1)]
            J = _substitute_last(cur, k, c)
            hj = hilbert_series(J)
            diff = _sub(hj.numerator, hd.numerator)
            colon = _divide_by_one_minus_t_power(diff, n - 1)
            if colon is None:
                continue
            # colon * t = diff / (1-t)^(n-1)
            if any(colon):
                assert colon[0] == 0
                ends.append(len(colon) - 2)
            cur, hd, ok = J, hj, True
            break
        if not ok:
            raise RuntimeError("no filter-regular linear form found")
    # Artinian: series is the numerator divided by (1-t)^nvars, a polynomial
    art = _divide_by_one_minus_t_power(list(hd.numerator), cur.ring.nvars)
    if art is None:
        raise AssertionError("Artinian quotient with non-polynomial series")
    ends.append(len(art) - 1 if any(art) else -1)
    return max(ends)


def _sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _divide_by_one_minus_t_power(a, k):
    """``a / (1-t)^k`` when that is a polynomial, else None."""
    a = list(a)
    for _ in range(k):
        if sum(a) != 0:
            return None
        out = []
        acc = 0
        for x in a[:-1]:
            acc += x
            out.append(acc)
        a = out or [0]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


# ---------------------------------------------------------------------------
# Koszul homology


class _Quotient:
    """Graded pieces of S/J with multiplication by variables."""

    def __init__(self, J: Ideal):
        self.J = J
        self.ring = J.ring
        self.G = groebner_basis(J, grevlex)
        self.lms = [g.lm(grevlex) for g in self.G]
        self._basis: dict[int, list[tuple]] = {}
        self._index: dict[int, dict[tuple, int]] = {}
        self._mult: dict[tuple, dict[int, object]] = {}

    def basis(self, e: int) -> list[tuple]:
        if e not in self._basis:
            if e < 0:
                mons = []
            else:
                mons = [m for m in monomials_of_degree(self.ring.nvars, e)
                        if not any(all(a <= b for a, b in zip(l, m)) for l in self.lms)]
            self._basis[e] = mons
            self._index[e] = {m: i for i, m in enumerate(mons)}
        return self._basis[e]

    def mult(self, k: int, u: tuple) -> dict[int, object]:
        """Coordinates of ``x_k * u`` in the standard basis of degree deg(u)+1."""
        key = (k, u)
        v = self._mult.get(key)
        if v is None:
            m = list(u)
            m[k] += 1
            m = tuple(m)
            e = sum(m)
            self.basis(e)
            idx = self._index[e]
            if m in idx:
                v = {idx[m]: self.ring.field(1)}
            else:
                nf = self.J.normal_form(self.ring.monomial(m))
                v = {idx[t]: c for t, c in nf.terms.items()}
            self._mult[key] = v
        return v


def _koszul_rank(Q: _Quotient, i: int, d: int) -> int:
    """Rank of the Koszul differential from wedge^i (x) A_{d-i} to wedge^{i-1} (x) A_{d-i+1}."""
    m = Q.ring.nvars
    if i < 1 or i > m or d - i < 0:
        return 0
    src = Q.basis(d - i)
    tgt = Q.basis(d - i + 1)
    if not src or not tgt:
        return 0
    ntgt = len(tgt)
    subsets_lo = {S: t for t, S in enumerate(itertools.combinations(range(m), i - 1))}
    p = Q.ring.field.p
    rows = []
    for S in itertools.combinations(range(m), i):
        for u in src:
            row: dict = {}
            for pos, k in enumerate(S):
                sign = -1 if pos % 2 else 1
                rest = S[:pos] + S[pos + 1:]
                base = subsets_lo[rest] * ntgt
                for col, c in Q.mult(k, u).items():
                    key = base + col
                    val = row.get(key, 0) + (c if sign == 1 else -c)
                    if p:
                        val %= p
                    if val:
                        row[key] = val
                    else:
                        row.pop(key, None)
            if row:
                rows.append(row)
    return linalg.rank(rows, p)


def graded_betti(I: Ideal, j_max: int | None = None, seed: int = 0,
                 cut: bool = True) -> BettiTable:
    """Graded Betti table of R/I.

    With ``j_max=None`` the window is the regularity of R/I and the table
    is complete.  A smaller ``j_max`` gives a partial table unless the
    regularity bound shows it suffices.
    """
    if j_max is not None and j_max < 1:
        raise ValueError("j_max must be >= 1")
    if not I.is_homogeneous:
        raise ValueError("Betti numbers need a homogeneous ideal")
    if not I.saturated:
        log.debug("graded_betti on an ideal not flagged as saturated")
    rng = random.Random(seed)
    hd = hilbert_series(I)
    numerator = hd.numerator
    J, cuts = cut_regular(I, rng) if cut else (I, 0)
    reg = regularity_bound(J, random.Random(seed + 1))
    window = reg if j_max is None else min(j_max, reg)
    complete = window >= reg
    Q = _Quotient(J)
    m = J.ring.nvars
    ranks: dict[tuple[int, int], int] = {}

    def rk(i, d):
        if (i, d) not in ranks:
            ranks[(i, d)] = _koszul_rank(Q, i, d)
        return ranks[(i, d)]

    entries: dict[tuple[int, int], int] = {}
    for j in range(window + 1):
        for i in range(m + 1):
            d = i + j
            dimC = comb(m, i) * len(Q.basis(j))
            b = dimC - rk(i, d) - rk(i + 1, d)
            if b:
                entries[(i, j)] = b
    return BettiTable(
        nvars=I.ring.nvars,
        entries=entries,
        j_max=window,
        complete=complete,
        cuts=cuts,
        numerator=tuple(numerator),
    )
