"""Sparse exact Gaussian elimination over QQ (mpq) or GF(p) (int).

Vectors are dicts ``{index: nonzero value}``.  ``p == 0`` selects the
rationals.  Rows are fed sparsest-first, which is a cheap stand-in for
Markowitz pivoting and keeps fill-in low on Koszul matrices.
"""

from __future__ import annotations

import heapq
from typing import Iterable

from gmpy2 import mpq


def _inv(c, p):
    return pow(int(c), -1, p) if p else 1 / c


class Echelon:
    """Incrementally built row echelon form; pivot rows are monic."""

    def __init__(self, p: int = 0):
        self.p = p
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        """Reduce ``v`` against the pivots; returns a new dict."""
        p = self.p
        rows = self.rows
        v = dict(v)
        heap = list(v)
        heapq.heapify(heap)
        out = {}
        while heap:
            c = heapq.heappop(heap)
            a = v.pop(c, None)
            if a is None:
                continue
            row = rows.get(c)
            if row is None:
                out[c] = a
                continue
            for k, b in row.items():
                if k == c:
                    continue
                old = v.get(k)
                if old is None:
                    val = (-a * b) % p if p else -a * b
                    if val:
                        v[k] = val
                        heapq.heappush(heap, k)
                else:
                    val = (old - a * b) % p if p else old - a * b
                    if val:
                        v[k] = val
                    else:
                        del v[k]
        return out

    def add(self, v: dict) -> dict | None:
        """Insert ``v``; return the new pivot row or ``None`` if dependent."""
        w = self.reduce(v)
        if not w:
            return None
        c = min(w)
        inv = _inv(w[c], self.p)
        p = self.p
        if p:
            w = {k: x * inv % p for k, x in w.items()}
        else:
            w = {k: x * inv for k, x in w.items()}
        self.rows[c] = w
        return w


def rank(rows: Iterable[dict], p: int = 0) -> int:
    ech = Echelon(p)
    for r in sorted((r for r in rows if r), key=len):
        ech.add(r)
    return ech.rank


def nullspace(columns: list[dict], nrows: int, p: int = 0) -> list[dict]:
    """Basis of ``{c : sum_j c_j * columns[j] = 0}`` as sparse dicts over ``j``."""
    ech = Echelon(p)
    kernel = []
    one = 1 if p else mpq(1)
    for j, col in enumerate(columns):
        v = dict(col)
        v[nrows + j] = one
        w = ech.reduce(v)
        if w and min(w) >= nrows:
            kernel.append({k - nrows: x for k, x in w.items()})
        elif w:
            ech.add(w)
    return kernel


def row_space(rows: Iterable[dict], p: int = 0) -> list[dict]:
    """Fully reduced echelon basis of the span of ``rows``."""
    ech = Echelon(p)
    for r in rows:
        if r:
            ech.add(r)
    # back substitution
    out = {}
    for c in sorted(ech.rows, reverse=True):
        row = ech.rows[c]
        red = Echelon(p)
        red.rows = {k: v for k, v in out.items()}
        tail = {k: x for k, x in row.items() if k != c}
        tail = red.reduce(tail)
        tail[c] = row[c]
        out[c] = tail
    return [out[c] for c in sorted(out)]
