"""Empirical secant stratification surveys.

Centers are drawn with a per-trial generator seeded from
``(seed, sampler, index)``, so reports do not depend on evaluation order.
A survey can only show that the observed strata are among the expected
ones and that targeted samplers reach them; it proves nothing about the
strata as subsets of P^r.
"""

from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .groebner import Ideal
from .polyring import GF, Field, DEFAULT_PRIME
from .projsec import (
    CenterOnVariety,
    center_on_secant,
    on_tangent_variety,
    ruled_join_variety,
    secant_locus_conductor,
    secant_locus_incidence,
)
from .varieties import Variety

log = logging.getLogger(__name__)

CHAR_CAVEAT = (
    "computed over a prime field; the stratification statements assume "
    "characteristic zero, so these counts are evidence, not a proof"
)


def expected_strata(X: Variety) -> list[int] | None:
    """Registered strata (excluding the X bucket) for corpus families."""
    kind, _, arg = X.name.partition(":")
    try:
        if kind == "veronese":
            n, d = (int(t) for t in arg.split(","))
            if n == 1:
                return [0] if d == 2 else [-1, 0]
            return [-1, 1] if d == 2 else [-1, 0]
        if kind == "segre":
            return [-1, 2]
    except ValueError:
        return None
    return None


def _secant_target(expected: Sequence[int] | None) -> int | None:
    if not expected:
        return None
    pos = [s for s in expected if s >= 0]
    return max(pos) if pos else None


def stratum_of(X: Variety, q: Sequence, cross_check: bool = False) -> tuple[int, str, bool]:
    """Stratum index ``s`` of ``q``; returns ``(s, method, consistent)``."""
    if X.contains_point(q):
        raise CenterOnVariety("center lies on X")
    if X.claims_n2:
        rep = secant_locus_conductor(X, q)
        method = "conductor"
        if cross_check:
            inc = secant_locus_incidence(X, q)
            ok = inc.s == rep.s and inc.ideal.equals(rep.ideal)
            return rep.s, "conductor+incidence", ok
        return rep.s, method, True
    rep = secant_locus_incidence(X, q)
    return rep.s, "incidence", True


def _general_center(X: Variety, rng: random.Random) -> list:
    F = X.field
    while True:
        if F.p:
            q = [rng.randrange(F.p) for _ in range(X.ring.nvars)]
        else:
            q = [F(rng.randint(-20, 20)) for _ in range(X.ring.nvars)]
        if any(q):
            return q


def _on_secant(X: Variety, rng: random.Random) -> list:
    return center_on_secant(X, rng)[0]


def _on_tangent(X: Variety, rng: random.Random) -> list:
    """``x + lambda v`` with ``v`` a tangent direction at a random point ``x``."""
    P = X.parametrization
    F = X.field
    if P is None:
        raise ValueError("tangent sampler needs a parametrization")
    u = P.random_source_point(rng, F)
    v = P.random_source_point(rng, F)
    x = P(u)
    tang = []
    for f in P.forms:
        val = F(0)
        for k in range(len(u)):
            dk = f.diff(k)
            if dk:
                val = val + dk.evaluate(u) * v[k]
        tang.append(val)
    lam = F(rng.choice([1, 2, 3, -1, -2]))
    q = [a + lam * b for a, b in zip(x, tang)]
    if F.p:
        q = [c % F.p for c in q]
    return q


SAMPLERS: dict[str, Callable] = {
    "general": _general_center,
    "on-secant": _on_secant,
    "on-tangent": _on_tangent,
}


@dataclass
class TrialRecord:
    index: int
    sampler: str
    q: list
    s: int | None
    method: str
    consistent: bool = True
    on_x: bool = False
    tangent_member: bool | None = None
    length: int | None = None
    elapsed: float = 0.0

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "index": self.index,
            "sampler": self.sampler,
            "q": [str(c) for c in self.q],
            "s": "X" if self.on_x else self.s,
            "method": self.method,
            "consistent": self.consistent,
        }
        if self.tangent_member is not None:
            d["tangent_member"] = self.tangent_member
        if self.length is not None:
            d["length"] = self.length
        if timing:
            d["elapsed"] = round(self.elapsed, 4)
        return d


@dataclass
class StratificationReport:
    variety: str
    field: str
    trials: int
    seed: int
    histogram: dict[int, int] = field(default_factory=dict)
    on_variety: int = 0
    records: list[TrialRecord] = field(default_factory=list)
    expected: list[int] | None = None
    inconsistent: list[int] = field(default_factory=list)
    tangent_failures: list[int] = field(default_factory=list)
    length_failures: list[int] = field(default_factory=list)
    missing_witnesses: list[int] = field(default_factory=list)
    verdict: str = "consistent"
    caveat: str = ""

    @property
    def support(self) -> set[int]:
        return {s for s, c in self.histogram.items() if c}

    def as_dict(self, timing: bool = False) -> dict:
        return {
            "variety": self.variety,
            "field": self.field,
            "trials": self.trials,
            "seed": self.seed,
            "histogram": {str(s): c for s, c in sorted(self.histogram.items())},
            "on_variety": self.on_variety,
            "expected": self.expected,
            "inconsistent": self.inconsistent,
            "tangent_failures": self.tangent_failures,
            "length_failures": self.length_failures,
            "missing_witnesses": self.missing_witnesses,
            "verdict": self.verdict,
            "caveat": self.caveat,
            "records": [r.as_dict(timing) for r in self.records],
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True)

    def summary(self) -> str:
        hist = ", ".join(f"s={s}: {c}" for s, c in sorted(self.histogram.items()))
        lines = [
            f"stratification of {self.variety} over {self.field}, seed {self.seed}",
            f"  histogram: {hist}" + (f"; on X: {self.on_variety}" if self.on_variety else ""),
            f"  expected strata: {self.expected}",
            f"  verdict: {self.verdict}",
        ]
        if self.caveat:
            lines.append(f"  note: {self.caveat}")
        return "\n".join(lines)


def _trial_rng(seed: int, sampler: str, index: int) -> random.Random:
    return random.Random(f"{seed}/{sampler}/{index}")


def stratification_survey(
    X: Variety,
    trials: int,
    field: Field | None = None,
    seed: int = 0,
    special_samplers: dict[str, int] | None = None,
    cross_check_fraction: float = 0.2,
    tangent: str = "auto",
) -> StratificationReport:
    """Sample centers, compute their strata and compare with the registered ones.

    ``tangent`` controls the tangent-variety membership check for trials with ``s > 0``:
    ``"variety"`` evaluates the tangent-variety ideal at ``q``, ``"direct"``
    tests tangency through ``q`` without building the variety, ``"auto"``
    builds the variety when ``r <= 5``, and ``"off"`` skips the check.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    field = field or GF(DEFAULT_PRIME)
    if X.field != field:
        X = X.change_field(field)
    expected = expected_strata(X)
    rep = StratificationReport(X.name, str(field), trials, seed, expected=expected,
                               caveat=CHAR_CAVEAT if field.p else "")
    plan = [("general", trials)] + sorted((special_samplers or {}).items())
    check_every = max(1, round(1 / cross_check_fraction)) if cross_check_fraction > 0 else 0
    tan_ideal: Ideal | None = None
    tan_mode = tangent
    if tan_mode == "auto":
        tan_mode = "variety" if X.r <= 5 else "direct"
    finite_length = expected is not None and X.name.startswith("veronese") and \
        int(X.name.split(",")[-1]) >= 3
    counter = 0
    for sampler, count in plan:
        fn = SAMPLERS[sampler]
        for i in range(count):
            rng = _trial_rng(seed, sampler, i)
            q = fn(X, rng)
            t0 = time.perf_counter()
            rec = TrialRecord(counter, sampler, q, None, "")
            if X.contains_point(q):
                rec.on_x = True
                rec.method = "on-X"
                rep.on_variety += 1
            else:
                cross = bool(check_every) and counter % check_every == 0
                if X.claims_n2:
                    sec = secant_locus_conductor(X, q)
                    rec.method = "conductor"
                    if cross:
                        inc = secant_locus_incidence(X, q)
                        rec.method = "conductor+incidence"
                        rec.consistent = inc.ideal.equals(sec.ideal)
                else:
                    sec = secant_locus_incidence(X, q)
                    rec.method = "incidence"
                rec.s = sec.s
                rec.length = sec.length
                rep.histogram[sec.s] = rep.histogram.get(sec.s, 0) + 1
                if not rec.consistent:
                    rep.inconsistent.append(counter)
                if sec.s > 0 and tan_mode != "off":
                    if tan_mode == "variety":
                        if tan_ideal is None:
                            tan_ideal = ruled_join_variety(X, "tangent")
                        rec.tangent_member = all(not g.evaluate(q) for g in tan_ideal.gens)
                    else:
                        rec.tangent_member = on_tangent_variety(X, q)
                    if not rec.tangent_member:
                        rep.tangent_failures.append(counter)
                if finite_length and sec.s >= 0 and sec.length != 2:
                    rep.length_failures.append(counter)
            rec.elapsed = time.perf_counter() - t0
            rep.records.append(rec)
            counter += 1
    ok = True
    if expected is not None:
        if not rep.support <= set(expected):
            ok = False
        target = _secant_target(expected)
        if special_samplers and special_samplers.get("on-secant") and target is not None:
            if target not in rep.support:
                rep.missing_witnesses.append(target)
                ok = False
    if rep.inconsistent or rep.tangent_failures or rep.length_failures:
        ok = False
    if expected is None:
        rep.verdict = "unregistered" if ok else "inconsistent"
    else:
        rep.verdict = "consistent" if ok else "inconsistent"
    return rep
