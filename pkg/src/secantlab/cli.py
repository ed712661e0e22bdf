"""Command-line interface.

Exit codes: 0 all checks pass, 1 verification mismatch, 2 input error,
3 budget exceeded.  ``SECANTLAB_PAIR_BUDGET`` and ``SECANTLAB_TIME_LIMIT``
override the default Groebner pair budget and wall-clock cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Sequence

from . import groebner
from .betti import IncompleteTable, graded_betti, table_predicates
from .groebner import BudgetExceeded, Ideal
from .hilbert import SliceError, hilbert_series, numerical_invariants
from .polyring import (
    DEFAULT_PRIME,
    PolyParseError,
    QQ,
    field_from_spec,
    format_ideal_text,
    format_poly,
    read_ideal_text,
)
from .projsec import CenterOnVariety, HypothesisUnmet, project, secant_locus_conductor, \
    secant_locus_incidence
from .stratify import stratification_survey
from .suites import CENTER_KINDS, SUITES, choose_center, suite_minimal_degree, suite_sharpness
from .varieties import DegenerateSection, NoParametrization, SizeCapExceeded, parse_variety

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class TimeCapExceeded(BudgetExceeded):
    """Wall-clock cap reached."""


@dataclass
class RunConfig:
    command: str
    variety: str | None = None
    center: str | None = None
    field: str = "QQ"
    seed: int = 0
    json_path: str | None = None
    out: str | None = None
    emit_ideals: bool = False
    pair_budget: int | None = None
    time_limit: float | None = None
    extra: dict = dc_field(default_factory=dict)


def _emit_json(path: str | None, payload: dict):
    if path is None:
        return
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _variety(cfg: RunConfig, default: str | None = None):
    spec = cfg.variety or default
    if spec is None:
        raise ValueError("--variety is required for this command")
    return parse_variety(spec, field_from_spec(cfg.field), cfg.seed)


def _ideal_payload(I: Ideal) -> list[str]:
    return [format_poly(g) for g in I.gens]


# ---------------------------------------------------------------------------
# commands


def cmd_construct(cfg: RunConfig) -> int:
    X = _variety(cfg)
    text = format_ideal_text(X.ideal.ring, X.ideal.gens, comment=X.name)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    hd = hilbert_series(X.ideal)
    print(f"{X.name}: {len(X.ideal.gens)} generators in P^{X.r}, dim {hd.dim}, degree {hd.degree}",
          file=sys.stderr if not cfg.out else sys.stdout)
    _emit_json(cfg.json_path, {"command": "construct", "variety": X.name, "field": str(X.field),
                               "r": X.r, "dim": hd.dim, "degree": hd.degree,
                               "generators": len(X.ideal.gens), "ideal": _ideal_payload(X.ideal)})
    return EXIT_OK


def cmd_project(cfg: RunConfig) -> int:
    X = _variety(cfg)
    q = choose_center(X, cfg.center, cfg.seed)
    P = project(X, q)
    Y = P.variety
    hd = hilbert_series(Y.ideal)
    text = format_ideal_text(Y.ideal.ring, Y.ideal.gens, comment=f"projection of {X.name}")
    if cfg.out:
        Path(cfg.out).write_text(text)
    print(f"projection of {X.name} from {[str(c) for c in q]}: s = {P.s}, "
          f"P^{X.r - 1}, dim {hd.dim}, degree {hd.degree}, {len(Y.ideal.gens)} generators")
    if not cfg.out and cfg.json_path != "-":
        sys.stdout.write(text)
    _emit_json(cfg.json_path, {"command": "project", "variety": X.name, "field": str(X.field),
                               "center": [str(c) for c in q], "s": P.s, "dim": hd.dim,
                               "degree": hd.degree, "birational": P.birational,
                               "ideal": _ideal_payload(Y.ideal)})
    return EXIT_OK


def cmd_secant(cfg: RunConfig) -> int:
    X = _variety(cfg)
    q = choose_center(X, cfg.center, cfg.seed)
    method = cfg.extra.get("method", "both")
    reports = {}
    if method in ("incidence", "both"):
        reports["incidence"] = secant_locus_incidence(X, q)
    if method in ("conductor", "both"):
        reports["conductor"] = secant_locus_conductor(X, q, force=cfg.extra.get("force", False))
    status = EXIT_OK
    if len(reports) == 2 and not reports["incidence"].ideal.equals(reports["conductor"].ideal):
        status = EXIT_MISMATCH
    for name, rep in reports.items():
        qc = rep.quadric
        shape = qc.kind if qc is not None else "empty"
        print(f"{name}: s = {rep.s}, span dim {rep.span_dim}, length {rep.length}, {shape}")
    if status:
        print("secant methods disagree")
    _emit_json(cfg.json_path, {"command": "secant", "variety": X.name, "field": str(X.field),
                               "center": [str(c) for c in q],
                               "agree": status == EXIT_OK,
                               "reports": {k: v.as_dict(cfg.emit_ideals)
                                           for k, v in reports.items()}})
    return status


def _ideal_for_betti(cfg: RunConfig):
    path = cfg.extra.get("ideal")
    if path:
        ring, polys = read_ideal_text(Path(path).read_text())
        return Ideal(ring, polys), path
    X = _variety(cfg)
    return X.ideal, X.name


def cmd_betti(cfg: RunConfig) -> int:
    I, name = _ideal_for_betti(cfg)
    T = graded_betti(I, seed=cfg.seed)
    hd = hilbert_series(I)
    r = I.ring.nvars - 1
    P = table_predicates(T, r, hd.dim, projectively_normal=False)
    print(f"Betti table of {name}")
    print(T.format())
    print(f"Reg {P.regularity}, pd {P.pd}, depth {P.depth}, codim {P.codim}, ACM {P.is_acm}")
    euler = T.check_euler()
    if not euler:
        print("Euler identity with the Hilbert numerator FAILED")
    _emit_json(cfg.json_path, {"command": "betti", "source": name, "field": str(I.ring.field),
                               "betti": T.as_dict(), "predicates": P.as_dict(),
                               "euler_check": euler})
    return EXIT_OK if euler else EXIT_MISMATCH


def cmd_invariants(cfg: RunConfig) -> int:
    import random

    X = _variety(cfg)
    inv = numerical_invariants(X, random.Random(cfg.seed))
    d = inv.as_dict()
    for k in ("dim", "degree", "codim", "h0_O1", "delta_genus", "sectional_genus",
              "sectional_genus_by_slicing"):
        print(f"{k}: {d[k]}")
    for note in inv.notes:
        print(f"note: {note}")
    _emit_json(cfg.json_path, {"command": "invariants", "variety": X.name,
                               "field": str(X.field), **d})
    return EXIT_MISMATCH if inv.notes else EXIT_OK


DEFAULT_VARIETY = {"ex5.4": "g14:3", "ex3.7": "ci:2,2"}


def cmd_verify(cfg: RunConfig) -> int:
    suite = cfg.extra["suite"]
    fld = field_from_spec(cfg.field)
    if suite == "thm5.1":
        varieties = [cfg.variety] if cfg.variety else None
        rep = suite_minimal_degree(fld, cfg.seed, varieties)
    elif suite == "ex3.7" and not cfg.variety:
        rep = suite_sharpness(fld, cfg.seed)
    else:
        X = _variety(cfg, DEFAULT_VARIETY.get(suite))
        q = choose_center(X, cfg.center, cfg.seed)
        if suite == "ex3.7":
            rep = suite_sharpness(fld, cfg.seed, X, q)
        else:
            rep = SUITES[suite](X, q, seed=cfg.seed)
    print(rep.summary())
    _emit_json(cfg.json_path, {"command": "verify", **rep.as_dict(cfg.emit_ideals)})
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def cmd_stratify(cfg: RunConfig) -> int:
    ex = cfg.extra
    fld = QQ if ex.get("rational") else field_from_spec(cfg.field)
    X = _variety(cfg)
    special = {k: v for k, v in (("on-secant", ex.get("on_secant", 0)),
                                 ("on-tangent", ex.get("on_tangent", 0))) if v}
    rep = stratification_survey(X, ex.get("trials", 20), fld, cfg.seed, special,
                                cross_check_fraction=ex.get("cross_check", 0.2))
    print(rep.summary())
    _emit_json(cfg.json_path, {"command": "stratify", **rep.as_dict()})
    return EXIT_OK if rep.verdict in ("consistent", "unregistered") else EXIT_MISMATCH


COMMANDS = {
    "construct": cmd_construct,
    "project": cmd_project,
    "secant": cmd_secant,
    "betti": cmd_betti,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "stratify": cmd_stratify,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="secantlab",
                                 description="Projections, secant loci and Betti tables.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, center=False):
        p.add_argument("--variety", help="veronese:n,d | segre:a,b | scroll:a+b+.. | g14:cut | "
                                         "quadric:r | ci:d1,d2[@r] | ci:FILE | file:PATH")
        p.add_argument("--field", default="QQ", help="QQ or GF(p) / a prime p (default QQ)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", dest="json_path", metavar="PATH",
                       help="write a JSON report ('-' for stdout)")
        p.add_argument("--pair-budget", type=int)
        p.add_argument("--time-limit", type=float, help="seconds")
        if center:
            p.add_argument("--center", default="general",
                           help=f"comma-separated coordinates or one of {', '.join(CENTER_KINDS)}")
            p.add_argument("--emit-ideals", action="store_true")

    p = sub.add_parser("construct", help="write the ideal of a corpus variety")
    common(p)
    p.add_argument("--out")
    p = sub.add_parser("project", help="project from a center")
    common(p, center=True)
    p.add_argument("--out")
    p = sub.add_parser("secant", help="secant locus of a center")
    common(p, center=True)
    p.add_argument("--method", choices=("incidence", "conductor", "both"), default="both")
    p.add_argument("--force", action="store_true",
                   help="run the conductor method without the N_2 registry claim")
    p = sub.add_parser("betti", help="graded Betti table")
    common(p)
    p.add_argument("--ideal", help="ideal file instead of --variety")
    p = sub.add_parser("invariants", help="dimension, degree, Delta-genus, sectional genus")
    common(p)
    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    common(p, center=True)
    p = sub.add_parser("stratify", help="secant stratification survey")
    common(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--on-secant", type=int, default=0)
    p.add_argument("--on-tangent", type=int, default=0)
    p.add_argument("--cross-check", type=float, default=0.2,
                   help="fraction of trials cross-checked by the incidence method")
    p.add_argument("--rational", action="store_true", help="survey over QQ")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    core = {"command", "variety", "center", "field", "seed", "json_path", "out",
            "emit_ideals", "pair_budget", "time_limit", "verbose"}
    extra = {k: v for k, v in vars(ns).items() if k not in core}
    cfg = RunConfig(ns.command, getattr(ns, "variety", None), getattr(ns, "center", None),
                    ns.field, ns.seed, ns.json_path, getattr(ns, "out", None),
                    getattr(ns, "emit_ideals", False), ns.pair_budget, ns.time_limit, extra)
    if cfg.command == "stratify" and cfg.field == "QQ" and not extra.get("rational"):
        cfg.field = f"GF({DEFAULT_PRIME})"
    return cfg


def _alarm(signum, frame):
    raise TimeCapExceeded("time limit reached")


def run(cfg: RunConfig) -> int:
    budget = cfg.pair_budget or os.environ.get("SECANTLAB_PAIR_BUDGET")
    limit = cfg.time_limit or os.environ.get("SECANTLAB_TIME_LIMIT")
    old_budget = groebner.DEFAULT_PAIR_BUDGET
    try:
        if budget:
            groebner.DEFAULT_PAIR_BUDGET = int(budget)
        if limit:
            signal.signal(signal.SIGALRM, _alarm)
            signal.setitimer(signal.ITIMER_REAL, float(limit))
        try:
            return COMMANDS[cfg.command](cfg)
        finally:
            if limit:
                signal.setitimer(signal.ITIMER_REAL, 0)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, PolyParseError, OSError, CenterOnVariety, HypothesisUnmet,
            SizeCapExceeded, NoParametrization, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DegenerateSection, SliceError, IncompleteTable) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    finally:
        groebner.DEFAULT_PAIR_BUDGET = old_budget


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
        field_from_spec(cfg.field)
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
