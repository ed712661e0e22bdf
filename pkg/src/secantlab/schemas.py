"""JSON Schemas (draft 2020-12) of the reports written by ``--json``."""

from __future__ import annotations

_STR_LIST = {"type": "array", "items": {"type": "string"}}
_INT_OR_NULL = {"type": ["integer", "null"]}

CHECK = {
    "type": "object",
    "required": ["name", "predicted", "computed", "pass"],
    "properties": {
        "name": {"type": "string"},
        "pass": {"type": "boolean"},
        "note": {"type": "string"},
    },
}

VERIFY = {
    "type": "object",
    "required": ["command", "suite", "variety", "field", "center", "verdict", "checks", "data"],
    "properties": {
        "command": {"const": "verify"},
        "suite": {"enum": ["thm3.3", "cor3.2", "thm5.1", "ex5.4", "ex3.7"]},
        "variety": {"type": "string"},
        "field": {"type": "string"},
        "center": {"type": "array"},
        "verdict": {"enum": ["pass", "fail", "hypothesis-unmet", "inconsistent"]},
        "checks": {"type": "array", "items": CHECK},
        "data": {"type": "object"},
        "ideals": {"type": "object", "additionalProperties": _STR_LIST},
    },
}

STRATIFY = {
    "type": "object",
    "required": ["command", "variety", "field", "trials", "seed", "histogram",
                 "inconsistent", "expected", "verdict", "records"],
    "properties": {
        "command": {"const": "stratify"},
        "variety": {"type": "string"},
        "field": {"type": "string"},
        "trials": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "histogram": {"type": "object", "additionalProperties": {"type": "integer"}},
        "on_variety": {"type": "integer"},
        "inconsistent": {"type": "array", "items": {"type": "integer"}},
        "expected": {"type": ["array", "null"], "items": {"type": "integer"}},
        "verdict": {"enum": ["consistent", "inconsistent", "unregistered"]},
        "caveat": {"type": "string"},
        "records": {"type": "array", "items": {
            "type": "object",
            "required": ["index", "sampler", "q", "s", "method", "consistent"],
        }},
    },
}

SECANT_REPORT = {
    "type": "object",
    "required": ["method", "s", "span_dim", "degree", "quadric"],
    "properties": {
        "s": {"type": "integer", "minimum": -1},
        "span_dim": _INT_OR_NULL,
        "degree": _INT_OR_NULL,
        "quadric": {"type": ["object", "null"]},
        "ideal": _STR_LIST,
        "lambda": _STR_LIST,
    },
}

SECANT = {
    "type": "object",
    "required": ["command", "variety", "field", "center", "agree", "reports"],
    "properties": {
        "command": {"const": "secant"},
        "agree": {"type": "boolean"},
        "reports": {"type": "object", "additionalProperties": SECANT_REPORT},
    },
}

CONSTRUCT = {
    "type": "object",
    "required": ["command", "variety", "field", "r", "dim", "degree", "generators", "ideal"],
    "properties": {"command": {"const": "construct"}, "ideal": _STR_LIST,
                   "generators": {"type": "integer"}},
}

PROJECT = {
    "type": "object",
    "required": ["command", "variety", "field", "center", "s", "dim", "degree", "ideal"],
    "properties": {"command": {"const": "project"}, "ideal": _STR_LIST,
                   "s": {"type": "integer", "minimum": -1}},
}

BETTI = {
    "type": "object",
    "required": ["command", "source", "field", "betti", "predicates", "euler_check"],
    "properties": {"command": {"const": "betti"}, "euler_check": {"type": "boolean"}},
}

INVARIANTS = {
    "type": "object",
    "required": ["command", "variety", "field", "dim", "degree", "codim", "h0_O1",
                 "delta_genus", "sectional_genus"],
    "properties": {"command": {"const": "invariants"}},
}

SCHEMAS = {
    "construct": CONSTRUCT,
    "project": PROJECT,
    "secant": SECANT,
    "betti": BETTI,
    "invariants": INVARIANTS,
    "verify": VERIFY,
    "stratify": STRATIFY,
}
