"""JSON Schemas for everything the command line emits."""
from __future__ import annotations

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
WEIGHT = {"type": "array", "items": RATIONAL, "minItems": 1}
LEVEL = {"type": "string", "pattern": r"^(generic|-?[0-9]+/[0-9]+)$"}
EXPR = {"type": "string", "minLength": 1}

STEP = {
    "type": "object",
    "required": ["beta", "m", "n", "to"],
    "properties": {
        "beta": WEIGHT,
        "m": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 1},
        "to": WEIGHT,
    },
    "additionalProperties": False,
}

CHAIN = {
    "type": "object",
    "required": ["source", "steps"],
    "properties": {"source": WEIGHT, "steps": {"type": "array", "items": STEP}},
    "additionalProperties": False,
}

_HEADER = {"command": {"type": "string"}, "rs": {"type": "string"}, "level": LEVEL}


def _envelope(required: list[str], props: dict) -> dict:
    return {
        "type": "object",
        "required": ["command", "rs"] + required,
        "properties": {**_HEADER, **props},
    }


MOVE = {
    "type": "object",
    "required": ["kind", "from", "to"],
    "properties": {
        "kind": {"enum": ["weyl", "star", "star-reverse"]},
        "from": WEIGHT, "to": WEIGHT, "beta": WEIGHT,
        "m": {"type": "integer", "minimum": 0}, "n": {"type": "integer", "minimum": 1},
    },
}

KEY = {
    "type": "object",
    "required": ["depth", "weight"],
    "properties": {"depth": {"type": "integer", "minimum": 0}, "weight": WEIGHT},
}

SCHEMAS: dict[str, dict] = {
    "check-star": _envelope(["found", "chain"], {
        "found": {"type": "boolean"},
        "chain": {"anyOf": [CHAIN, {"type": "null"}]},
        "bounds": {"type": "object"},
    }),
    "linked": _envelope(["linked", "trail", "exhausted"], {
        "linked": {"type": "boolean"},
        "trail": {"type": "array", "items": MOVE},
        "exhausted": {"type": "boolean"},
    }),
    "linkage-class": _envelope(["members", "truncated", "clipped"], {
        "members": {"type": "array", "items": WEIGHT},
        "truncated": {"type": "boolean"},
        "clipped": {"type": "boolean"},
    }),
    "blocks": _envelope(["relation", "blocks"], {
        "relation": {"enum": ["linked", "coarse", "rational"]},
        "blocks": {"type": "array", "items": {
            "type": "object",
            "required": ["representative", "members"],
            "properties": {"representative": WEIGHT,
                           "members": {"type": "array", "items": WEIGHT, "minItems": 1}},
        }},
    }),
    "subquotients": _envelope(["weight", "candidates"], {
        "weight": WEIGHT,
        "candidates": {"type": "array", "items": {
            "type": "object",
            "required": ["weight", "depth", "chain"],
            "properties": {"weight": WEIGHT, "depth": {"type": "integer", "minimum": 0},
                           "chain": CHAIN},
        }},
    }),
    "phi": _envelope(["weight", "value"], {"weight": WEIGHT, "value": EXPR}),
    "casimir": _envelope(["weight", "value"], {"weight": WEIGHT, "value": RATIONAL}),
    "l0": _envelope(["weight", "depth", "convention", "value"], {
        "weight": WEIGHT, "depth": {"type": "integer", "minimum": 0},
        "convention": {"enum": ["aw", "ph"]}, "value": EXPR,
    }),
    "affine-weight": _envelope(["weight", "affine_weight"], {
        "weight": WEIGHT,
        "affine_weight": {
            "type": "object",
            "required": ["finite", "level", "delta"],
            "properties": {"finite": WEIGHT, "level": EXPR, "delta": EXPR},
            "additionalProperties": False,
        },
    }),
    "verify-kk": _envelope(["singular", "predicted", "missing", "extra", "horizon",
                            "l0_convention", "ok"], {
        "singular": {"type": "array", "items": {
            "type": "object",
            "required": ["depth", "weight", "kernel_dim", "verified"],
            "properties": {"depth": {"type": "integer", "minimum": 0}, "weight": WEIGHT,
                           "kernel_dim": {"type": "integer", "minimum": 1},
                           "verified": {"type": "boolean"}},
        }},
        "predicted": {"type": "array", "items": {
            "type": "object", "required": ["depth", "weight", "chain"],
            "properties": {"depth": {"type": "integer", "minimum": 0}, "weight": WEIGHT,
                           "chain": CHAIN},
        }},
        "missing": {"type": "array", "items": KEY},
        "extra": {"type": "array", "items": KEY},
        "horizon": {"type": "object", "required": ["depth", "height"]},
        "l0_convention": {"enum": ["aw", "ph"]},
        "ok": {"type": "boolean"},
    }),
    "selftest": _envelope(["checks", "ok"], {
        "checks": {"type": "array", "items": {
            "type": "object", "required": ["name", "passed"],
            "properties": {"name": {"type": "string"}, "passed": {"type": "boolean"}},
        }},
        "ok": {"type": "boolean"},
    }),
}
