"""JSON schemas for the machine-readable outputs."""

POLY = {"type": "string"}

SERIES = {
    "type": "object",
    "required": ["valuation", "trunc", "coeffs"],
    "properties": {
        "valuation": {"type": ["integer", "null"]},
        "trunc": {"type": ["integer", "null"]},
        "coeffs": {"type": "object", "patternProperties": {"^-?[0-9]+$": POLY}, "additionalProperties": False},
    },
    "additionalProperties": False,
}

VERIFY_REPORT = {
    "type": "object",
    "required": [
        "family", "generators", "total_order", "input_order", "shift_order",
        "constant", "coefficients", "region", "residual",
    ],
    "properties": {
        "family": {"enum": ["todd", "elliptic"]},
        "generators": {"type": "array", "items": {"type": "string"}},
        "total_order": {"type": "integer"},
        "input_order": {"type": "integer"},
        "shift_order": {"type": "integer"},
        "constant": POLY,
        "coefficients": {"type": "object", "additionalProperties": POLY},
        "region": {"type": "string"},
        "elapsed_seconds": {"type": "number"},
        "residual": {
            "type": "object",
            "required": ["status", "checked", "nonzero", "points"],
            "properties": {
                "status": {"enum": ["zero", "nonzero"]},
                "checked": {"type": "integer"},
                "nonzero": {"type": "integer"},
                "points": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "integer"}, {"type": "integer"}, POLY],
                        "minItems": 3,
                        "maxItems": 3,
                    },
                },
            },
        },
    },
    "additionalProperties": False,
}

SERIES_OUTPUT = {
    "type": "object",
    "required": ["family", "generators", "bindings", "series", "coefficients"],
    "properties": {
        "family": {"enum": ["todd", "elliptic"]},
        "generators": {"type": "array", "items": {"type": "string"}},
        "bindings": {"type": "object", "additionalProperties": {"type": "string"}},
        "series": SERIES,
        "coefficients": {"type": "object", "additionalProperties": POLY},
    },
    "additionalProperties": False,
}

RELATION = {
    "type": "object",
    "required": ["multiplier", "poly"],
    "properties": {"multiplier": {"type": "integer", "minimum": 1}, "poly": POLY},
    "additionalProperties": False,
}

OBSTRUCTION_REPORT = {
    "type": "object",
    "required": ["f8_u1_nested", "f8_u2_nested", "f8_u1", "f8_u2", "C", "K", "difference", "constant", "identity"],
    "properties": {
        "f8_u1_nested": RELATION,
        "f8_u2_nested": RELATION,
        "f8_u1": POLY,
        "f8_u2": RELATION,
        "C": POLY,
        "K": POLY,
        "difference": POLY,
        "constant": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
        "identity": {"type": "string"},
    },
    "additionalProperties": False,
}

GENERIC_REPORT = {
    "type": "object",
    "required": ["form", "relations"],
    "properties": {
        "form": {"enum": ["expanded", "nested"]},
        "relations": {"type": "object", "patternProperties": {"^f[0-9]+$": RELATION}, "additionalProperties": False},
    },
    "additionalProperties": False,
}

_RAT = {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}

CLASSIFICATION = {
    "type": "object",
    "required": ["tag", "C", "K", "todd", "elliptic"],
    "properties": {
        "tag": {"enum": ["ToddFamily", "EllipticFamily", "Degenerate", "NotMultiplicative"]},
        "C": _RAT,
        "K": _RAT,
        "todd": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["alpha+beta", "alpha*beta"],
                    "properties": {"alpha+beta": _RAT, "alpha*beta": _RAT},
                    "additionalProperties": False,
                },
            ]
        },
        "elliptic": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["a", "b"],
                    "properties": {"a": _RAT, "b": _RAT},
                    "additionalProperties": False,
                },
            ]
        },
    },
    "additionalProperties": False,
}

GENUS_VALUE = {
    "type": "object",
    "required": ["family", "n", "value"],
    "properties": {
        "family": {"enum": ["todd", "elliptic", "generic"]},
        "n": {"type": "integer", "minimum": 1},
        "value": POLY,
    },
    "additionalProperties": False,
}

BY_COMMAND = {
    "todd": SERIES_OUTPUT,
    "elliptic": SERIES_OUTPUT,
    "generic": GENERIC_REPORT,
    "verify": VERIFY_REPORT,
    "classify": CLASSIFICATION,
    "genus": GENUS_VALUE,
    "obstruction": OBSTRUCTION_REPORT,
}
