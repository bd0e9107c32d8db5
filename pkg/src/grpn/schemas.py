"""JSON Schemas for the ``--format json`` outputs of ``poly``, ``dist`` and ``verify``."""

_DECIMAL = {"type": "string", "pattern": "^-?[0-9]+$"}
_NONNEG = {"type": "integer", "minimum": 0}

POLY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "grpn poly",
    "type": "object",
    "required": ["r", "p", "n", "method", "terms"],
    "additionalProperties": False,
    "properties": {
        "r": {"type": "integer", "minimum": 1},
        "p": {"type": "integer", "minimum": 1},
        "n": _NONNEG,
        "method": {"enum": ["recurrence", "explicit", "brute", "classic-recurrence", "classic-explicit"]},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "v", "w", "coeff"],
                "additionalProperties": False,
                "properties": {"u": _NONNEG, "v": _NONNEG, "w": _NONNEG, "coeff": _DECIMAL},
            },
        },
    },
}

DIST = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "grpn dist",
    "type": "object",
    "required": ["r", "p", "n", "stat", "rows"],
    "additionalProperties": False,
    "properties": {
        "r": {"type": "integer", "minimum": 1},
        "p": {"type": "integer", "minimum": 1},
        "n": _NONNEG,
        "stat": {"enum": ["excclr", "fix-exca"]},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["count"],
                "additionalProperties": False,
                "properties": {"m": _NONNEG, "fix": _NONNEG, "exc_a": _NONNEG, "count": _DECIMAL},
            },
        },
    },
}

VERIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "grpn verify",
    "type": "object",
    "required": ["grid", "ok", "summary", "checks", "elapsed_ms"],
    "additionalProperties": False,
    "properties": {
        "grid": {
            "type": "array",
            "items": {"type": "array", "items": _NONNEG, "minItems": 3, "maxItems": 3},
        },
        "ok": {"type": "boolean"},
        "summary": {
            "type": "object",
            "required": ["pass", "fail", "finding", "skipped"],
            "additionalProperties": False,
            "properties": {k: _NONNEG for k in ("pass", "fail", "finding", "skipped")},
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["claim", "params", "status", "witness", "duration_ms"],
                "additionalProperties": False,
                "properties": {
                    "claim": {"type": "string"},
                    "params": {
                        "type": "object",
                        "required": ["r", "p", "n"],
                        "properties": {"r": _NONNEG, "p": _NONNEG, "n": _NONNEG},
                    },
                    "status": {"enum": ["pass", "fail", "finding", "skipped"]},
                    "witness": {"type": ["object", "null"]},
                    "duration_ms": {"type": ["number", "null"]},
                    "note": {"type": "string"},
                },
            },
        },
        "elapsed_ms": {"type": ["number", "null"]},
    },
}
