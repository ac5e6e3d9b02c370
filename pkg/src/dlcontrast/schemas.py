"""JSON Schemas for the ``--json`` output of each CLI command."""

_AXIOMS = {"type": "array", "items": {"type": "string"}}

CE = {
    "type": "object",
    "required": ["fact", "foil_present", "foil_missing", "conflicts", "divergence", "strategy", "bounded_optimal"],
    "additionalProperties": False,
    "properties": {
        "fact": _AXIOMS,
        "foil_present": _AXIOMS,
        "foil_missing": _AXIOMS,
        "conflicts": _AXIOMS,
        "divergence": {"type": "integer", "minimum": 0},
        "strategy": {"enum": ["relative", "full", "symdiff", "lipton"]},
        "bounded_optimal": {"type": "boolean"},
    },
}

CHECK = {
    "type": "object",
    "required": ["command", "kb", "query", "result"],
    "properties": {
        "command": {"const": "check"},
        "kb": {"type": "string"},
        "query": {"type": ["string", "null"]},
        "result": {"type": "boolean"},
    },
}

JUSTIFY = {
    "type": "object",
    "required": ["command", "kb", "axiom", "justifications", "truncated"],
    "properties": {
        "command": {"const": "justify"},
        "kb": {"type": "string"},
        "axiom": {"type": "string"},
        "justifications": {"type": "array", "items": _AXIOMS},
        "truncated": {"type": "boolean"},
    },
}

ABDUCE = {
    "type": "object",
    "required": ["command", "kb", "axiom", "max_size", "hypotheses"],
    "properties": {
        "command": {"const": "abduce"},
        "kb": {"type": "string"},
        "axiom": {"type": "string"},
        "max_size": {"type": "integer", "minimum": 0},
        "hypotheses": {"type": "array", "items": _AXIOMS},
    },
}

EXPLAIN = {
    "type": "object",
    "required": ["command", "kb", "fact", "foil", "kind", "prefer", "explanations"],
    "properties": {
        "command": {"const": "explain"},
        "kb": {"type": "string"},
        "fact": {"type": "string"},
        "foil": {"type": "string"},
        "kind": {"enum": ["entity", "concept"]},
        "prefer": {"enum": ["divergence", "cardinality", "subset"]},
        "explanations": {"type": "array", "items": CE},
    },
}

_STAT = {
    "type": "array",
    "prefixItems": [{"type": "number"}, {"type": "number"}, {"type": "number"}],
    "minItems": 3,
    "maxItems": 3,
}

BENCH = {
    "type": "object",
    "required": ["command", "csv", "summary_csv", "records", "summary"],
    "properties": {
        "command": {"const": "bench"},
        "csv": {"type": "string"},
        "summary_csv": {"type": "string"},
        "records": {"type": "integer", "minimum": 0},
        "summary": {
            "type": "object",
            "required": ["n_runs", "n_ok", "empty", "metrics", "common_axioms_ratio_pct",
                         "conflict_rate_pct", "consistency_rate_pct"],
            "properties": {
                "n_runs": {"type": "integer"},
                "n_ok": {"type": "integer"},
                "empty": {"type": "boolean"},
                "metrics": {"type": "object", "additionalProperties": _STAT},
                "common_axioms_ratio_pct": {"type": "number"},
                "conflict_rate_pct": {"type": "number"},
                "consistency_rate_pct": {"type": "number"},
            },
        },
    },
}

ERROR = {
    "type": "object",
    "required": ["command", "error"],
    "properties": {"command": {"type": "string"}, "error": {"type": "string"}},
}

BY_COMMAND = {
    "check": CHECK,
    "justify": JUSTIFY,
    "abduce": ABDUCE,
    "explain": EXPLAIN,
    "bench": BENCH,
}
