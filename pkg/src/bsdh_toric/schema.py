"""JSON schemas for the documents emitted by the command line tool."""

_int = {"type": "integer"}
_bool = {"type": "boolean"}
_rational = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+/\d+$"}]}
_label = r"^\d+[+-]$"
_intmap = {"type": "object", "patternProperties": {_label: _int}, "additionalProperties": False}
_ratmap = {"type": "object", "patternProperties": {_label: _rational}, "additionalProperties": False}
_labels = {"type": "array", "items": {"type": "string", "pattern": _label}}
_intvec = {"type": "array", "items": _int}
_matrix = {"type": "array", "items": _intvec}


def _obj(props, optional=()):
    return {"type": "object", "properties": dict(props), "required": [k for k in props if k not in optional],
            "additionalProperties": False}


_witness = _obj({
    "holds": _bool,
    "per_position": {"type": "array", "items": _bool},
    "first_failure": {"oneOf": [{"type": "null"}, _obj({"position": _int, "clause": {"type": "string"}})]},
})

_curve = _obj({"intersections": _intmap, "K_degree": _int})

RESULTS = {
    "fan": _obj({
        "r": _int,
        "rays": {"type": "object", "patternProperties": {_label: _intvec}, "additionalProperties": False},
        "max_cones": _int,
        "smoothness": _obj({"smooth": _bool, "method": {"enum": ["triangular", "exhaustive"]}, "cones_checked": _int}),
    }),
    "matrix": _obj({"r": _int, "bott_matrix": _matrix, "upper": _matrix}),
    "classify": _obj({
        "condition_I": _witness,
        "condition_II": _witness,
        "fano": _bool,
        "weak_fano": _bool,
        "d_values": _intvec,
        "mori_rays": {"type": "array", "items": _bool},
        "discrepancies": {"type": "array", "items": {
            "type": "object", "required": ["claim", "source"],
            "properties": {"claim": {"type": "string"}, "source": {"type": "string"}},
        }},
        "readings": {"type": "array", "items": {"type": "string"}},
    }),
    "ample": _obj({"divisor": _ratmap, "d_values": {"type": "array", "items": _rational}, "ample": _bool,
                   "nef": _bool, "verdict": _bool}),
    "mori": _obj({
        "index_sets": {"type": "array", "items": _obj({
            "i": _int, "indices": _intvec,
            "trace": {"type": "array", "items": _obj({"k": _int, "j": _int, "a": _int})},
        })},
        "classes": {"type": "array", "items": _obj({
            "i": _int, "gamma": _intmap, "intersections": _intmap, "K_degree": _int, "mori_ray": _bool,
        })},
        "mori_rays": {"type": "array", "items": _bool},
    }),
    "intersect": _obj({
        "schubert_lines": {"type": "array", "items": _obj({
            "j": _int, "wall": _labels, "intersections": _intmap, "K_degree": _int, "K_degree_closed_form": _int,
        })},
        "walls": {"type": "array", "items": _obj({
            "wall": _labels, "intersections": _intmap, "K_degree": _int, "mori_coordinates": _intvec,
        })},
    }),
    "logfano": _obj({
        "a": {"type": "array", "items": _rational},
        "b": _intvec,
        "f": {"type": "array", "items": _rational},
        "log_fano": _bool,
        "witness": {"oneOf": [{"type": "null"}, _int]},
    }),
    "convert": _obj({"divisor": _ratmap, "h_table": _matrix, "g": {"type": "array", "items": _rational}}),
}
RESULTS["nef"] = RESULTS["ample"]

_input = _obj({
    "family": {"type": "string"}, "rank": _int, "cartan": _matrix, "word": _intvec,
}, optional=("family", "rank"))

DOCUMENT = {
    "type": "object",
    "required": ["command", "input", "result"],
    "properties": {
        "command": {"enum": sorted(RESULTS)},
        "input": _input,
        "result": {"type": "object"},
        "oracle": _obj({"checks": {"type": "array", "items": {"type": "string"}}, "agrees": _bool}),
    },
    "additionalProperties": False,
}

ERROR = _obj({
    "command": {"type": ["string", "null"]},
    "error": _obj({"kind": {"enum": ["invalid_input", "internal_consistency"]}, "message": {"type": "string"}}),
})

SELF_TEST = {"type": "object", "required": ["seed", "cases", "failures", "passed"]}


def validate(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` is not a valid output document."""
    import jsonschema

    if "error" in doc:
        jsonschema.validate(doc, ERROR)
        return
    jsonschema.validate(doc, DOCUMENT)
    jsonschema.validate(doc["result"], RESULTS[doc["command"]])
