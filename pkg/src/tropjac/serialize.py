"""JSON documents for monoids, orders, curves, homomorphisms and classes.

Every document carries ``"format": 1``.  Rationals are written as "p/q"
strings; integers are JSON numbers when |x| < 2**53 and strings otherwise, so
nothing is lost in transit.  Output uses sorted keys and fixed indentation,
which makes write -> read -> write byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .linalg import Vec
from .monodromy import MonodromyHom
from .ordmonoid import SharpMonoid, ValuationOrder
from .picard import TroPicClass
from .plfun import PLFunction
from .tropcurve import Divisor, TropicalCurve

FORMAT = 1
_BIG = 2**53


class SchemaError(ValueError):
    """Input failed schema validation; ``errors`` lists 'path: message' strings."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


# -- scalars -------------------------------------------------------------------------


def encode_rational(x) -> int | str:
    x = Fraction(x)
    if x.denominator == 1:
        n = x.numerator
        return n if abs(n) < _BIG else str(n)
    return f"{x.numerator}/{x.denominator}"


def decode_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"expected an integer or 'p/q' string, got {x!r}")


def encode_vec(v) -> list:
    return [encode_rational(a) for a in v]


def decode_vec(v) -> Vec:
    return Vec(decode_rational(a) for a in v)


# -- schemas ---------------------------------------------------------------------------

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"},
    ]
}
_VECTOR = {"type": "array", "items": _RATIONAL}
_MONOID = {
    "type": "object",
    "required": ["ambient_rank", "generators"],
    "properties": {
        "ambient_rank": {"type": "integer", "minimum": 1},
        "generators": {"type": "array", "items": _VECTOR},
    },
    "additionalProperties": False,
}
_ORDER = {
    "type": "object",
    "required": ["weights"],
    "properties": {"weights": {"type": "array", "minItems": 1, "items": _VECTOR}},
    "additionalProperties": False,
}
_FORMAT = {"const": FORMAT}

SCHEMAS: dict[str, dict] = {
    "monoid": {
        "type": "object",
        "required": ["format", "ambient_rank", "generators"],
        "properties": {"format": _FORMAT, **_MONOID["properties"], "weights": _ORDER["properties"]["weights"]},
        "additionalProperties": False,
    },
    "curve": {
        "type": "object",
        "required": ["format", "monoid", "vertices", "edges"],
        "properties": {
            "format": _FORMAT,
            "monoid": _MONOID,
            "order": _ORDER,
            "vertices": {"type": "array", "items": {"type": "string"}},
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["from", "to", "length"],
                    "properties": {
                        "from": {"type": ["string", "null"]},
                        "to": {"type": ["string", "null"]},
                        "length": _VECTOR,
                    },
                    "additionalProperties": False,
                },
            },
            "basis": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        },
        "additionalProperties": False,
    },
    "hom": {
        "type": "object",
        "required": ["format", "values"],
        "properties": {"format": _FORMAT, "values": {"type": "array", "items": _VECTOR}},
        "additionalProperties": False,
    },
    "class": {
        "type": "object",
        "required": ["format", "divisor", "mu"],
        "properties": {
            "format": _FORMAT,
            "divisor": {"type": "object", "additionalProperties": {"type": "integer"}},
            "mu": {"type": "array", "items": _VECTOR},
        },
        "additionalProperties": False,
    },
    "plfunction": {
        "type": "object",
        "required": ["format", "vertex_values", "slopes"],
        "properties": {
            "format": _FORMAT,
            "vertex_values": {"type": "object", "additionalProperties": _VECTOR},
            "slopes": {"type": "object", "additionalProperties": {"type": "integer"}},
        },
        "additionalProperties": False,
    },
}


def check(doc: Any, kind: str) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise SchemaError(["/" + "/".join(map(str, e.absolute_path)) + ": " + e.message for e in errors])


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([f"/: invalid JSON ({exc})"]) from exc
    check(doc, kind)
    return doc


# -- monoids and orders ------------------------------------------------------------------


def monoid_to_dict(M: SharpMonoid) -> dict:
    return {"ambient_rank": M.ambient_rank, "generators": [encode_vec(g) for g in M.generators]}


def monoid_from_dict(d: dict) -> SharpMonoid:
    return SharpMonoid(d["ambient_rank"], [decode_vec(g) for g in d["generators"]])


def order_to_dict(V: ValuationOrder) -> dict:
    return {"weights": [encode_vec(w) for w in V.weights]}


def order_from_dict(d: dict, M: SharpMonoid) -> ValuationOrder:
    return ValuationOrder(M, [decode_vec(w) for w in d["weights"]])


def monoid_doc(M: SharpMonoid | ValuationOrder) -> dict:
    if isinstance(M, ValuationOrder):
        return {"format": FORMAT, **monoid_to_dict(M.base), **order_to_dict(M)}
    return {"format": FORMAT, **monoid_to_dict(M)}


def monoid_from_doc(doc: dict) -> SharpMonoid | ValuationOrder:
    check(doc, "monoid")
    M = monoid_from_dict(doc)
    return order_from_dict(doc, M) if "weights" in doc else M


# -- curves ----------------------------------------------------------------------------


def curve_to_doc(curve: TropicalCurve) -> dict:
    names = curve.names
    doc: dict = {
        "format": FORMAT,
        "monoid": monoid_to_dict(curve.monoid),
        "vertices": list(names),
        "edges": [
            {
                "from": names[e.tail] if e.tail is not None else None,
                "to": names[e.head] if e.head is not None else None,
                "length": encode_vec(e.length),
            }
            for e in curve.edges
        ],
    }
    if curve.order is not None:
        doc["order"] = order_to_dict(curve.order)
    if curve.basis is not None:
        doc["basis"] = [list(g) for g in curve.basis]
    return doc


def curve_from_doc(doc: dict) -> TropicalCurve:
    check(doc, "curve")
    M = monoid_from_dict(doc["monoid"])
    V = order_from_dict(doc["order"], M) if "order" in doc else None
    names = doc["vertices"]
    if len(set(names)) != len(names):
        raise SchemaError(["/vertices: vertex names must be unique"])
    index = {n: i for i, n in enumerate(names)}
    edges = []
    for k, e in enumerate(doc["edges"]):
        ends = []
        for key in ("from", "to"):
            if e[key] is None:
                ends.append(None)
            elif e[key] in index:
                ends.append(index[e[key]])
            else:
                raise SchemaError([f"/edges/{k}/{key}: unknown vertex {e[key]!r}"])
        if len(e["length"]) != M.ambient_rank:
            raise SchemaError([f"/edges/{k}/length: expected {M.ambient_rank} entries"])
        edges.append((ends[0], ends[1], decode_vec(e["length"])))
    return TropicalCurve.from_graph(M, names, edges, basis=doc.get("basis"), order=V)


# -- homomorphisms, classes, PL functions --------------------------------------------------


def hom_to_doc(mu: MonodromyHom) -> dict:
    return {"format": FORMAT, "values": [encode_vec(v) for v in mu]}


def hom_from_doc(doc: dict) -> MonodromyHom:
    check(doc, "hom")
    return MonodromyHom([decode_vec(v) for v in doc["values"]])


def class_to_doc(cls: TroPicClass) -> dict:
    names = cls.curve.names
    return {
        "format": FORMAT,
        "divisor": {names[v]: m for v, m in enumerate(cls.divisor.values) if m},
        "mu": [encode_vec(v) for v in cls.mu],
    }


def class_from_doc(doc: dict, curve: TropicalCurve) -> TroPicClass:
    check(doc, "class")
    index = {n: i for i, n in enumerate(curve.names)}
    D = [0] * curve.n_vertices
    for name, m in doc["divisor"].items():
        if name not in index:
            raise SchemaError([f"/divisor/{name}: unknown vertex"])
        D[index[name]] = m
    return TroPicClass(curve, Divisor(D), MonodromyHom([decode_vec(v) for v in doc["mu"]]))


def plf_to_doc(f: PLFunction) -> dict:
    names = f.curve.names
    return {
        "format": FORMAT,
        "vertex_values": {names[v]: encode_vec(x) for v, x in enumerate(f.values)},
        "slopes": {str(k): s for k, s in enumerate(f.slopes)},
    }


def plf_from_doc(doc: dict, curve: TropicalCurve) -> PLFunction:
    check(doc, "plfunction")
    vals = []
    for name in curve.names:
        if name not in doc["vertex_values"]:
            raise SchemaError([f"/vertex_values: missing vertex {name!r}"])
        vals.append(decode_vec(doc["vertex_values"][name]))
    slopes = [0] * curve.n_edges
    for key, s in doc["slopes"].items():
        if not key.isdigit() or int(key) >= curve.n_edges:
            raise SchemaError([f"/slopes/{key}: not an edge index"])
        slopes[int(key)] = s
    return PLFunction(curve, tuple(vals), tuple(slopes))
