"""JSON documents for algebras and dual spaces, and content fingerprints."""
from __future__ import annotations

import hashlib
import json

import numpy as np

from .core import FinAlgebra
from .varieties import SIGNATURES, normalize_tag, variety_of

ALGEBRA_KEYS = {"variety", "universe", "operations"}


class FormatError(ValueError):
    """A document does not follow the algebra file format."""


def to_document(A: FinAlgebra, tag: str | None = None) -> dict:
    tag = normalize_tag(tag) if tag else variety_of(A)
    ops = {}
    for sym, ar in A.signature.operations:
        t = A.table(sym)
        ops[sym] = A.name(int(t)) if ar == 0 else np.asarray(t).tolist()
    return {"variety": tag, "universe": list(A.universe), "operations": ops}


def dumps(doc: dict) -> str:
    """Canonical text: sorted keys, no insignificant whitespace."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def serialize(A: FinAlgebra, tag: str | None = None) -> str:
    return dumps(to_document(A, tag))


def fingerprint(*docs) -> str:
    h = hashlib.sha256()
    for d in docs:
        h.update((d if isinstance(d, str) else dumps(d)).encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()[:16]


def from_document(doc) -> FinAlgebra:
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    unknown = set(doc) - ALGEBRA_KEYS
    if unknown:
        raise FormatError(f"unknown keys {sorted(unknown)}")
    missing = ALGEBRA_KEYS - set(doc)
    if missing:
        raise FormatError(f"missing keys {sorted(missing)}")
    try:
        tag = normalize_tag(doc["variety"])
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from None
    sig = SIGNATURES[tag]
    universe = doc["universe"]
    if not isinstance(universe, list) or not universe:
        raise FormatError("universe must be a non-empty list")
    names = [str(u) for u in universe]
    if len(set(names)) != len(names):
        raise FormatError("universe names must be distinct")
    ops = doc["operations"]
    if not isinstance(ops, dict):
        raise FormatError("operations must be an object")
    unknown = set(ops) - set(sig.symbols)
    if unknown:
        raise FormatError(f"unknown operations {sorted(unknown)} for {tag}")
    n = len(names)
    tables = {}
    for sym, ar in sig.operations:
        if sym not in ops:
            raise FormatError(f"missing operation {sym!r}")
        val = ops[sym]
        if ar == 0:
            if str(val) not in names:
                raise FormatError(f"constant {sym!r} names no element: {val!r}")
            tables[sym] = names.index(str(val))
            continue
        try:
            arr = np.asarray(val)
        except Exception:
            raise FormatError(f"table for {sym!r} is not rectangular") from None
        if arr.shape != (n,) * ar or arr.dtype.kind not in "iu":
            raise FormatError(f"table for {sym!r} must be an integer array of shape {(n,) * ar}")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise FormatError(f"table for {sym!r} has entries outside 0..{n - 1}")
        tables[sym] = arr
    return FinAlgebra(sig, names, tables)


def loads(text: str) -> FinAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def load(path: str) -> FinAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ----------------------------------------------------------------------------
# spaces


def space_document(X) -> dict:
    """A dual space with points written as value tuples over the algebra."""
    ego = X.ego
    return {
        "ego": list(ego.names),
        "points": [[list(p) for p in pts] for pts in X.points],
        "relations": {r.name: sorted([list(pair) for pair in X.relations[k]])
                      for k, r in enumerate(ego.relations)},
        "nullaries": list(X.nullaries),
    }


def space_from_document(doc: dict, ego):
    from .duality import StructuredSpace
    keys = {"ego", "points", "relations", "nullaries"}
    if not isinstance(doc, dict) or set(doc) != keys:
        raise FormatError(f"space document needs exactly the keys {sorted(keys)}")
    if list(doc["ego"]) != list(ego.names):
        raise FormatError(f"space is typed over {doc['ego']}, expected {list(ego.names)}")
    points = tuple(tuple(tuple(p) for p in pts) for pts in doc["points"])
    if len(points) != len(ego.sorts):
        raise FormatError("wrong number of sorts")
    rels = []
    for r in ego.relations:
        if r.name not in doc["relations"]:
            raise FormatError(f"missing relation {r.name!r}")
        rels.append(frozenset(tuple(p) for p in doc["relations"][r.name]))
    nulls = tuple(int(v) for v in doc["nullaries"])
    if len(nulls) != len(ego.nullaries):
        raise FormatError("wrong number of nullaries")
    return StructuredSpace(ego, points, tuple(rels), nulls)
