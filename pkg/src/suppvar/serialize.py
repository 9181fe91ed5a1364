"""JSON serialization for all computational objects.

Conventions: polynomials travel as strings in the ``coeff*x^2*y + ...``
grammar, field elements as ints (prime fields) or "a/b" strings (the
rationals), and every document carries a "kind" tag.  Dumps use sorted keys
and compact separators so that equal values produce byte-identical JSON,
which backs the input hashing and determinism guarantees.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .complexes import ChainComplex
from .fdalgebra import CIAlgebra, FDModule
from .groebner import Ideal, Vec
from .linalg import GF, QQ
from .localcoh import MultigradedModule
from .poly import ParseError, Poly, Ring, poly_from_string, poly_to_string


# ---------------------------------------------------------------------------
# Canonical JSON and hashing
# ---------------------------------------------------------------------------

def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def input_hash(doc) -> str:
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Fields and rings
# ---------------------------------------------------------------------------

def field_to_json(field) -> dict:
    return {"char": field.char}


def field_from_json(doc):
    char = int(doc["char"])
    return QQ if char == 0 else GF(char)


def scalar_to_json(field, c):
    if field.char == 0:
        f = Fraction(c)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return int(c)


def scalar_from_json(field, v):
    if field.char == 0:
        return Fraction(str(v))
    return field.of(int(v))


def ring_to_json(ring: Ring) -> dict:
    doc = {
        "kind": "ring",
        "char": ring.field.char,
        "vars": list(ring.names),
    }
    if ring.weights != (1,) * ring.nvars:
        doc["weights"] = list(ring.weights)
    if ring.multigraded:
        doc["multigraded"] = True
    return doc


def ring_from_json(doc) -> Ring:
    return Ring(
        field_from_json(doc),
        doc["vars"],
        weights=doc.get("weights"),
        multigraded=bool(doc.get("multigraded", False)),
    )


# ---------------------------------------------------------------------------
# Ideals and free-module columns
# ---------------------------------------------------------------------------

def ideal_to_json(I: Ideal) -> dict:
    return {
        "kind": "ideal",
        "ring": ring_to_json(I.ring),
        "generators": [poly_to_string(g) for g in I.generators],
    }


def ideal_from_json(doc) -> Ideal:
    ring = ring_from_json(doc["ring"])
    return Ideal(ring, [poly_from_string(ring, s) for s in doc["generators"]])


def _vec_to_strings(v: Vec):
    return [poly_to_string(p) for p in v.to_polys()]


def _vec_from_strings(ring: Ring, rank: int, strings) -> Vec:
    terms = {}
    for i, s in enumerate(strings):
        p = poly_from_string(ring, s)
        for e, c in p.terms.items():
            terms[(i, e)] = c
    return Vec(ring, rank, terms)


def columns_to_json(columns, ring: Ring, rank: int) -> dict:
    return {
        "kind": "columns",
        "ring": ring_to_json(ring),
        "rank": rank,
        "columns": [_vec_to_strings(c) for c in columns],
    }


def columns_from_json(doc):
    ring = ring_from_json(doc["ring"])
    rank = int(doc["rank"])
    cols = [_vec_from_strings(ring, rank, cs) for cs in doc["columns"]]
    return cols, ring, rank


# ---------------------------------------------------------------------------
# Chain complexes
# ---------------------------------------------------------------------------

def complex_to_json(X: ChainComplex) -> dict:
    objects = [
        {"degree": n, "shifts": list(X.objects[n].shifts)}
        for n in sorted(X.objects)
    ]
    diffs = [
        {
            "degree": n,
            "matrix": [[poly_to_string(p) for p in row] for row in X.diffs[n]],
        }
        for n in sorted(X.diffs)
    ]
    return {
        "kind": "complex",
        "ring": ring_to_json(X.ring),
        "objects": objects,
        "diffs": diffs,
    }


def complex_from_json(doc) -> ChainComplex:
    from .complexes import GradedFreeModule

    ring = ring_from_json(doc["ring"])
    objects = {
        int(o["degree"]): GradedFreeModule(ring, [int(s) for s in o["shifts"]])
        for o in doc["objects"]
    }
    diffs = {
        int(d["degree"]): [
            [poly_from_string(ring, s) for s in row] for row in d["matrix"]
        ]
        for d in doc["diffs"]
    }
    return ChainComplex(ring, objects, diffs)


# ---------------------------------------------------------------------------
# Finite-dimensional modules over complete-intersection quotients
# ---------------------------------------------------------------------------

def algebra_to_json(A: CIAlgebra) -> dict:
    return {
        "kind": "ci_algebra",
        "char": A.field.char,
        "exponents": list(A.exponents),
    }


def algebra_from_json(doc) -> CIAlgebra:
    return CIAlgebra(field_from_json(doc), doc["exponents"])


def module_to_json(M: FDModule) -> dict:
    F = M.algebra.field
    return {
        "kind": "fd_module",
        "algebra": algebra_to_json(M.algebra),
        "dim": M.dim,
        "actions": [
            [[scalar_to_json(F, v) for v in row] for row in mat]
            for mat in M.actions
        ],
    }


def module_from_json(doc) -> FDModule:
    A = algebra_from_json(doc["algebra"])
    dim = int(doc["dim"])
    actions = [
        [[scalar_from_json(A.field, v) for v in row] for row in mat]
        for mat in doc["actions"]
    ]
    if dim == 0:
        actions = [[] for _ in range(A.c)]
    return FDModule(A, actions, dim=dim)


# ---------------------------------------------------------------------------
# Multigraded modules
# ---------------------------------------------------------------------------

def multigraded_to_json(M: MultigradedModule) -> dict:
    return {
        "kind": "multigraded_module",
        "ring": ring_to_json(M.ring),
        "rank": M.rank,
        "shifts": [list(s) for s in M.shifts],
        "columns": [_vec_to_strings(c) for c in M.columns],
    }


def multigraded_from_json(doc) -> MultigradedModule:
    ring = ring_from_json(doc["ring"])
    if not ring.multigraded:
        ring = Ring(ring.field, ring.names, multigraded=True)
    rank = int(doc["rank"])
    cols = [_vec_from_strings(ring, rank, cs) for cs in doc["columns"]]
    shifts = [tuple(int(x) for x in s) for s in doc.get("shifts", [])] or None
    return MultigradedModule(ring, rank, cols, shifts=shifts)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

_DECODERS = {
    "ring": ring_from_json,
    "ideal": ideal_from_json,
    "columns": columns_from_json,
    "complex": complex_from_json,
    "ci_algebra": algebra_from_json,
    "fd_module": module_from_json,
    "multigraded_module": multigraded_from_json,
}

_ENCODERS = {
    Ring: ring_to_json,
    Ideal: ideal_to_json,
    ChainComplex: complex_to_json,
    CIAlgebra: algebra_to_json,
    FDModule: module_to_json,
    MultigradedModule: multigraded_to_json,
}


def decode(doc):
    """Decode any tagged document."""
    kind = doc.get("kind")
    if kind not in _DECODERS:
        raise ParseError(f"unknown document kind {kind!r}")
    try:
        return _DECODERS[kind](doc)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed {kind} document: {exc}") from exc


def encode(obj) -> dict:
    enc = _ENCODERS.get(type(obj))
    if enc is None:
        raise TypeError(f"no encoder for {type(obj).__name__}")
    return enc(obj)


def load_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return decode(doc)


def dump_file(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(encode(obj)))
        fh.write("\n")
