"""Serialization round trips, including every shipped corpus file."""
import json

import pytest

from suppvar.complexes import resolve_quotient
from suppvar.fdalgebra import CIAlgebra, carlson_module
from suppvar.groebner import Ideal
from suppvar.linalg import GF, QQ
from suppvar.localcoh import MultigradedModule
from suppvar.poly import ParseError, Ring
from suppvar.serialize import (
    canonical_json,
    decode,
    encode,
    input_hash,
)


def _roundtrip(obj):
    doc = encode(obj)
    again = encode(decode(doc))
    assert canonical_json(doc) == canonical_json(again)
    return doc


def test_ideal_roundtrip():
    R = Ring(GF(5), ["x", "y", "z"])
    x, y, z = R.gens()
    _roundtrip(Ideal(R, [x * x * y - z, x + R.const(3) * y]))
    Rq = Ring(QQ, ["x"])
    (xq,) = Rq.gens()
    doc = _roundtrip(Ideal(Rq, [xq * Rq.const(7) - Rq.const(2)]))
    assert doc["ring"]["char"] == 0


def test_complex_roundtrip():
    R = Ring(GF(2), ["x", "y"])
    x, y = R.gens()
    _roundtrip(resolve_quotient(Ideal(R, [x * x, x * y])))


def test_module_roundtrip():
    A = CIAlgebra(GF(2), [2, 2])
    _roundtrip(A.trivial_module())
    _roundtrip(A.regular_module())
    _roundtrip(carlson_module(A, 1, [1, 1]))


def test_multigraded_roundtrip():
    R = Ring(GF(2), ["x", "y"], multigraded=True)
    x, y = R.gens()
    _roundtrip(MultigradedModule.quotient_by_ideal(Ideal(R, [x * y, y * y])))


def test_unknown_kind_rejected():
    with pytest.raises(ParseError):
        decode({"kind": "mystery"})
    with pytest.raises(ParseError):
        decode({"kind": "ideal", "generators": ["x"]})  # missing ring


def test_hash_stability():
    doc = {"b": 1, "a": [2, 3]}
    assert input_hash(doc) == input_hash({"a": [2, 3], "b": 1})
    assert input_hash(doc) != input_hash({"a": [2, 3], "b": 2})


def test_corpus_files_roundtrip():
    from importlib import resources

    root = resources.files("suppvar") / "corpus"
    names = [e.name for e in root.iterdir() if e.name.endswith(".json")]
    assert len(names) >= 15
    for name in sorted(names):
        raw = (root / name).read_text(encoding="utf-8")
        doc = json.loads(raw)
        obj = decode(doc)
        if doc["kind"] == "columns":
            continue
        assert canonical_json(encode(obj)) == raw.strip()
