"""Job dispatch shared by the HTTP service and the CLI.

A job is (command, input document, options).  Each command decodes its
input, runs the corresponding library operation, and returns a plain-dict
results payload plus warnings.  Identical jobs (including seed) produce
identical payloads.
"""
from __future__ import annotations

import time

from .cohops import BoundTooSmall, ann_to_bound, chi_commutativity_check, ext_module
from .complexes import (
    NotAChainMap,
    NotFree,
    NotHomogeneous,
    cohomology_annihilator,
)
from .fdalgebra import (
    BadModule,
    NotAGroupAlgebra,
    ZeroClass,
    carlson_module,
    is_projective,
    stable_hom_dim,
    tensor_module,
)
from .groebner import Ideal, monomial_primes_of, radical_contains_ideal
from .localcoh import (
    BoxTooLarge,
    MultigradedModule,
    NotMultigradedHomogeneous,
    cech_strand_dims,
    local_cohomology,
    localization_triangle,
    mayer_vietoris_check,
)
from .poly import GREVLEX, LEX, ParseError, Ring, poly_from_string, poly_to_string
from .serialize import decode, input_hash, module_to_json
from .varieties import (
    NotRadicalGenerators,
    PrimeSpec,
    VariableMismatch,
    _is_irrelevant_radical,
    benson_support_membership,
    koszul_detection_membership,
    krs_partition,
    rank_variety_ideal,
    support_of_module,
)


class PreconditionError(ValueError):
    """Input parsed but violates an operation's precondition."""


class InternalInvariantError(AssertionError):
    """A library-level invariant failed during the run."""


_PRECONDITION_TYPES = (
    BoundTooSmall,
    BoxTooLarge,
    BadModule,
    NotAGroupAlgebra,
    NotRadicalGenerators,
    NotMultigradedHomogeneous,
    VariableMismatch,
    ZeroClass,
    NotFree,
    ValueError,  # operation-level rejections not covered by a named type
)

_PARSE_TYPES = (ParseError, NotHomogeneous, NotAChainMap)


def _order_of(options):
    name = options.get("order", "grevlex")
    if name == "grevlex":
        return GREVLEX
    if name == "lex":
        return LEX
    raise ParseError(f"unknown monomial order {name!r}")


def _box_of(options, default=4):
    b = int(options.get("box", default))
    if b < 0:
        raise ParseError("box must be nonnegative")
    return (-b, b)


def _prime_of(ring, options):
    spec = options.get("prime", "zero")
    if spec == "zero":
        return PrimeSpec.zero(ring)
    return PrimeSpec.monomial(ring, [int(i) for i in spec])


def _as_multigraded(obj):
    if isinstance(obj, MultigradedModule):
        return obj
    if isinstance(obj, Ideal):
        ring = obj.ring
        if not ring.multigraded:
            ring = Ring(ring.field, ring.names, multigraded=True)
            obj = Ideal(ring, [poly_from_string(ring, poly_to_string(g)) for g in obj.generators])
        return MultigradedModule.quotient_by_ideal(obj)
    raise PreconditionError("expected a multigraded module or a monomial ideal")


def _check_char(input_doc, options):
    """When --char is given, require the input document to match it."""
    if "char" not in options or options["char"] is None:
        return
    want = int(options["char"])
    doc = input_doc or {}
    have = None
    if "char" in doc:
        have = int(doc["char"])
    elif isinstance(doc.get("ring"), dict):
        have = int(doc["ring"].get("char", want))
    elif isinstance(doc.get("algebra"), dict):
        have = int(doc["algebra"].get("char", want))
    if have is not None and have != want:
        raise PreconditionError(
            f"input has characteristic {have}, but --char {want} was requested"
        )


def _parse_monomial_ideal(ring, gens):
    return Ideal(ring, [poly_from_string(ring, s) for s in gens])


# ---------------------------------------------------------------------------
# Individual commands
# ---------------------------------------------------------------------------

def _job_gb(input_doc, options):
    I = decode(input_doc)
    if not isinstance(I, Ideal):
        raise PreconditionError("gb expects an ideal document")
    gb = I.groebner(_order_of(options))
    return {"basis": [poly_to_string(g) for g in gb.elements]}, []


def _job_support(input_doc, options):
    obj = decode(input_doc)
    if isinstance(obj, Ideal):
        from .groebner import Vec

        cols, ring, rank = [Vec.from_poly(g) for g in obj.generators], obj.ring, 1
    elif isinstance(obj, tuple):
        cols, ring, rank = obj
    else:
        raise PreconditionError("support expects an ideal or columns document")
    rep = support_of_module(cols, ring=ring, rank=rank, punctured=bool(options.get("punctured", False)))
    results = {
        "annihilator": [poly_to_string(g) for g in rep.closed_set.defining_ideal.generators],
        "components": [list(p.var_indices) for p in rep.components if p.var_indices is not None],
        "connectivity": rep.connectivity_partition,
    }
    return results, []


def _job_rankvar(input_doc, options):
    M = decode(input_doc)
    ri = rank_variety_ideal(M)
    return {
        "ring": [str(n) for n in ri.ideal.ring.names],
        "ideal": [poly_to_string(g) for g in ri.ideal.groebner().elements],
        "module_dim": ri.module_dim,
    }, []


def _job_ext(input_doc, options):
    M = decode(input_doc)
    bound = int(options.get("bound", 12))
    k = M.algebra.trivial_module()
    E = ext_module(M, k, bound)
    deg_cap = bound - 4
    ann = ann_to_bound(E, deg_cap)
    results = {
        "bound": bound,
        "dims": list(E.dims),
        "chi_commute": chi_commutativity_check(E),
        "annihilator": [poly_to_string(g) for g in ann.groebner().elements],
    }
    return results, [f"annihilator truncated at degree {deg_cap}"]


def _job_carlson(input_doc, options):
    A = decode(input_doc)
    degree = int(options.get("degree", 1))
    zeta = [int(v) for v in options.get("zeta", [])]
    L = carlson_module(A, degree, zeta)
    return {"module": module_to_json(L), "dim": L.dim}, []


def _job_benson(input_doc, options):
    M = decode(input_doc)
    bound = int(options.get("bound", 12))
    from .cohops import ext_ring

    Rchi = ext_ring(M.algebra)
    p = _prime_of(Rchi, options)
    member = benson_support_membership(M, p, bound=bound)
    return {"member": member}, [f"membership decided with Ext truncated at {bound}"]


def _job_localcoh(input_doc, options):
    M = _as_multigraded(decode(input_doc))
    a = _parse_monomial_ideal(M.ring, options.get("ideal", []))
    rep = local_cohomology(M, a, _box_of(options))
    results = {
        "box": list(rep.box),
        "cohomology": {
            str(i): sorted(
                [list(beta), d] for beta, d in rep.entries.get(i, {}).items()
            )
            for i in sorted(rep.entries)
        },
    }
    return results, []


def _job_triangle(input_doc, options):
    M = _as_multigraded(decode(input_doc))
    a = _parse_monomial_ideal(M.ring, options.get("ideal", []))
    rep = localization_triangle(M, a, _box_of(options))
    table = {
        ",".join(map(str, idx)) if idx else "zero": row
        for idx, row in sorted(rep.table.items())
    }
    return {"table": table, "checks": rep.checks, "ok": rep.ok}, []


def _job_mv_check(input_doc, options):
    M = _as_multigraded(decode(input_doc))
    a = _parse_monomial_ideal(M.ring, options.get("a", []))
    b = _parse_monomial_ideal(M.ring, options.get("b", []))
    ok = mayer_vietoris_check(M, a, b, _box_of(options))
    return {"ok": ok}, []


def _job_decompose(input_doc, options):
    M = decode(input_doc)
    seed = int(options.get("seed", 0))
    groups = krs_partition(M, seed=seed)
    out = []
    for summands, ideal in groups:
        out.append(
            {
                "summand_dims": [s.dim for s in summands],
                "variety_ideal": [poly_to_string(g) for g in ideal.groebner().elements],
            }
        )
    return {"groups": out, "seed": seed}, []


_COMMANDS = {
    "gb": _job_gb,
    "support": _job_support,
    "rankvar": _job_rankvar,
    "ext": _job_ext,
    "carlson": _job_carlson,
    "benson": _job_benson,
    "localcoh": _job_localcoh,
    "triangle": _job_triangle,
    "mv-check": _job_mv_check,
    "decompose": _job_decompose,
}


def run_job(command: str, input_doc: dict, options: dict | None = None) -> dict:
    """Execute one job and return the full report dict."""
    options = dict(options or {})
    if command == "axioms":
        return axioms_suite(options.get("corpus"))
    if command not in _COMMANDS:
        raise ParseError(f"unknown command {command!r}")
    _check_char(input_doc, options)
    started = time.monotonic()
    try:
        results, warnings = _COMMANDS[command](input_doc, options)
    except _PARSE_TYPES:
        raise
    except _PRECONDITION_TYPES as exc:
        raise PreconditionError(str(exc)) from exc
    except AssertionError as exc:
        raise InternalInvariantError(str(exc)) from exc
    elapsed = time.monotonic() - started
    return {
        "command": command,
        "options": {k: options[k] for k in sorted(options)},
        "input_hash": input_hash(input_doc),
        "results": results,
        "timing_ms": round(elapsed * 1000.0, 3),
        "warnings": warnings,
    }


# ---------------------------------------------------------------------------
# Axiom suite over the shipped corpus
# ---------------------------------------------------------------------------

def _corpus_docs(corpus_dir=None):
    import json
    import os
    from importlib import resources

    docs = []
    if corpus_dir is not None:
        for name in sorted(os.listdir(corpus_dir)):
            if name.endswith(".json"):
                with open(os.path.join(corpus_dir, name), "r", encoding="utf-8") as fh:
                    docs.append((name, json.load(fh)))
        return docs
    root = resources.files("suppvar") / "corpus"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            docs.append((entry.name, json.loads(entry.read_text(encoding="utf-8"))))
    return docs


def _axiom_checks_fd(named_modules):
    """Cohomology, orthogonality and tensor-exactness checks on modules
    over one algebra."""
    checks = []
    for name, M in named_modules:
        ri = rank_variety_ideal(M).ideal
        empty = _is_irrelevant_radical(ri)
        checks.append(("cohomology", name, empty == is_projective(M)))
    for i, (na, Ma) in enumerate(named_modules):
        Ia = rank_variety_ideal(Ma).ideal
        for nb, Mb in named_modules[i + 1 :]:
            Ib = rank_variety_ideal(Mb).ideal
            joint = Ideal(Ia.ring, Ia.generators + Ib.generators)
            if _is_irrelevant_radical(joint):
                ok = stable_hom_dim(Ma, Mb) == 0 and stable_hom_dim(Mb, Ma) == 0
                checks.append(("orthogonality", f"{na}|{nb}", ok))
            # minor enumeration in rank_variety_ideal grows binomially with
            # the module dimension, so only small tensor pairs are checked
            if Ma.dim * Mb.dim <= 8:
                T = tensor_module(Ma, Mb)
                It = rank_variety_ideal(T).ideal
                ok = radical_contains_ideal(It, Ia) and radical_contains_ideal(It, Ib)
                checks.append(("exactness", f"{na}(x){nb}", ok))
    return checks


def _axiom_checks_complex(name, X):
    checks = []
    primes = [
        PrimeSpec.zero(X.ring) if not idx else PrimeSpec.monomial(X.ring, idx)
        for idx in monomial_primes_of(X.ring)
    ]
    members = [koszul_detection_membership(X, p) for p in primes]
    no_cohomology = X.is_zero() or cohomology_annihilator(X).is_unit()
    checks.append(("cohomology", name, any(members) != no_cohomology))
    # Koszul triangle X -> X -> X//x_i: support of the cone inside supp X
    from .complexes import koszul_object

    for i in range(X.ring.nvars):
        Y = koszul_object(X, X.ring.var(i))
        for p, m in zip(primes, members):
            if koszul_detection_membership(Y, p) and not m:
                checks.append(("exactness", f"{name}//{X.ring.names[i]}", False))
                break
        else:
            checks.append(("exactness", f"{name}//{X.ring.names[i]}", True))
    return checks


def _axiom_checks_multigraded(name, M):
    checks = []
    ring = M.ring
    box = (-4, 4)
    gens = [ring.var(i) for i in range(ring.nvars)]
    for a in [Ideal(ring, gens[:1]), Ideal(ring, gens)]:
        rep = localization_triangle(M, a, box)
        label = f"{name}|({','.join(poly_to_string(g) for g in a.generators)})"
        checks.append(("separation", label, rep.ok))
    return checks


def _cech_truncation_demo(ring):
    """The punctured Cech part of the free module: its cohomology is nonzero
    near the corner (so the minimal support prime is (0)), yet its fibrewise
    support omits the maximal monomial prime."""
    M = MultigradedModule.free(ring)
    exps = []
    for i in range(ring.nvars):
        e = [0] * ring.nvars
        e[i] = 1
        exps.append(tuple(e))
    corner = tuple(-1 for _ in range(ring.nvars))
    has_corner_cohomology = bool(
        cech_strand_dims(M, [exps], corner, omit_empty_first=True)
    )
    # fibre at the maximal ideal: localize at it (invert nothing) and take
    # local cohomology of the punctured part there
    maximal_in_support = False
    for beta in [corner, (0,) * ring.nvars, (-2, 1)[: ring.nvars]]:
        if cech_strand_dims(M, [exps, exps], beta, omit_empty_first=True):
            maximal_in_support = True
    return has_corner_cohomology and not maximal_in_support


def axioms_suite(corpus_dir=None) -> dict:
    started = time.monotonic()
    warnings = []
    docs = _corpus_docs(corpus_dir)
    checks = []
    fd_by_algebra = {}
    for name, doc in docs:
        obj = decode(doc)
        kind = doc.get("kind")
        if kind == "fd_module":
            key = (obj.algebra.field.char, obj.algebra.exponents)
            fd_by_algebra.setdefault(key, []).append((name, obj))
        elif kind == "complex":
            checks.extend(_axiom_checks_complex(name, obj))
        elif kind == "multigraded_module":
            checks.extend(_axiom_checks_multigraded(name, obj))
            if not obj.columns and obj.rank == 1:
                checks.append(
                    ("separation", f"{name}|cech-truncation", _cech_truncation_demo(obj.ring))
                )
    for key, mods in sorted(fd_by_algebra.items()):
        group_mods = [
            (n, m) for n, m in mods if m.algebra.exponents == (m.algebra.field.char,) * m.algebra.c
        ]
        checks.extend(_axiom_checks_fd(group_mods))
    if not docs:
        warnings.append("empty corpus: vacuous pass")
    failed = [c for c in checks if not c[2]]
    if failed:
        raise InternalInvariantError(f"axiom failures: {failed}")
    elapsed = time.monotonic() - started
    return {
        "command": "axioms",
        "options": {},
        "input_hash": input_hash([name for name, _ in docs]),
        "results": {
            "checks": [
                {"axiom": a, "example": e, "pass": bool(ok)} for a, e, ok in checks
            ],
            "total": len(checks),
        },
        "timing_ms": round(elapsed * 1000.0, 3),
        "warnings": warnings,
    }
