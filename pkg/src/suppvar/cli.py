"""Command-line client for the job service.

By default requests run against an in-process instance of the HTTP app; a
remote deployment can be targeted with --url.  Reports are printed as JSON
with sorted keys, so identical jobs (including seed) print identical
payloads.  Exit codes: 0 success, 1 parse error, 2 precondition violation,
3 internal invariant failure.
"""
import json
import sys

import click


def _client(url):
    if url:
        import httpx

        return httpx.Client(base_url=url, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

        from .service import app

    return TestClient(app)


def _post(url, command, payload):
    with _client(url) as client:
        resp = client.post(f"/jobs/{command}", json=payload)
    body = resp.json()
    if resp.status_code == 200:
        click.echo(json.dumps(body, sort_keys=True, indent=2))
        return 0
    click.echo(json.dumps(body, sort_keys=True, indent=2), err=True)
    return int(body.get("code", 3))


def _load_input(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(json.dumps({"error": str(exc), "code": 1}), err=True)
        sys.exit(1)


def _common(f):
    f = click.option("--url", default=None, help="remote service URL (default: in-process)")(f)
    f = click.option("--seed", default=0, show_default=True, help="seed for randomized algorithms")(f)
    f = click.option(
        "--char",
        "char_",
        default=None,
        type=int,
        help="expected coefficient characteristic of the input (typically 2); "
        "mismatches are rejected",
    )(f)
    return f


@click.group()
def main():
    """Exact supports, varieties, and local cohomology toolkit."""


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--order", default="grevlex", type=click.Choice(["grevlex", "lex"]), show_default=True)
@_common
def gb(input_file, order, url, seed, char_):
    """Reduced Groebner basis of an ideal document."""
    sys.exit(_post(url, "gb", {"input": _load_input(input_file), "options": {"order": order, "seed": seed, "char": char_}}))


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--punctured", is_flag=True, help="drop the irrelevant maximal ideal")
@_common
def support(input_file, punctured, url, seed, char_):
    """Support V(ann M) of a presented module."""
    sys.exit(_post(url, "support", {"input": _load_input(input_file), "options": {"punctured": punctured, "seed": seed, "char": char_}}))


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@_common
def rankvar(input_file, url, seed, char_):
    """Rank variety ideal of a module over a group algebra."""
    sys.exit(_post(url, "rankvar", {"input": _load_input(input_file), "options": {"seed": seed, "char": char_}}))


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--bound", default=12, show_default=True, help="Ext degree bound")
@_common
def ext(input_file, bound, url, seed, char_):
    """Ext*(M, k) dimensions and truncated annihilator."""
    sys.exit(_post(url, "ext", {"input": _load_input(input_file), "options": {"bound": bound, "seed": seed, "char": char_}}))


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--degree", default=1, show_default=True)
@click.option("--zeta", default="", help="comma-separated coefficients of the class")
@_common
def carlson(input_file, degree, zeta, url, seed, char_):
    """Carlson module L_zeta of a cohomology class over a quotient algebra."""
    coeffs = [int(v) for v in zeta.split(",") if v.strip() != ""]
    sys.exit(
        _post(
            url,
            "carlson",
            {"input": _load_input(input_file), "options": {"degree": degree, "zeta": coeffs, "seed": seed, "char": char_}},
        )
    )


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--prime", default="zero", help='"zero" or comma-separated variable indices')
@click.option("--bound", default=12, show_default=True)
@_common
def benson(input_file, prime, bound, url, seed, char_):
    """Support membership of a prime via Carlson-module annihilators."""
    spec = "zero" if prime == "zero" else [int(v) for v in prime.split(",") if v.strip() != ""]
    sys.exit(
        _post(
            url,
            "benson",
            {"input": _load_input(input_file), "options": {"prime": spec, "bound": bound, "seed": seed, "char": char_}},
        )
    )


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--ideal", default="", help="comma-separated monomial generators")
@click.option("--box", default=4, show_default=True, help="degree box half-width")
@_common
def localcoh(input_file, ideal, box, url, seed, char_):
    """Local cohomology of a multigraded module in a degree box."""
    gens = [s.strip() for s in ideal.split(",") if s.strip()]
    sys.exit(
        _post(
            url,
            "localcoh",
            {"input": _load_input(input_file), "options": {"ideal": gens, "box": box, "seed": seed, "char": char_}},
        )
    )


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--ideal", default="", help="comma-separated monomial generators")
@click.option("--box", default=4, show_default=True)
@_common
def triangle(input_file, ideal, box, url, seed, char_):
    """Torsion/localization triangle support table and separation checks."""
    gens = [s.strip() for s in ideal.split(",") if s.strip()]
    sys.exit(
        _post(
            url,
            "triangle",
            {"input": _load_input(input_file), "options": {"ideal": gens, "box": box, "seed": seed, "char": char_}},
        )
    )


@main.command("mv-check")
@click.argument("input_file", type=click.Path(exists=True))
@click.option("-a", "ideal_a", default="", help="generators of the first ideal")
@click.option("-b", "ideal_b", default="", help="generators of the second ideal")
@click.option("--box", default=4, show_default=True)
@_common
def mv_check(input_file, ideal_a, ideal_b, box, url, seed, char_):
    """Mayer-Vietoris support check for two monomial ideals."""
    ga = [s.strip() for s in ideal_a.split(",") if s.strip()]
    gb_ = [s.strip() for s in ideal_b.split(",") if s.strip()]
    sys.exit(
        _post(
            url,
            "mv-check",
            {"input": _load_input(input_file), "options": {"a": ga, "b": gb_, "box": box, "seed": seed, "char": char_}},
        )
    )


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@_common
def decompose(input_file, url, seed, char_):
    """Indecomposable summands grouped by variety connectivity."""
    sys.exit(_post(url, "decompose", {"input": _load_input(input_file), "options": {"seed": seed, "char": char_}}))


@main.command()
@click.option("--corpus", default=None, type=click.Path(), help="corpus directory (default: shipped corpus)")
@_common
def axioms(corpus, url, seed, char_):
    """Run the axiom property checks across the example corpus."""
    options = {"seed": seed, "char": char_}
    if corpus is not None:
        options["corpus"] = corpus
    sys.exit(_post(url, "axioms", {"input": None, "options": options}))


if __name__ == "__main__":
    main()
