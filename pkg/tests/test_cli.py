"""CLI tests via the click test runner (in-process service)."""
import json
import warnings

import pytest
from click.testing import CliRunner

from suppvar.cli import main
from suppvar.serialize import canonical_json

warnings.simplefilter("ignore")

CORPUS = "src/suppvar/corpus"


@pytest.fixture
def runner():
    return CliRunner()


def _results(output):
    return json.loads(output)["results"]


def test_gb_empty_ideal(runner):
    res = runner.invoke(main, ["gb", f"{CORPUS}/ideal_empty.json"])
    assert res.exit_code == 0, res.stdout
    assert _results(res.stdout)["basis"] == []


def test_gb_lex_order(runner):
    res = runner.invoke(main, ["gb", f"{CORPUS}/ideal_plane_maximal.json", "--order", "lex"])
    assert res.exit_code == 0
    assert sorted(_results(res.stdout)["basis"]) == ["x", "y"]


def test_rankvar_carlson_line(runner):
    res = runner.invoke(main, ["rankvar", f"{CORPUS}/v4_Lx.json"])
    assert res.exit_code == 0
    assert _results(res.stdout)["ideal"] == ["a1"]


def test_localcoh_corner(runner):
    res = runner.invoke(
        main,
        ["localcoh", f"{CORPUS}/plane_free.json", "--ideal", "x,y", "--box", "4"],
    )
    assert res.exit_code == 0
    coh = _results(res.stdout)["cohomology"]
    assert [[-1, -1], 1] in coh["2"]
    assert "1" not in coh


def test_triangle_and_mv(runner):
    res = runner.invoke(
        main, ["triangle", f"{CORPUS}/plane_mod_xy.json", "--ideal", "x", "--box", "3"]
    )
    assert res.exit_code == 0 and _results(res.stdout)["ok"]
    res = runner.invoke(
        main,
        ["mv-check", f"{CORPUS}/plane_free.json", "-a", "x", "-b", "y", "--box", "3"],
    )
    assert res.exit_code == 0 and _results(res.stdout)["ok"]


def test_decompose_deterministic(runner):
    args = ["decompose", f"{CORPUS}/v4_Lx_plus_Ly.json", "--seed", "0"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    assert canonical_json(_results(first.output)) == canonical_json(_results(second.output))
    assert len(_results(first.output)["groups"]) == 2


def test_benson_membership(runner):
    res = runner.invoke(
        main, ["benson", f"{CORPUS}/v4_Lx.json", "--prime", "0", "--bound", "8"]
    )
    assert res.exit_code == 0 and _results(res.stdout)["member"] is True
    res = runner.invoke(
        main, ["benson", f"{CORPUS}/v4_Lx.json", "--prime", "1", "--bound", "8"]
    )
    assert res.exit_code == 0 and _results(res.stdout)["member"] is False


def test_parse_error_exit_code(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "mystery"}')
    res = runner.invoke(main, ["gb", str(bad)])
    assert res.exit_code == 1


def test_precondition_exit_code(runner):
    res = runner.invoke(
        main, ["benson", f"{CORPUS}/v4_k.json", "--prime", "0,1", "--bound", "8"]
    )
    assert res.exit_code == 2


def test_corrupted_differential_rejected(runner, tmp_path):
    with open(f"{CORPUS}/cx_koszul_xy.json", "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    # break d o d = 0 while keeping entries homogeneous
    doc["diffs"][0]["matrix"][0][0] = "x + y"
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "broken.json").write_text(json.dumps(doc))
    res = runner.invoke(main, ["axioms", "--corpus", str(corpus)])
    assert res.exit_code == 1


def test_empty_corpus_vacuous_pass(runner, tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    res = runner.invoke(main, ["axioms", "--corpus", str(corpus)])
    assert res.exit_code == 0
    body = json.loads(res.stdout)
    assert body["results"]["total"] == 0
    assert any("vacuous" in w for w in body["warnings"])


def test_char_validation(runner):
    res = runner.invoke(main, ["gb", f"{CORPUS}/ideal_empty.json", "--char", "2"])
    assert res.exit_code == 0
    res = runner.invoke(main, ["gb", f"{CORPUS}/ideal_empty.json", "--char", "5"])
    assert res.exit_code == 2
