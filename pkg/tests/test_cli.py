import json

import pytest
from click.testing import CliRunner

from slicetower.cli import JobConfig, cmd_chart, main


@pytest.fixture
def run():
    runner = CliRunner()
    return lambda *args: runner.invoke(main, list(args))


def test_chart_quotient_has_arrow_on_u2sigma(run):
    res = run("chart", "--n", "4", "--quotient", "2", "--window", "6", "--format", "json")
    assert res.exit_code == 0
    data = json.loads(res.output)
    arrows = [d for d in data["differentials"] if d["from"]["name"] == "u2s"]
    assert arrows and arrows[0]["page"] <= 3


def test_chart_collapse_two_rows(run):
    res = run("chart", "--n", "2", "--quotient", "1", "--window", "8", "--format", "json")
    data = json.loads(res.output)
    assert res.exit_code == 0 and {e["s"] for e in data["entries"]} == {0, 1}
    assert data["differentials"] == []


def test_chart_empty_window(run):
    res = run("chart", "--n", "2", "--window", "0", "--format", "json")
    assert res.exit_code == 0 and json.loads(res.output)["entries"] == []
    assert run("chart", "--n", "2", "--window", "0").exit_code == 0


@pytest.mark.parametrize("args", [["--n", "6"], ["--n", "4", "--quotient", "3"], ["--n", "4", "--window", "-1"],
                                  ["--n", "4", "--format", "png"]])
def test_chart_usage_errors(run, args):
    assert run("chart", *args).exit_code == 2


def test_chart_svg_and_tsv(run):
    svg = run("chart", "--n", "4", "--quotient", "2", "--window", "2").output
    assert svg.startswith("<svg") and "<line" in svg and "d3" in svg
    tsv = run("chart", "--n", "2", "--window", "2", "--format", "tsv").output
    head, *rows = tsv.splitlines()
    assert head.split("\t") == ["s", "V", "stem", "mackey", "names", "glyph"]
    assert any(r.split("\t")[-1] == "Z" for r in rows)


def test_chart_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SLICETOWER_CACHE_DIR", str(tmp_path))
    cfg = JobConfig(2, 1, 2, "tsv")
    first = cmd_chart(cfg)
    assert list(tmp_path.iterdir()) and cmd_chart(cfg) == first


@pytest.mark.parametrize("args", [["shift-identities", "--n", "4"], ["kw", "--max-n", "5"], ["les", "--n", "4", "--k", "1"],
                                  ["transfer-systems", "--n", "8"], ["mackey-axioms", "--n", "2"],
                                  ["functoriality", "--n", "4"]])
def test_verify_pass(run, args):
    res = run("verify", *args)
    assert res.exit_code == 0, res.output
    assert res.output.rstrip().endswith("pass")


def test_verify_failure_exit(run, monkeypatch):
    from slicetower import cli, suites
    bad = suites.SuiteResult("kw")
    bad.add("forced", False)
    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: bad)
    assert run("verify", "kw").exit_code == 1


def test_verify_unknown_suite(run):
    assert run("verify", "nope").exit_code == 2


def test_pi(run):
    res = run("pi", "--n", "4", "--j", "0", "--deg", "0")
    assert res.exit_code == 0 and "= Z\n" in res.output
    assert "= Z\n" in run("pi", "--n", "4", "--j", "0", "--deg", "2 - 1*L(1)").output
    top = run("pi", "--n", "4", "--j", "0", "--deg", "-2 + 1*s").output.splitlines()[1]
    assert top == "C_4/C_4: Z/2"
    assert run("pi", "--n", "4", "--deg", "1*L(").exit_code == 2
    assert run("pi", "--n", "4", "--j", "1", "--deg", "0", "--e-infinity").exit_code == 2
    assert run("pi", "--n", "2", "--deg", "0", "--e-infinity").exit_code == 0
