import json
from pathlib import Path

import pytest

from schurpos import cli
from schurpos.schur import DEFAULT_CACHE

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def run(capsys, tmp_path):
    def _run(*argv):
        code = cli.main([*argv, "--cache-dir", str(tmp_path / "cache")])
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


def _normalised(text):
    doc = json.loads(text)
    for r in doc:
        r["elapsed_ms"] = 0
    return doc


def test_syt(run):
    assert run("syt", "3,3,2,2") == (0, "252\n", "")
    assert run("syt", "5") == (0, "1\n", "")
    assert run("syt", "3^2,2^2")[1] == "252\n"
    assert run("syt", "5,5", "--frobenius", "--oracle")[1] == "42\n"
    code, out, _ = run("syt", "2,1", "--hooks")
    assert out.splitlines()[-1] == "2"
    doc = json.loads(run("syt", "4,4,1,1", "--format", "json")[1])
    assert doc["count"] == "300"


def test_syt_malformed(run):
    code, out, err = run("syt", "3,a,1")
    assert code == 2 and "'a'" in err
    code, _, err = run("syt", "1,3")
    assert code == 2


def test_syt_oracle_bound(run):
    assert run("syt", "7,6", "--oracle")[0] == 3
    assert run("syt", "7,6", "--oracle", "--oracle-bound", "13")[0] == 0


def test_table(run):
    assert run("table", "4") == (0, "1 13 9 1\n", "")
    assert run("table", "3", "--involutions")[1] == "1 2 1\n"
    assert run("table", "2", "--class", "theta", "--involutions")[1] == "1 0\n"
    assert run("table", "6", "--oracle")[0] == 0
    assert run("table", "10", "--oracle")[0] == 3
    assert run("table", "10", "--oracle", "--brute-bound", "10", "--involutions")[0] == 0
    assert run("table", "4", "--format", "csv")[1] == "k,count\n1,1\n2,13\n3,9\n4,1\n"
    doc = json.loads(run("table", "25", "--format", "json")[1])
    assert doc["counts"][0] == "1" and all(isinstance(c, str) for c in doc["counts"])


def test_table_plot(run, tmp_path):
    path = tmp_path / "table.png"
    assert run("table", "12", "--plot", str(path))[0] == 0
    assert path.stat().st_size > 1000


def test_lr(run):
    code, out, _ = run("lr", "2,1", "1")
    assert out == "s(3,1) + s(2,2) + s(2,1,1)\n"


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["thm1_1", "--m", "2", "--n", "5"], "thm1_1_m2_n5.json"),
        (["conj-g", "--n", "3"], "conj_g_n3.json"),
        (["conj_i_theta_numeric", "--n", "8"], "conj_i_theta_numeric_n8.json"),
    ],
)
def test_verify_golden(run, argv, golden):
    code, out, _ = run("verify", *argv, "--format", "json")
    assert code == 0
    assert _normalised(out) == json.loads((GOLDEN / golden).read_text())


def test_verify_human_and_csv(run):
    code, out, _ = run("verify", "thm1_1", "--m", "2", "--n", "5")
    assert code == 0 and "thm1_1a m=2 n=5: holds" in out and "90000 >= 10584" in out
    code, out, _ = run("verify", "thm1_1b", "--m", "1", "--n", "4", "--format", "csv")
    assert out.splitlines() == ["statement,params,k,status", "thm1_1b,m=1;n=4,2,holds", "thm1_1b,m=1;n=4,3,holds"]


def test_verify_schema(run):
    code, out, _ = run("verify", "thm3_1", "--m", "1", "--n", "5", "--format", "json")
    assert code == 0
    for r in json.loads(out):
        assert set(r) == {"statement", "params", "verdicts", "elapsed_ms", "tool_version"}
        for v in r["verdicts"]:
            assert set(v) <= {"k", "status", "witness"}


def test_verify_errors(run):
    assert run("verify", "thm9_9", "--n", "3")[0] == 2
    assert run("verify", "conj-g")[0] == 2
    assert run("verify", "conj-f", "--n", "9")[0] == 3
    assert run("verify", "conj-g", "--n", "4", "--budget", "g=6")[0] == 3
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "conj-g", "--n", "3", "--bogus"])
    assert exc.value.code == 2


def test_verify_figures(run, tmp_path):
    for argv in (["conj-g", "--n", "5"], ["cor2_3", "--m", "2", "--n", "4"], ["conj-l-theta-numeric", "--n", "12"]):
        path = tmp_path / f"{argv[0]}.png"
        assert run("verify", *argv, "--figure", str(path))[0] == 0
        assert path.stat().st_size > 1000


def test_cache_commands(run, tmp_path):
    DEFAULT_CACHE.clear()
    code, out, _ = run("cache", "stats")
    assert "entries: 0" in out
    assert run("verify", "conj-f", "--n", "3")[0] == 0
    code, out, _ = run("cache", "stats", "--format", "json")
    stats = json.loads(out)
    assert stats["entries"] > 0
    exported = tmp_path / "export.v1"
    assert run("cache", "export", str(exported))[0] == 0
    assert run("cache", "clear")[0] == 0
    assert "entries: 0" in run("cache", "stats")[1]
    assert run("cache", "import", str(exported))[0] == 0
    assert json.loads(run("cache", "stats", "--format", "json")[1])["entries"] == stats["entries"]
    again = tmp_path / "again.v1"
    run("cache", "export", str(again))
    assert again.read_bytes() == exported.read_bytes()


def test_cache_import_rejects_corrupt(run, tmp_path):
    bad = tmp_path / "bad.v1"
    bad.write_text("v1 1|1\t2:1;1,1:1\nv1 2|1\t3:x;2,1:1\n")
    code, _, err = run("cache", "import", str(bad))
    assert code == 2 and "line 2" in err
    assert "entries: 0" in run("cache", "stats")[1]


def test_warm_cache_gives_identical_report(run):
    DEFAULT_CACHE.clear()
    first = _normalised(run("verify", "conj-f", "--n", "4", "--format", "json")[1])
    DEFAULT_CACHE.clear()
    second = _normalised(run("verify", "conj-f", "--n", "4", "--format", "json")[1])
    assert first == second
