import csv
import json
import subprocess
import sys

import pytest

from sl2cat import cli
from sl2cat.errors import ResourceLimit


def run_main(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("args", [["--cutoff", "-1"], ["--field", "prime:3", "--n-max", "3"],
                                  ["--jobs", "0"], ["--field", "prime:4"], ["--suite", "nope"],
                                  ["--verify-cache"]])
def test_usage_errors_exit_2(args, capsys):
    try:
        code = cli.main(args)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_qidentities_pass(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = run_main(["--suite", "qidentities", "--n-max", "6", "--out", str(out)], capsys)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["summary"]["fail"] == 0 and rep["summary"]["pass"] == rep["summary"]["total"] > 0
    assert rep["config"]["n_max"] == 6
    assert all(r["runtime_ms"] is None for r in rep["checks"])
    assert {"suite", "check", "params", "status", "expected", "got", "runtime_ms"} <= set(rep["checks"][0])


def test_report_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_main(["--suite", "polsym", "--suite", "qidentities", "--n-max", "4", "--out", str(a)], capsys)
    run_main(["--suite", "qidentities", "--suite", "polsym", "--n-max", "4", "--jobs", "2",
              "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_ordering_suite_then_params(tmp_path, capsys):
    out = tmp_path / "r.json"
    run_main(["--suite", "qidentities", "--n-max", "10", "--out", str(out)], capsys)
    checks = json.loads(out.read_text())["checks"]
    hs = [c["params"]["n"] for c in checks if c["check"] == "hilbertsym"]
    assert hs == sorted(hs)


def test_timings_flag(tmp_path, capsys):
    out = tmp_path / "r.json"
    run_main(["--suite", "polsym", "--n-max", "3", "--timings", "--out", str(out)], capsys)
    assert all(isinstance(r["runtime_ms"], float) for r in json.loads(out.read_text())["checks"])


def test_cache_roundtrip_and_corruption(tmp_path, capsys, caplog):
    cache = tmp_path / "cache"
    a, b, c = (tmp_path / f"{x}.json" for x in "abc")
    base = ["--suite", "polsym", "--n-max", "4", "--cache-dir", str(cache)]
    run_main(base + ["--out", str(a)], capsys)
    entries = sorted(cache.rglob("*.json"))
    assert entries
    run_main(base + ["--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()
    entries[0].write_text("{not json")
    with caplog.at_level("WARNING", logger="sl2cat"):
        run_main(base + ["--out", str(c)], capsys)
    assert "corrupt cache entry" in caplog.text
    assert a.read_bytes() == c.read_bytes()
    assert json.loads(entries[0].read_text())["value"]["status"] == "pass"


def test_cache_key_depends_on_field_and_cutoff():
    t = ("polsym", "polsym", {"k": 1, "l": 1, "r": 1})
    k1 = cli.cache_key(t, 10, "rational")
    assert k1 != cli.cache_key(t, 10, "prime:101")
    assert k1 != cli.cache_key(t, 8, "rational")
    assert k1 == cli.cache_key(t, 10, "rational")


def test_cache_put_get(tmp_path):
    c = cli.Cache(str(tmp_path))
    c.put("ab" * 32, {"status": "pass", "got": [1, 2]})
    assert c.get("ab" * 32) == {"status": "pass", "got": [1, 2]}
    assert c.get("cd" * 32) is None


def test_verify_cache_detects_tampering(tmp_path, capsys, caplog):
    cache = tmp_path / "cache"
    base = ["--suite", "qidentities", "--n-max", "2", "--cache-dir", str(cache)]
    run_main(base + ["--out", str(tmp_path / "a.json")], capsys)
    for p in cache.rglob("*.json"):
        data = json.loads(p.read_text())
        data["value"]["got"] = "tampered"
        p.write_text(json.dumps(data))
    with caplog.at_level("INFO", logger="sl2cat"):
        run_main(base + ["--verify-cache", "-v", "--out", str(tmp_path / "b.json")], capsys)
    assert "differs from recomputation" in caplog.text


def test_resource_limit_marks_skipped(monkeypatch, tmp_path, capsys):
    def boom(p, cutoff, fld):
        raise ResourceLimit("too big")

    monkeypatch.setitem(cli.CHECKS, "polsym", boom)
    out = tmp_path / "r.json"
    code, _, _ = run_main(["--suite", "polsym", "--n-max", "2", "--out", str(out)], capsys)
    rep = json.loads(out.read_text())
    assert code == 0
    assert rep["summary"]["skipped"] == rep["summary"]["total"] > 0
    assert rep["checks"][0]["got"] == {"reason": "too big"}


def test_failure_gives_exit_1(monkeypatch, tmp_path, capsys):
    monkeypatch.setitem(cli.CHECKS, "polsym", lambda p, c, f: (False, True, False))
    code, _, err = run_main(["--suite", "polsym", "--n-max", "2", "--out", str(tmp_path / "r.json")], capsys)
    assert code == 1 and "FAIL" in err


def test_theta_cohomology_csv(tmp_path, capsys):
    out, table = tmp_path / "r.json", tmp_path / "t.csv"
    code, _, _ = run_main(["--suite", "theta-cohomology", "--n-max", "3", "--cutoff", "16",
                           "--out", str(out), "--csv", str(table)], capsys)
    assert code == 0
    rows = list(csv.reader(table.open()))
    assert rows[0] == ["n", "k", "r", "d", "dim"]
    # cohomology sits in degree r = n - k only
    assert all(int(r[2]) == int(r[0]) - int(r[1]) for r in rows[1:])


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "sl2cat", "--suite", "qidentities", "--n-max", "3",
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["tool"] == "sl2cat"
