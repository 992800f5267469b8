import hashlib
import json
import subprocess
import sys

import pytest

from ideal_lattices import cli
from ideal_lattices.dirichlet import CoeffTable, zeta_d_coeffs


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)


# -- tables -------------------------------------------------------------------------


def test_zeta_d_csv(capsys):
    code, out, _ = run(capsys, "zeta-d", "--d", "2", "--N", "10", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,coefficient" and len(lines) == 11
    assert CoeffTable.from_csv(out) == zeta_d_coeffs(2, 10)


def test_zeta_d_json(capsys):
    code, out, _ = run(capsys, "zeta-d", "--d", "1", "--N", "3", "--format", "json")
    assert code == 0 and json.loads(out) == {"N": 3, "coeffs": ["1", "1", "1"]}


@pytest.mark.parametrize(
    "argv",
    [
        ["zeta-d", "--d", "0", "--N", "3"],
        ["zeta-d", "--d", "2"],
        ["zeta-d", "--d", "2", "--N", "-4"],
        ["zeta-d", "--d", "2", "--N", "3", "--format", "xml"],
        ["zeta-d", "--d", "2", "--N", "3", "--threads", "0"],
        ["zeta-d", "--d", "2", "--N", "3", "--budget", "0"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == cli.EXIT_USAGE
    assert capsys.readouterr().err


def test_usage_error_exit_code_and_stream(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["zeta-d", "--d", "0", "--N", "3"])
    out, err = capsys.readouterr()
    assert exc.value.code == cli.EXIT_USAGE
    assert out == "" and "usage:" in err and "positive integer" in err


def test_count_ideals(capsys):
    _, out, _ = run(capsys, "count-ideals", "--poly", "1,0,1", "--N", "5", "--threads", "1")
    assert CoeffTable.from_csv(out).values() == [1, 1, 0, 1, 2]
    _, out, _ = run(capsys, "count-ideals", "--poly", "0,0,1", "--N", "4", "--threads", "1")
    assert CoeffTable.from_csv(out).values() == [1, 1, 1, 3]
    _, out, _ = run(capsys, "count-ideals", "--poly=0,-1,1", "--N", "6", "--threads", "1")
    assert CoeffTable.from_csv(out).values() == [1, 2, 2, 3, 2, 4]


@pytest.mark.parametrize("poly, fragment", [("1,2", "leading coefficient must be 1"), ("1,a,1", "coefficient 1")])
def test_count_ideals_rejects_bad_poly(capsys, poly, fragment):
    with pytest.raises(SystemExit) as exc:
        cli.main(["count-ideals", "--poly", poly, "--N", "4"])
    assert exc.value.code == cli.EXIT_USAGE
    assert fragment in capsys.readouterr().err


def test_count_ideals_budget_exit_code(capsys):
    code, out, err = run(capsys, "count-ideals", "--poly", "0,0,0,1", "--N", "200", "--budget", "100", "--threads", "1")
    assert code == cli.EXIT_RESOURCE and out == ""
    assert "2^" in err and "budget" in err


# -- crosscheck ----------------------------------------------------------------------


def test_crosscheck_all_equal(capsys):
    code, out, _ = run(capsys, "crosscheck", "--d", "2", "--N", "100", "--threads", "1")
    report = json.loads(out)
    assert code == 0 and report["mismatches"] == [] and report["skipped"] == []
    assert len(report["rows"]) == 100 and all(r["equal"] for r in report["rows"])
    assert report["rows"][3] == {"n": 4, "formula": "5", "bruteforce": "5", "equal": True}


def test_crosscheck_dimension_three(capsys):
    code, out, _ = run(capsys, "crosscheck", "--d", "3", "--N", "50", "--threads", "1")
    assert code == 0 and json.loads(out)["mismatches"] == []


def test_crosscheck_detects_injected_fault(capsys, monkeypatch):
    def broken(d, N):
        vals = zeta_d_coeffs(d, N).values()
        vals[6] += 1
        return CoeffTable(vals)

    monkeypatch.setattr(cli, "_formula_table", broken)
    code, out, _ = run(capsys, "crosscheck", "--d", "2", "--N", "20", "--threads", "1")
    assert code == cli.EXIT_MISMATCH and json.loads(out)["mismatches"] == [7]


def test_crosscheck_budget_is_a_skip(capsys):
    code, out, _ = run(capsys, "crosscheck", "--d", "3", "--N", "12", "--budget", "20", "--threads", "1")
    report = json.loads(out)
    assert code == 0 and report["mismatches"] == []
    assert report["skipped"] and 1 not in report["skipped"]
    skipped_row = report["rows"][report["skipped"][0] - 1]
    assert skipped_row["bruteforce"] is None and skipped_row["equal"] is None


def test_crosscheck_csv(capsys):
    _, out, _ = run(capsys, "crosscheck", "--d", "2", "--N", "3", "--format", "csv", "--threads", "1")
    assert out.splitlines() == ["n,formula,bruteforce,equal", "1,1,1,True", "2,2,2,True", "3,3,3,True"]


# -- reports -------------------------------------------------------------------------


def test_fit_zeta_d(capsys):
    code, out, _ = run(capsys, "fit", "--source", "zeta-d:2", "--N", "65536", "--sigma", "2", "--w", "1")
    report = json.loads(out)
    assert code == 0 and report["source"] == "zeta-d:2"
    assert report["c_hat"] == pytest.approx(0.5412, abs=1e-3)
    assert set(report) >= {"sigma", "w", "c_hat", "band", "checkpoints"}


@pytest.mark.parametrize("source", ["zx", "abelian", "sublattices:2", "poly:1,0,1", "dedekind:1,0,1"])
def test_fit_sources(capsys, source):
    code, out, _ = run(capsys, "fit", "--source", source, "--N", "256", "--threads", "1")
    assert code == 0 and json.loads(out)["checkpoints"][-1]["N"] == 256


def test_fit_too_small(capsys):
    code, _, err = run(capsys, "fit", "--source", "zeta-d:2", "--N", "7", "--sigma", "2")
    assert code == cli.EXIT_USAGE and "N >= 8" in err


@pytest.mark.parametrize("source", ["nope", "zeta-d:x", "zeta-d:0", "poly:2,3", "zx:4"])
def test_fit_bad_source(capsys, source):
    code, _, err = run(capsys, "fit", "--source", source, "--N", "64")
    assert code == cli.EXIT_USAGE and err


def test_density(capsys):
    code, out, _ = run(capsys, "density", "--d", "3", "--N", "4096")
    rows = json.loads(out)["checkpoints"]
    assert code == 0 and rows[0] == {"N": 1, "ratio": 1.0}
    ratios = [r["ratio"] for r in rows]
    assert all(a > b for a, b in zip(ratios[-5:], ratios[-4:]))
    code, _, _ = run(capsys, "density", "--d", "1", "--N", "64")
    assert code == cli.EXIT_USAGE


# -- cache and determinism -------------------------------------------------------------


def test_cache_round_trip(capsys, tmp_path):
    argv = ["zeta-d", "--d", "3", "--N", "500", "--cache-dir", str(tmp_path)]
    _, fresh, _ = run(capsys, *argv)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    _, cached, _ = run(capsys, *argv)
    assert hashlib.sha256(fresh.encode()).digest() == hashlib.sha256(cached.encode()).digest()


def test_cache_is_actually_read(capsys, tmp_path):
    argv = ["zeta-d", "--d", "2", "--N", "5", "--cache-dir", str(tmp_path)]
    run(capsys, *argv)
    (path,) = tmp_path.glob("*.json")
    entry = json.loads(path.read_text())
    entry["table"]["coeffs"][0] = "42"
    path.write_text(json.dumps(entry))
    _, out, _ = run(capsys, *argv)
    assert out.splitlines()[1] == "1,42"


def test_cache_ignores_stale_version(capsys, tmp_path, monkeypatch):
    argv = ["zeta-d", "--d", "2", "--N", "5", "--cache-dir", str(tmp_path)]
    monkeypatch.setattr(cli, "__version__", "0.0.0-old")
    run(capsys, *argv)
    (old,) = tmp_path.glob("*.json")
    entry = json.loads(old.read_text())
    entry["table"]["coeffs"][0] = "42"
    old.write_text(json.dumps(entry))
    monkeypatch.undo()
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)
    _, out, _ = run(capsys, *argv)
    assert out.splitlines()[1] == "1,1"


def test_cache_ignores_corrupt_entry(capsys, tmp_path):
    argv = ["zeta-d", "--d", "2", "--N", "5", "--cache-dir", str(tmp_path)]
    run(capsys, *argv)
    (path,) = tmp_path.glob("*.json")
    path.write_text("{not json")
    _, out, _ = run(capsys, *argv)
    assert CoeffTable.from_csv(out) == zeta_d_coeffs(2, 5)


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "cache"))
    run(capsys, "count-ideals", "--poly", "1,0,1", "--N", "30", "--threads", "1")
    assert len(list((tmp_path / "cache").glob("poly-*.json"))) == 1


def test_cache_keys_separate_parameters(capsys, tmp_path):
    for d in ("2", "3"):
        run(capsys, "zeta-d", "--d", d, "--N", "20", "--cache-dir", str(tmp_path))
    _, out, _ = run(capsys, "zeta-d", "--d", "2", "--N", "20", "--cache-dir", str(tmp_path))
    assert CoeffTable.from_csv(out) == zeta_d_coeffs(2, 20)
    assert len(list(tmp_path.glob("*.json"))) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["count-ideals", "--poly", "0,-1,0,1", "--N", "300"],
        ["crosscheck", "--d", "3", "--N", "40"],
    ],
)
def test_output_independent_of_threads(capsys, argv):
    outputs = {run(capsys, *argv, "--threads", t)[1] for t in ("1", "2", "4")}
    assert len(outputs) == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ideal_lattices", "zeta-d", "--d", "2", "--N", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "n,coefficient\n1,1\n2,2\n3,3\n4,5\n"
    proc = subprocess.run(
        [sys.executable, "-m", "ideal_lattices", "zeta-d", "--d", "0", "--N", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 1 and "usage" in proc.stderr
