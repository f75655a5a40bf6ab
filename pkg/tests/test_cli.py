import csv
import json

import pytest

from kaprekar.cli import COLUMNS, RunConfig, execute, main, parse_digits


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="module")
def report_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("report")
    assert main(["report", "--digits", "3..5", "--out", str(out)]) == 0
    return out


def test_parse_digits():
    assert parse_digits("3..6") == (3, 4, 5, 6)
    assert parse_digits("4") == (4,)


@pytest.mark.parametrize("text", ["6..3", "x", "3...6"])
def test_parse_digits_bad(text):
    from kaprekar import ConfigurationError

    with pytest.raises(ConfigurationError):
        parse_digits(text)


def test_default_config():
    cfg = RunConfig()
    assert cfg.digits == (3, 4, 5, 6) and cfg.sample_size == 50_000 and cfg.seed == 0
    assert cfg.format == "csv" and cfg.tol == 1e-12 and not cfg.weighted_slopes


def test_enumerate_tables(tmp_path):
    assert main(["enumerate", "--digits", "3..5", "--out", str(tmp_path)]) == 0
    summary = read_csv(tmp_path / "summary.csv")
    assert list(summary[0]) == list(COLUMNS["summary"])
    assert summary[0] == {
        "D": "3", "n_states": "990", "n_attractors": "1", "largest_basin_fraction": "1",
        "mean_dist": "3.24141414141", "median_dist": "3", "max_dist": "6",
    }
    att = read_csv(tmp_path / "attractors.csv")
    d4 = [r for r in att if r["D"] == "4"]
    assert d4 == [{"D": "4", "attractor_id": "0", "period": "1", "members": "6174", "basin_size": "9990"}]
    assert any(int(r["period"]) > 1 for r in att if r["D"] == "5")


def test_entropy_tables(report_dir):
    rows = read_csv(report_dir / "entropy_3.csv")
    assert list(rows[0]) == list(COLUMNS["entropy"])
    assert rows[-1]["n_converged"] == "990" and float(rows[-1]["H_bits"]) == 0
    for D in (3, 4, 5):
        last = read_csv(report_dir / f"entropy_{D}.csv")[-1]
        assert float(last["H_norm"]) in (0.0, 1.0)
    h5 = {r["H_bits"] for r in read_csv(report_dir / "entropy_5.csv")}
    assert len(h5) > 1


def test_multiset_tables(report_dir):
    rows = read_csv(report_dir / "multisets_3.csv")
    assert list(rows[0]) == list(COLUMNS["multisets"])
    assert len(rows) == 210
    assert sum(int(r["size"]) for r in rows) == 990
    sizes = read_csv(report_dir / "multiset_sizes_3.csv")
    assert [r["size"] for r in sizes] == ["3", "6"]
    comp = read_csv(report_dir / "basin_composition_4.csv")
    assert sum(int(r["count"]) for r in comp) == 9990


def test_gap_tables(report_dir):
    for D in (3, 4, 5):
        field = read_csv(report_dir / f"gapfield_{D}.csv")
        assert list(field[0]) == list(COLUMNS["gapfield"])
        assert all(int(r["g2"]) <= int(r["g1"]) for r in field)
        pi = read_csv(report_dir / f"stationary_{D}.csv")
        assert abs(sum(float(r["pi"]) for r in pi) - 1) <= 1e-9  # 12-digit rounding per entry
    slopes = read_csv(report_dir / "slopes.csv")
    assert list(slopes[0]) == list(COLUMNS["slopes"])
    assert all(float(r["a"]) < 0 and r["weighted_flag"] == "0" for r in slopes)


def test_regress_tables(report_dir):
    reg = read_csv(report_dir / "regress.csv")
    assert list(reg[0]) == list(COLUMNS["regress"])
    assert [r["n"] for r in reg] == ["990", "9990", "50000"]
    eh = read_csv(report_dir / "easyhard.csv")
    g1 = next(r for r in eh if r["D"] == "3" and r["feature"] == "g1")
    assert float(g1["easy_mean"]) > float(g1["hard_mean"])


def test_manifest(report_dir):
    m = json.loads((report_dir / "manifest.json").read_text())
    assert m["config"]["digits"] == [3, 4, 5]
    assert "jobs" not in m["config"] and "out" not in m["config"]
    assert set(m["files"]) == {p.name for p in report_dir.iterdir()} - {"manifest.json"}
    assert m["metadata"]["3"]["stationary"]["residual_l1"] <= 1e-12


def test_csv_formatting(report_dir):
    raw = (report_dir / "summary.csv").read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")


def test_json_mirrors_csv(tmp_path):
    a, b = tmp_path / "c", tmp_path / "j"
    execute(RunConfig(digits=(3,), out=a), "regress")
    execute(RunConfig(digits=(3,), out=b, format="json"), "regress")
    rows = read_csv(a / "regress.csv")
    recs = json.loads((b / "regress.json").read_text())
    assert len(rows) == len(recs) == 1
    for k, v in rows[0].items():
        assert float(v) == recs[0][k]


def test_rerun_and_jobs_identical(tmp_path, report_dir):
    out = tmp_path / "again"
    assert main(["report", "--digits", "3..5", "--out", str(out), "--jobs", "3"]) == 0
    for p in report_dir.iterdir():
        assert (out / p.name).read_bytes() == p.read_bytes(), p.name


def test_weighted_flag(tmp_path):
    assert main(["gaps", "--digits", "4", "--out", str(tmp_path), "--weighted-slopes"]) == 0
    assert read_csv(tmp_path / "slopes.csv")[0]["weighted_flag"] == "1"


@pytest.mark.parametrize(
    "argv, category",
    [
        (["enumerate", "--digits", "3..25"], "config"),
        (["gaps", "--digits", "2"], "config"),
        (["enumerate", "--digits", "8"], "config"),
        (["regress", "--digits", "3", "--sample-size", "0"], "config"),
    ],
)
def test_error_exit(argv, category, tmp_path, capsys):
    assert main(argv + ["--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err.strip()
    assert err.startswith(f"error: {category}:") and "\n" not in err


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["enumerate", "--digits", "3", "--out", str(blocker / "sub")]) == 1
    assert capsys.readouterr().err.startswith("error: io:")


def test_bad_flag_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["enumerate", "--format", "xml"])
    assert e.value.code == 2
    assert capsys.readouterr().err.startswith("error: usage:")
