# Command-line front end.

import csv
import json

import pytest

from fdr_forge.cli import main
from fdr_forge.harness import exp_counterexample, stream_seed


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def output_lines(capsys) -> dict:
    out = capsys.readouterr().out
    return dict(line.split(": ", 1) if ": " in line else (line.rstrip(":"), "") for line in out.splitlines())


def test_adjust_bh(tmp_path, capsys):
    path = write(tmp_path, "p.csv", "0.01\n0.02\n0.9\n")
    assert main(["adjust", path, "--proc", "bh", "--q", "0.05"]) == 0
    lines = output_lines(capsys)
    assert lines["rejected"] == "1 2"
    assert lines["threshold"] == "0.02"
    assert float(lines["fdr_hat"]) == pytest.approx(0.03)


def test_adjust_by_is_a_subset(tmp_path, capsys):
    path = write(tmp_path, "p.csv", "0.01\n0.02\n0.9\n")
    main(["adjust", path, "--proc", "by", "--q", "0.05"])
    rejected = output_lines(capsys)["rejected"].split()
    assert set(rejected) <= {"1", "2"}


def test_adjust_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, "p.csv", "p\n0.2,0.01\n0.03,0.5\n")
    main(["adjust", path, "--proc", "storey", "--q", "0.1"])
    first = capsys.readouterr().out
    main(["adjust", path, "--proc", "storey", "--q", "0.1"])
    assert capsys.readouterr().out == first
    assert "m: 4" in first


def test_adjust_json_and_out_file(tmp_path, capsys):
    path = write(tmp_path, "p.json", json.dumps({"pvalues": [0.001, 0.04, 0.5]}))
    out = tmp_path / "result.json"
    assert main(["adjust", path, "--proc", "step-up", "--shape", "nu-uniform", "--q", "0.2", "--out", str(out)]) == 0
    body = json.loads(out.read_text(encoding="utf-8"))
    assert body["m"] == 3
    assert len(body["adjusted"]) == 3
    atoms = [a for a, _ in body["procedure"]["shape"]["nu"]]
    assert atoms == [1.0, 2.0, 3.0]


@pytest.mark.parametrize(
    "name, text, message",
    [
        ("empty.csv", "", "no p-values"),
        ("range.csv", "0.1\n1.5\n", "line 2, p-value #2"),
        ("text.csv", "0.1\nabc\n", "line 2, p-value #2"),
        ("bad.json", "[0.1, ", "invalid JSON"),
        ("kind.json", "[0.1, \"x\"]", "p-value #2"),
    ],
)
def test_adjust_input_errors(tmp_path, capsys, name, text, message):
    path = write(tmp_path, name, text)
    assert main(["adjust", path]) == 1
    assert message in capsys.readouterr().err


@pytest.mark.parametrize(
    "flags, message",
    [
        (["--proc", "bh", "--shape", "harmonic"], "--shape needs --proc step-up"),
        (["--proc", "by", "--pi", "0.5"], "--pi needs --proc step-up"),
        (["--proc", "bh", "--lambda", "0.3"], "--lambda needs --proc storey"),
    ],
)
def test_adjust_rejects_ignored_flags(tmp_path, capsys, flags, message):
    path = write(tmp_path, "p.csv", "0.01\n0.02\n0.9\n")
    assert main(["adjust", path, *flags]) == 1
    assert message in capsys.readouterr().err


def test_adjust_constant_pi(tmp_path, capsys):
    path = write(tmp_path, "p.csv", "0.08\n" + "0.99\n" * 9)
    assert main(["adjust", path, "--proc", "step-up", "--pi", "0.05", "--q", "0.045"]) == 0
    assert output_lines(capsys)["rejected"] == "1"


def test_adjust_missing_file(tmp_path, capsys):
    assert main(["adjust", str(tmp_path / "nope.csv")]) == 1


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as excinfo:
        main(["experiment", "holm"])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        main(["adjust"])
    assert excinfo.value.code == 1


def test_invalid_override(tmp_path, capsys):
    assert main(["experiment", "by-control", "--m", "5", "--out", str(tmp_path)]) == 1
    assert "does not take" in capsys.readouterr().err


def test_experiment_writes_reports(tmp_path, capsys):
    code = main(["experiment", "counterexample", "--m", "2", "--q", "0.5", "--reps", "20000", "--seed", "3",
                 "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "seed: 3" in out
    assert out.strip().endswith("PASS")
    body = json.loads((tmp_path / "counterexample.json").read_text(encoding="utf-8"))
    assert body["pass"] is True
    assert body["config"]["seed"] == 3
    assert (tmp_path / "counterexample_reports.csv").exists()


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "counterexample: m, q, n_reps, seed" in out
    assert "asymptotic-bh" in out


SWEEP = {
    "generators": [{"kind": "classical_iid", "m0": 25}, {"kind": "average_slopes", "m0": 50, "slopes": [0.0, 2.0]}],
    "procedures": ["bh", "by"],
    "m": [50],
    "q": [0.1],
    "n_reps": 200,
    "seed": 1,
}


def read_rows(path):
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def test_sweep_is_resumable(tmp_path, capsys):
    config = write(tmp_path, "sweep.json", json.dumps(SWEEP))
    out = tmp_path / "out"
    assert main(["sweep", config, "--out", str(out)]) == 0
    rows = read_rows(out / "sweep.csv")
    assert len(rows) == 4
    assert len({r["key"] for r in rows}) == 4
    before = (out / "sweep.csv").read_bytes()
    capsys.readouterr()
    assert main(["sweep", config, "--out", str(out)]) == 0
    assert "0 new cells, 4 skipped" in capsys.readouterr().out
    assert (out / "sweep.csv").read_bytes() == before


def test_sweep_reproduces_counterexample(tmp_path):
    config = {
        "generators": [{"kind": "counterexample"}],
        "procedures": ["bh"],
        "m": [2],
        "q": [0.5],
        "n_reps": 5000,
        "seed": stream_seed(0, "counterexample"),
    }
    path = write(tmp_path, "sweep.json", json.dumps(config))
    assert main(["sweep", path, "--out", str(tmp_path)]) == 0
    row = read_rows(tmp_path / "sweep.csv")[0]
    report = exp_counterexample(m=2, q=0.5, n_reps=5000, seed=0)
    assert float(row["mean_fdp"]) == report.tables["reports"][0]["mean_fdp"]


def test_sweep_config_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", json.dumps({**SWEEP, "procedures": []}))
    assert main(["sweep", bad, "--out", str(tmp_path)]) == 1
    assert "procedures" in capsys.readouterr().err
    broken = write(tmp_path, "broken.json", "{")
    assert main(["sweep", broken, "--out", str(tmp_path)]) == 1


def test_plot(tmp_path, capsys):
    table = write(tmp_path, "t.csv", "generator,m,sup_dev_R\na,100,0.1\na,1000,0.03\nb,100,0.2\nb,1000,0.05\n")
    image = tmp_path / "fig.png"
    assert main(["plot", table, "--x", "m", "--y", "sup_dev_R", "--group", "generator", "--out", str(image)]) == 0
    assert image.exists() and image.stat().st_size > 0
    assert main(["plot", table, "--x", "m", "--y", "missing"]) == 1


@pytest.mark.parametrize("name, extra", [("counterexample", ["--reps", "5000"]),
                                         ("storey-failure", ["--m", "200", "--reps", "2500"])])
def test_experiment_csv_does_not_depend_on_threads(tmp_path, name, extra):
    outputs = []
    for threads in ("1", "4"):
        out = tmp_path / threads
        main(["experiment", name, *extra, "--threads", threads, "--out", str(out)])
        outputs.append({p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))})
    assert outputs[0] and outputs[0] == outputs[1]


def test_sweep_csv_does_not_depend_on_threads(tmp_path):
    config = write(tmp_path, "sweep.json", json.dumps({**SWEEP, "n_reps": 3000}))
    tables = []
    for threads in ("1", "3"):
        out = tmp_path / threads
        assert main(["sweep", config, "--threads", threads, "--out", str(out)]) == 0
        tables.append((out / "sweep.csv").read_bytes())
    assert tables[0] == tables[1]
