import csv
import io
import os
import subprocess
import sys

import pytest

from isac import cli

MINIMAL = """
[sweep]
parameter = eps2
values = 1, 10
[run]
engine = analytic
metrics = communication_sinr
"""


def _rows(text):
    body = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def _write(tmp_path, text, name="cfg.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_minimal_run_row_count(tmp_path, capsys):
    assert cli.main(["run", _write(tmp_path, MINIMAL)]) == 0
    out = capsys.readouterr().out
    rows = _rows(out)
    assert len(rows) == 2
    assert list(rows[0]) == list(cli.CSV_COLUMNS)
    assert [r["sweep_value"] for r in rows] == ["1.0", "10.0"]
    assert all(r["wall_time_s"] == "" for r in rows)
    assert float(rows[0]["value"]) > float(rows[1]["value"])


def test_header_embeds_resolved_config(tmp_path, capsys):
    cli.main(["run", _write(tmp_path, MINIMAL)])
    out = capsys.readouterr().out
    assert "# network.lambda_bs = 4.618802153517006e-06" in out
    assert "# beam.phi = 0.5235987755982988" in out


def test_output_file_and_timing(tmp_path):
    out = tmp_path / "sub" / "o.csv"
    text = MINIMAL + f"output = {out}\ntiming = yes\n"
    assert cli.main(["run", _write(tmp_path, text)]) == 0
    rows = _rows(out.read_text())
    assert all(float(r["wall_time_s"]) >= 0 for r in rows)


@pytest.mark.parametrize("text,needle", [
    ("[network]\nlamda_bs = 3\n", "lamda_bs"),
    ("[netwrk]\nbeta = 3\n", "netwrk"),
    ("[network]\nbeta = 1.5\n", "beta"),
    ("[network]\nbeta = abc\n", "beta"),
    ("[sweep]\nparameter = n0\nvalues = 1\n", "n0"),
    ("[sweep]\nparameter = eps3\nvalues = 0.5, 1.5\n", "eps3"),
    ("[sweep]\nparameter = lambda_bs\nvalues = 1, inf\n", "finite"),
    ("[run]\nmetrics = positioning, bogus\n", "bogus"),
    ("[run]\nengine = quantum\n", "engine"),
    ("[beam]\nm1_db = -30\n", "m2"),
])
def test_config_errors_exit_2(tmp_path, capsys, text, needle):
    assert cli.main(["run", _write(tmp_path, text)]) == 2
    assert needle in capsys.readouterr().err


def test_missing_config_exit_2(tmp_path):
    assert cli.main(["run", str(tmp_path / "nope.ini")]) == 2


def test_validate_corrupted_beta_exit_2(tmp_path):
    assert cli.main(["validate", _write(tmp_path, "[network]\nbeta = 1.5\n")]) == 2


def test_validate_single_point(tmp_path, capsys):
    text = "[run]\nmetrics = communication_sinr\neps2_linear = 10\nn_trials = 20000\n"
    code = cli.main(["validate", _write(tmp_path, text)])
    out = capsys.readouterr().out
    assert code == 0
    assert "communication_sinr: max |analytic - montecarlo|" in out
    assert out.strip().endswith("PASS")


def test_validate_reports_fail_with_exit_3(tmp_path, capsys):
    text = "[run]\nmetrics = positioning\neps1_m2 = 2\nn_trials = 100000\n"
    assert cli.main(["validate", _write(tmp_path, text)]) == 3
    assert capsys.readouterr().out.strip().endswith("FAIL")


def test_engine_failure_exit_1(tmp_path, capsys):
    text = "[network]\nlambda_bs_per_km2 = 1e-9\n[run]\nmetrics = cond_s_given_p\neps1_m2 = 1e-9\n"
    assert cli.main(["run", _write(tmp_path, text)]) == 1
    assert "engine failure" in capsys.readouterr().err


def test_montecarlo_threshold_sweep_is_monotone(tmp_path, capsys):
    text = """
[sweep]
parameter = eps1
values = 0.5, 1, 2, 4
[run]
engine = montecarlo
metrics = positioning
n_trials = 5000
"""
    assert cli.main(["run", _write(tmp_path, text)]) == 0
    vals = [float(r["value"]) for r in _rows(capsys.readouterr().out)]
    assert vals == sorted(vals)


def test_pmf_rows(tmp_path, capsys):
    text = "[run]\nengine = both\nmetrics = pmf_participation\nn_trials = 1000\n"
    assert cli.main(["run", _write(tmp_path, text)]) == 0
    rows = _rows(capsys.readouterr().out)
    names = [r["metric"] for r in rows if r["engine"] == "analytic"]
    assert names == ["pmf_L0"] + [f"pmf_L{l}" for l in range(3, 11)]
    assert sum(float(r["value"]) for r in rows if r["engine"] == "analytic") == \
        pytest.approx(1.0, abs=1e-9)


def test_ergodic_rows(tmp_path, capsys):
    text = ("[run]\nengine = both\nmetrics = ergodic_rate, ergodic_mean_rms_crlb\n"
            "n_trials = 20000\n")
    assert cli.main(["run", _write(tmp_path, text)]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 4
    assert all(r["ci_half_width"] for r in rows if r["engine"] == "montecarlo")


def _run_subprocess(cfg, threads):
    env = dict(os.environ, ISAC_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "isac.cli", "run", cfg], env=env,
                          capture_output=True, check=True).stdout


def test_determinism_across_thread_counts(tmp_path):
    text = """
[sweep]
parameter = lambda_bs
values = 1, 10
[run]
engine = both
metrics = communication_sinr, joint_crlb_ser, ergodic_rate
n_trials = 10000
seed = 42
"""
    cfg = _write(tmp_path, text)
    a = _run_subprocess(cfg, 1)
    b = _run_subprocess(cfg, 4)
    c = _run_subprocess(cfg, 1)
    assert a == b == c


def test_reproduce_preset(tmp_path):
    out = tmp_path / "o"
    code = cli.main(["reproduce", "--preset", "comm-coverage", "--out", str(out),
                     "--engine", "analytic"])
    assert code == 0
    rows = _rows((out / "comm-coverage.csv").read_text())
    assert len(rows) == 18
    assert (out / "comm-coverage.ini").exists()


def test_reproduce_joint_coverage_brackets_reference(tmp_path):
    out = tmp_path / "o"
    assert cli.main(["reproduce", "--figure", "joint-coverage", "--out", str(out),
                     "--engine", "analytic"]) == 0
    rows = {float(r["sweep_value"]): float(r["value"])
            for r in _rows((out / "joint-coverage.csv").read_text())}
    lo, hi = rows[1.0], rows[10.0]
    assert lo < 0.1 and hi > 0.1 and hi / lo > 10


def test_all_presets_parse():
    for name, text in cli.PRESETS.items():
        cfg = cli.parse_config(text)
        assert cfg.engine == "both", name


def test_specfun_selftest(capsys):
    assert cli.main(["specfun-selftest"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out and all(line.startswith("PASS") for line in out)
