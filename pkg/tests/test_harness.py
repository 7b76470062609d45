import pytest

from artifact.harness import cli, experiments
from artifact.harness.checks import CRITERIA, SUITES, CheckResult, lower_bound, upper
from artifact.harness.config import ConfigError, ExperimentConfig, parse_config
from artifact.harness.verify import THREADS_ENV, UnknownSuiteError, VerifyReport, run_verify, thread_count


def test_parse_config_keys_and_types():
    cfg = parse_config(
        """
        # slab sweep
        grid.n = 128
        physics.c_list = 10, 20
        init.first_order = false
        output.path = out.csv
        """
    )
    assert cfg.grid_n == 128
    assert cfg.physics_c_list == (10.0, 20.0)
    assert cfg.init_first_order is False
    assert cfg.output_path == "out.csv"


def test_parse_config_defaults():
    assert parse_config("") == ExperimentConfig()


@pytest.mark.parametrize(
    "text",
    ["grid.size = 10", "grid.n 10", "grid.n = ten", "init.first_order = maybe", "grid.n = 4", "seed = -1"],
)
def test_parse_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_check_result_bounds():
    assert upper("a", 1.0, 1.0).passed
    assert not upper("a", float("nan"), 1.0).passed
    assert lower_bound("b", 0.1, 0.0).passed
    assert not lower_bound("b", 0.0, 0.0).passed


def test_report_lines():
    rep = VerifyReport((CheckResult("x", 1e-13, 1e-12, True), CheckResult("y", 2.0, 1.0, False)))
    assert rep.lines()[0] == "check,value,tol,pass"
    assert rep.lines()[1].endswith(",pass")
    assert rep.lines()[2].endswith(",FAIL")
    assert not rep.passed
    assert "overall: FAIL" in rep.table()


def test_criteria_registry_complete():
    assert sorted(CRITERIA) == list(range(1, 14))
    assert all(c.budget > 0 for c in CRITERIA.values())


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        run_verify(["nope"])


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert thread_count() == 3
    monkeypatch.setenv(THREADS_ENV, "junk")
    assert thread_count() == 1


def test_verify_suite_passes(tmp_path, capsys):
    report = tmp_path / "report.csv"
    assert cli.main(["verify", "--suite", "bessel", "--report", str(report)]) == 0
    lines = report.read_text().splitlines()
    assert lines[0] == "check,value,tol,pass"
    assert all(line.endswith(",pass") for line in lines[1:])
    assert "overall: PASS" in capsys.readouterr().out


def test_verify_exit_code_on_failure(monkeypatch):
    monkeypatch.setitem(SUITES, "broken", [lambda: [upper("broken", 2.0, 1.0)]])
    assert cli.main(["verify", "--suite", "broken"]) == 1


def test_cli_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_csv_is_deterministic(tmp_path):
    out = tmp_path / "disp.csv"
    header, rows = experiments.dispersion_table(modes=(1,), N=64)
    first = experiments.emit(header, rows, str(out), gnuplot=True)
    header, rows = experiments.dispersion_table(modes=(1,), N=64)
    assert experiments.emit(header, rows, None) == first
    assert out.read_text() == first
    assert out.with_suffix(".dat").read_text().startswith("# ")


def test_sweep_single_c_has_empty_slope():
    cfg = ExperimentConfig(grid_n=64, time_tmax=0.05, physics_c_list=(20.0,))
    header, rows = experiments.run_sweep(cfg)
    text = experiments.to_csv(header, rows)
    assert text.splitlines()[0] == "c,eps,sup_error,slope"
    assert text.splitlines()[1].endswith(",")


def test_cli_sweep_with_config(tmp_path, capsys):
    conf = tmp_path / "sweep.cfg"
    conf.write_text("grid.n = 64\ntime.tmax = 0.05\nphysics.c_list = 20, 40\n")
    assert cli.main(["sweep-c", "--config", str(conf), "--out", str(tmp_path / "s.csv")]) == 0
    assert (tmp_path / "s.csv").read_text().count("\n") == 3


def test_cli_solve_and_curl_div(tmp_path, capsys):
    conf = tmp_path / "solve.cfg"
    conf.write_text("grid.n = 32\ntime.tmax = 0.02\ntime.samples = 3\n")
    assert cli.main(["solve", "ep", "--config", str(conf)]) == 0
    assert cli.main(["solve", "rem", "--config", str(conf)]) == 0
    conf.write_text("grid.n = 16\n")
    assert cli.main(["curl-div", "--config", str(conf)]) == 0
    out = capsys.readouterr().out
    assert out.count("\n") > 6


def test_cli_collision_table(capsys):
    assert cli.main(["collision-table", "--c-list", "10", "--radii", "0,1"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3
