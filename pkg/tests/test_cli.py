"""End-to-end command-line runs: artifacts, determinism, exit codes."""

from __future__ import annotations

import json

import pytest

from purposedyn.cli import main
from purposedyn.scenarios import bundled_scenario_path

ANCHOR = str(bundled_scenario_path("point_mass_unit"))
LOGNORMAL = str(bundled_scenario_path("lognormal_ability"))


def test_validate_ok(capsys):
    assert main(["validate", "--scenario", ANCHOR]) == 0
    assert "a3_margin" in capsys.readouterr().out


def test_steady_state_artifacts(tmp_path):
    out = tmp_path / "run"
    assert main(["steady-state", "--scenario", ANCHOR, "--out", str(out)]) == 0
    rows = (out / "steady_state.csv").read_text().splitlines()
    assert rows[0].startswith("scenario,m_star,r_star,k_star,u_star,profit")
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "steady-state"
    assert len(manifest["scenario_sha256"]) == 64


def test_path_artifact_schema(tmp_path):
    out = tmp_path / "run"
    assert main(["path", "--scenario", ANCHOR, "--out", str(out), "--horizon", "5"]) == 0
    lines = (out / "path.csv").read_text().splitlines()
    assert lines[0] == "t,m_bar,r,per_period_profit"
    assert len(lines) == 7  # header + t = 0..5


def test_csv_output_is_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert main(["path", "--scenario", ANCHOR, "--out", str(out)]) == 0
        assert (
            main(["sosd-sweep", "--scenario", LOGNORMAL, "--out", str(out)]) == 0
        )
    assert (out1 / "path.csv").read_bytes() == (out2 / "path.csv").read_bytes()
    assert (out1 / "spread_experiments.csv").read_bytes() == (
        out2 / "spread_experiments.csv"
    ).read_bytes()


def test_threaded_sweep_matches_serial(tmp_path, monkeypatch):
    serial, threaded = tmp_path / "s", tmp_path / "t"
    assert main(["sosd-sweep", "--scenario", LOGNORMAL, "--out", str(serial)]) == 0
    monkeypatch.setenv("PURPOSEDYN_THREADS", "4")
    assert main(["sosd-sweep", "--scenario", LOGNORMAL, "--out", str(threaded)]) == 0
    assert (serial / "spread_experiments.csv").read_bytes() == (
        threaded / "spread_experiments.csv"
    ).read_bytes()


def test_all_subcommands_run(tmp_path):
    out = tmp_path / "all"
    for cmd, scenario in [
        ("steady-state", ANCHOR),
        ("path", ANCHOR),
        ("compare-ownership", ANCHOR),
        ("comparative-statics", ANCHOR),
        ("fosd-shift", ANCHOR),
        ("sosd-sweep", LOGNORMAL),
    ]:
        assert main([cmd, "--scenario", scenario, "--out", str(out)]) == 0


def test_gamma_override(tmp_path):
    out = tmp_path / "g"
    assert (
        main(
            [
                "sosd-sweep",
                "--scenario",
                LOGNORMAL,
                "--out",
                str(out),
                "--gamma",
                "0.07",
            ]
        )
        == 0
    )
    body = (out / "spread_experiments.csv").read_text()
    assert "0.07" in body
    assert "0.05" not in body.splitlines()[1]


def test_invalid_scenario_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    doc = json.loads(
        '{"name": "bad", "params": {"alpha": 1.2, "beta": 0.5, "a_e": 1.0, '
        '"a_k": 1.0, "c": 1.0, "delta": 0.5, "lambda": 0.5, '
        '"distribution": {"empirical": {"support": [1.0], "weights": [1.0]}}}}'
    )
    bad.write_text(json.dumps(doc))
    assert main(["steady-state", "--scenario", str(bad), "--out", str(tmp_path / "o")]) == 1
    assert "alpha" in capsys.readouterr().err


def test_missing_out_exits_1():
    assert main(["path", "--scenario", ANCHOR]) == 1


def test_infeasible_request_exits_2(tmp_path, monkeypatch):
    # the analytic saddle path is feasible from any nonnegative start
    # (purpose stays at r* along it), so force the error to check the
    # exit-code mapping
    import purposedyn.cli as cli_module
    from purposedyn.errors import InfeasiblePathError

    def boom(*args, **kwargs):
        raise InfeasiblePathError("forced")

    monkeypatch.setattr(cli_module, "transition_path", boom)
    assert main(["path", "--scenario", ANCHOR, "--out", str(tmp_path / "o")]) == 2


def test_sweep_without_gammas_exits_1(tmp_path):
    assert main(["sosd-sweep", "--scenario", ANCHOR, "--out", str(tmp_path / "o")]) == 1
