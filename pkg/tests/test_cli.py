"""Command-line interface: argument handling and artifact emission."""

import csv
import json

import pytest

from isacsim.cli import main

TINY_SETS = [
    "--set", "n_sub=128",
    "--set", "n_ant=4",
    "--set", "pad_factor=2",
    "--set", "n_targets=2",
    "--set", "noise_power_dbm=-80.0",
]


def test_run_subcommand(tmp_path, capsys):
    rc = main(
        ["run", *TINY_SETS, "--seed", "7", "--out", str(tmp_path)]
    )
    assert rc == 0
    summary = json.loads((tmp_path / "drop.json").read_text())
    assert summary["seed"] == 7
    assert summary["n_targets"] == 2
    assert 0.0 <= summary["p_det"] <= 1.0
    printed = json.loads(capsys.readouterr().out)
    assert printed == summary


def test_run_with_periodogram_dumps(tmp_path):
    rc = main(
        ["run", *TINY_SETS, "--set", "n_saps=2", "--seed", "8",
         "--out", str(tmp_path), "--dump-periodograms"]
    )
    assert rc == 0
    assert (tmp_path / "scene.json").exists()
    assert (tmp_path / "fused.json").exists()
    for sap in (0, 1):
        assert (tmp_path / f"periodogram_sap{sap}.bin").exists()
        assert (tmp_path / f"periodogram_sap{sap}.json").exists()
        assert (tmp_path / f"peaks_sap{sap}.jsonl").exists()


def test_sweep_subcommand(tmp_path):
    rc = main(
        ["sweep", *TINY_SETS, "--seed", "5", "--out", str(tmp_path),
         "--axis", "noise_power_dbm", "--values=-85,-80", "--drops", "2"]
    )
    assert rc == 0
    with open(tmp_path / "results.csv") as fh:
        body = list(csv.reader(fh))[1:]
    assert len(body) == 2 * 4 * 2  # values x sap counts x filter settings
    assert (tmp_path / "manifest.json").exists()


def test_baseline_subcommand(tmp_path):
    rc = main(
        ["baseline", *TINY_SETS, "--seed", "6", "--out", str(tmp_path),
         "--values=-90", "--drops", "2"]
    )
    assert rc == 0
    assert (tmp_path / "baseline.csv").exists()


def test_config_yaml_plus_override(tmp_path):
    cfg_path = tmp_path / "cfg.yaml"
    cfg_path.write_text(
        "n_sub: 128\nn_ant: 4\npad_factor: 2\nn_targets: 1\n"
        "noise_power_dbm: -80.0\nn_saps: 1\n"
    )
    out = tmp_path / "out"
    rc = main(
        ["run", "--config", str(cfg_path), "--set", "n_targets=3",
         "--seed", "9", "--out", str(out)]
    )
    assert rc == 0
    assert json.loads((out / "drop.json").read_text())["n_targets"] == 3


def test_bad_set_syntax():
    with pytest.raises(SystemExit):
        main(["run", "--set", "novalue", "--seed", "1", "--out", "/tmp/x"])


def test_unknown_axis_rejected(tmp_path):
    with pytest.raises(SystemExit):
        main(
            ["sweep", "--seed", "1", "--out", str(tmp_path),
             "--axis", "humidity", "--values", "1", "--drops", "1"]
        )


def test_seed_required(tmp_path):
    with pytest.raises(SystemExit):
        main(["run", "--out", str(tmp_path)])
