"""End-to-end checks of the command-line interface."""

import csv
import json
import subprocess
import sys

import pytest

from hgalloc.cli import main


def write_config(tmp_path, **kwargs):
    base = dict(n_cellular=3, n_d2d_pairs=2, n_channels=2, n_trials=2,
                master_seed=424242)
    base.update(kwargs)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(base))
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_simulate_writes_capacity_and_opcounts(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    rc = main(["simulate", "--config", cfg, "--out", str(out)])
    assert rc == 0
    cap = read_csv(out / "capacity.csv")
    assert cap[0][0] == "param_value"
    algos = {r[1] for r in cap[1:]}
    assert algos == {"graph", "hypergraph"}
    ops = read_csv(out / "opcounts.csv")
    assert ops[0] == ["n_plus_m", "algorithm", "phase", "op_count"]
    assert len(ops) > 1


def test_simulate_algos_selection(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    rc = main(["simulate", "--config", cfg, "--out", str(out),
               "--algos", "no-d2d"])
    assert rc == 0
    cap = read_csv(out / "capacity.csv")
    assert [r[1] for r in cap[1:]] == ["no-d2d"]
    # no graph pipeline requested, so no op count file
    assert not (out / "opcounts.csv").exists()


def test_simulate_without_config_uses_defaults(tmp_path):
    out = tmp_path / "out"
    rc = main(["simulate", "--out", str(out), "--algos", "no-d2d"])
    assert rc == 0
    assert (out / "capacity.csv").exists()


def test_seed_override_changes_results(tmp_path):
    cfg = write_config(tmp_path)
    outs = {}
    for seed in (1, 2):
        out = tmp_path / f"out{seed}"
        rc = main(["simulate", "--config", cfg, "--out", str(out),
                   "--algos", "graph", "--seed", str(seed)])
        assert rc == 0
        outs[seed] = read_csv(out / "capacity.csv")[1][2]
    assert outs[1] != outs[2]


def test_sweep_over_channels(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    rc = main(["sweep", "--config", cfg, "--out", str(out),
               "--param", "K", "--values", "1,2,3", "--algos", "graph"])
    assert rc == 0
    rows = read_csv(out / "capacity.csv")
    assert [r[0] for r in rows[1:]] == ["1", "2", "3"]


def test_sweep_eta_parses_floats(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    rc = main(["sweep", "--config", cfg, "--out", str(out),
               "--param", "eta_db", "--values", "14,20.5",
               "--algos", "graph"])
    assert rc == 0
    rows = read_csv(out / "capacity.csv")
    assert [r[0] for r in rows[1:]] == ["14", "20.5"]


def test_cdf_outputs_per_ue_samples(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    rc = main(["cdf", "--config", cfg, "--out", str(out),
               "--algos", "graph,hypergraph"])
    assert rc == 0
    rows = read_csv(out / "cdf.csv")
    assert rows[0] == ["algorithm", "ue_class", "throughput_bps_hz"]
    # 2 algorithms x 2 trials x 5 UEs
    assert len(rows) == 1 + 2 * 2 * 5


def test_oracle_compare_small_instance(tmp_path):
    cfg = write_config(tmp_path, n_cellular=2, n_d2d_pairs=2, n_channels=2)
    out = tmp_path / "out"
    rc = main(["oracle-compare", "--config", cfg, "--out", str(out)])
    assert rc == 0
    rows = read_csv(out / "capacity.csv")
    by_algo = {r[1]: float(r[2]) for r in rows[1:]}
    assert set(by_algo) == {"graph", "hypergraph", "optimal"}
    assert by_algo["optimal"] >= by_algo["graph"] - 1e-6
    assert by_algo["optimal"] >= by_algo["hypergraph"] - 1e-6


def test_oracle_compare_rejects_large_instance(tmp_path, capsys):
    cfg = write_config(tmp_path, n_cellular=20, n_d2d_pairs=20,
                       n_channels=10)
    rc = main(["oracle-compare", "--config", cfg,
               "--out", str(tmp_path / "out")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_invalid_config_value_reports_error(tmp_path, capsys):
    cfg = write_config(tmp_path, n_channels=0)
    rc = main(["simulate", "--config", cfg, "--out", str(tmp_path / "out")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_algorithm_exits(tmp_path):
    cfg = write_config(tmp_path)
    with pytest.raises(SystemExit):
        main(["simulate", "--config", cfg, "--out", str(tmp_path / "out"),
              "--algos", "graph,magic"])


def test_missing_subcommand_exits():
    with pytest.raises(SystemExit):
        main([])


def test_console_entry_point(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    proc = subprocess.run(
        [sys.executable, "-m", "hgalloc.cli", "simulate", "--config", cfg,
         "--out", str(out), "--algos", "no-d2d"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "capacity.csv" in proc.stdout
    assert (out / "capacity.csv").exists()
