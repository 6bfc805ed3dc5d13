import json
import math
import subprocess
import sys

import numpy as np
import pytest

from mct import cli
from mct.grid import StepFunction
from mct.harness import (ExperimentConfig, SUITES, fit_slope, generate_corpus, run_suite)

REQUIRED = ["discretization", "embeddings", "hardy", "dsk", "cstar", "thm-main", "cor-lorentz",
            "weighted", "gamma", "sharpness", "gm", "pitt-homogeneity", "pitt-necessity",
            "campanato", "lipschitz", "appendix-a1", "appendix-a2"]


def test_corpus_reproducible():
    a, b = generate_corpus(5, 20), generate_corpus(5, 20)
    assert all(x == y for x, y in zip(a, b))
    assert any(x != y for x, y in zip(a, generate_corpus(6, 20)))


def test_corpus_shape():
    for f in generate_corpus(1, 100):
        assert -4 <= f.level <= 2 and 1 <= f.n_cells <= 64
        assert 0 < f.l1() < math.inf
        m = np.abs(f.coef)
        assert np.all(m >= 0.25 - 1e-12) and np.all(m <= 4 + 1e-12)
    assert all(f.dim == 2 for f in generate_corpus(1, 5, {"dim": 2}))


def test_corpus_count_zero():
    with pytest.raises(ValueError):
        generate_corpus(0, 0)


def test_fit_slope():
    xs = np.arange(1, 20, dtype=float)
    s, e = fit_slope(list(zip(xs, xs ** 2)))
    assert s == pytest.approx(2.0) and e == pytest.approx(0.0, abs=1e-12)
    assert fit_slope([(x, 3.0) for x in xs])[0] == 0.0
    ys = xs ** 0.5 * (1 + 0.05 * (-1) ** np.arange(xs.size))
    assert 0.45 <= fit_slope(list(zip(xs, ys)))[0] <= 0.55
    with pytest.raises(ValueError):
        fit_slope([(1, 1), (2, 0), (3, 1)])
    with pytest.raises(ValueError):
        fit_slope([(1, 1), (2, 2)])


def test_all_suites_registered():
    assert set(REQUIRED) <= set(SUITES)


def test_unknown_suite_lists_names():
    with pytest.raises(ValueError, match="cstar"):
        run_suite(ExperimentConfig("bogus"))


def test_empty_sweep_no_cases():
    r = run_suite(ExperimentConfig("appendix-a1", sweep={"N": []}))
    assert r.verdict == "no cases" and r.rows == []


def test_cstar_suite():
    r = run_suite(ExperimentConfig("cstar", params={"dims": [1]},
                                   sweep={"N_dim1": [10, 100, 1000]}))
    assert r.passed and all(1 <= row["ratio"] <= 3 for row in r.rows)


def test_lacunary_suite_slope():
    r = run_suite(ExperimentConfig("appendix-a1", sweep={"N": [4, 8, 16, 32, 64]}))
    assert r.passed and 0.4 <= r.summary["slope"] <= 0.6


def test_config_round_trip(tmp_path):
    cfg = ExperimentConfig("thm-main", params={"q": math.inf}, sweep={"lam": [0.25]},
                           corpus={"count": 3}, seed=9, tolerances={"stability": 0.2})
    p = tmp_path / "c.json"
    cfg.save(str(p))
    assert ExperimentConfig.load(str(p)) == cfg


def test_report_deterministic(tmp_path):
    cfg = ExperimentConfig("embeddings", corpus={"count": 5}, seed=3)
    a, b = run_suite(cfg), run_suite(cfg)
    a.to_csv(str(tmp_path / "a.csv"))
    b.to_csv(str(tmp_path / "b.csv"))
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert a.summary_json(False) == b.summary_json(False)


def test_small_suites_pass():
    for name in ("rearrangement", "hardy", "dsk", "weighted", "gamma", "lm-truncated",
                 "embeddings", "pitt-necessity", "appendix-a2"):
        r = run_suite(ExperimentConfig(name, params={"count": 20}, corpus={"count": 4}))
        assert r.passed, (name, r.summary)


# -- CLI ---------------------------------------------------------------------

def test_cli_family_and_norms(tmp_path, capsys):
    out = tmp_path / "f.json"
    assert cli.main(["family", "--name", "lacunary", "--param", "N=6", "--out", str(out)]) == 0
    capsys.readouterr()
    assert cli.main(["norm", "--input", str(out), "--space", "morrey", "--p", "2",
                     "--lambda", "0.5"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(1.0)
    assert cli.main(["d", "--input", str(out), "--p", "2", "--q", "inf", "--lambda", "0.25",
                     "--weight", "pow:-0.25"]) == 0
    v = json.loads(capsys.readouterr().out)["value"]
    assert cli.main(["d", "--input", str(out), "--p", "2", "--lambda", "0.25"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(v, rel=1e-12)
    assert cli.main(["fourier-norm", "--input", str(out), "--p", "2", "--lambda", "0.25",
                     "--m-lo", "-4", "--m-hi", "5", "--resolution", "16",
                     "--max-resolution", "32"]) == 0
    assert json.loads(capsys.readouterr().out)["lower_bound"] is True


def test_cli_usage_errors(tmp_path, capsys):
    assert cli.main(["norm", "--input", str(tmp_path / "missing.json"), "--space", "lorentz",
                     "--p", "2"]) == 2
    assert cli.main(["suite", "--name", "bogus"]) == 2
    f = tmp_path / "f.json"
    StepFunction(1, 0, {(0,): 1.0}).save(str(f))
    assert cli.main(["norm", "--input", str(f), "--space", "morrey", "--p", "2",
                     "--weight", "bad:1"]) == 2
    assert cli.main(["family", "--name", "modulated-box", "--param", "N=3",
                     "--out", str(tmp_path / "x.json")]) == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["norm", "--space", "nope"])
    assert e.value.code == 2


def test_cli_suite_exit_codes(tmp_path):
    cfg = tmp_path / "cfg.json"
    ExperimentConfig("cstar", params={"dims": [1]}, sweep={"N_dim1": [10, 100]}).save(str(cfg))
    out = tmp_path / "r.csv"
    assert cli.main(["suite", "--config", str(cfg), "--seed", "1", "--out", str(out)]) == 0
    assert out.exists() and (tmp_path / "r.json").exists()
    bad = tmp_path / "bad.json"
    ExperimentConfig("cstar", params={"dims": [1]}, sweep={"N_dim1": [10, 100]},
                     tolerances={"dim1_bracket": [5, 6]}).save(str(bad))
    assert cli.main(["suite", "--config", str(bad)]) == 1


def test_console_script_installed():
    r = subprocess.run([sys.executable, "-m", "mct.cli", "suite", "--name", "nope"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "available" in r.stderr


def test_partition_checks_agree():
    from mct.harness import _partition_check, _partition_check_structural
    for dim in (1, 2):
        for m in range(dim, 11):
            assert _partition_check(m, dim) is True
            assert _partition_check_structural(m, dim) is True
