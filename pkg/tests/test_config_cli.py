import json

import pytest

from bch_resum import cli, config, suites
from bch_resum.errors import ConfigError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_defaults_load():
    cfg = config.load()
    assert cfg.seed == 0 and cfg.trials_for("marching") == 20
    assert cfg.tol("52") == 1e-11 and cfg.cap("equivalence") == 8


def test_env_override(tmp_path, monkeypatch):
    p = tmp_path / "c.conf"
    p.write_text("version = 1\nseed = 42\ntrials.marching = 3\n")
    monkeypatch.setenv(config.ENV_VAR, str(p))
    cfg = config.load()
    assert cfg.seed == 42 and cfg.trials_for("marching") == 3


@pytest.mark.parametrize("text", ["version = 2\n", "version = 1\nbogus = 3\n",
                                  "version = 1\nseed = x\n", "version = 1\nnot a pair\n"])
def test_bad_configs(tmp_path, text):
    p = tmp_path / "c.conf"
    p.write_text(text)
    with pytest.raises(ConfigError):
        config.load(p)


def test_overrides():
    cfg = config.load().with_overrides(trials=2, tol=1.0, seed=5, jobs=None)
    assert cfg.trials_for("marching") == 2 and cfg.tol("jk") == 1.0 and cfg.seed == 5


def test_coeffs_cli(capsys):
    code, out, _ = run(capsys, "coeffs", "t", "10")
    lines = out.split()
    assert code == 0 and len(lines) == 11 and lines[-1] == "-1382/155925"
    code, out, _ = run(capsys, "coeffs", "s", "2", "--json")
    assert json.loads(out)["coeffs"] == ["1/1", "0/1", "2/3"]


def test_perm_cli(capsys):
    _, out, _ = run(capsys, "perm", "expand-p", "2")
    assert out.splitlines() == ["+1 1 2", "-1 2 1"]
    _, out, _ = run(capsys, "perm", "marching", "3", "1")
    assert len(out.splitlines()) == 3


def test_eval_cli(capsys):
    code, out, _ = run(capsys, "eval", "h", "--args", "0.7,-0.3")
    assert code == 0 and float(out) == pytest.approx(-6.013216610194845)
    assert len(out.strip().lstrip("-").replace(".", "")) == 17
    code, _, err = run(capsys, "eval", "bracket", "--args", "0.5,-0.5")
    assert code == 2 and "error" in err


def test_g_eval_cli(capsys):
    vals = []
    for rep, args in (("perm", "0.3,0.5,-0.9"), ("orig", "0.3,0.5,-0.9"), ("over", "0,0.3,0.8,-0.1")):
        code, out, _ = run(capsys, "g", "eval", "--rep", rep, "--args", args)
        assert code == 0
        vals.append(float(out))
    assert max(vals) - min(vals) < 1e-13


def test_verify_marching_cli(capsys):
    code, out, _ = run(capsys, "verify", "marching", "--n", "5", "--trials", "20", "--seed", "7")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "identity,n,trials,max_residual,pass"
    assert [r.split(",")[2] for r in rows[1:]] == ["20"] * 4


def test_verify_json_deterministic_across_jobs(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "52", "--trials", "3", "--json", "--out", str(a)]) == 0
    assert cli.main(["verify", "52", "--trials", "3", "--json", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    reports = json.loads(a.read_text())
    assert len(reports) == 3 * 11
    assert list(reports[0]) == ["identity", "n", "trial", "seed", "inputs", "residual", "tolerance", "pass"]


def test_exit_code_on_failure(capsys):
    code, out, _ = run(capsys, "verify", "jk", "--n", "4", "--trials", "2", "--tol", "1e-30")
    assert code == 1 and out.splitlines()[1].endswith("false")


def test_bch_and_perturb_cli(capsys):
    code, out, _ = run(capsys, "bch", "approx", "--dim", "3", "--order", "2", "--bnorm", "1", "--seed", "1")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "eps,N,error,slope" and len(rows) == 1 + 2 * 3
    code, out, _ = run(capsys, "perturb", "--dim", "3", "--seed", "0", "--eps", "0.1,0.05")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "n,eps,exact,partial_sum,residual,slope" and len(rows) == 7


def test_run_suite_small(capsys):
    code, out, _ = run(capsys, "run", "coeffs")
    assert code == 0 and "coeffs_inverse,40,1,0.0,true" in out


def test_unknown_suite():
    with pytest.raises(KeyError):
        suites.tasks_for_suite("nope", config.load())
    with pytest.raises(SystemExit):
        cli.main(["run", "nope"])
