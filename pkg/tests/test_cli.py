import json
from pathlib import Path

import pytest

from cftcurves import cli
from cftcurves.config import ConfigError, ExperimentConfig, load_experiment
from cftcurves.lseries import TheoryViolation

ROOT = Path(__file__).resolve().parents[1]
MOD_2P = "[[{u: [2, 1], branch: plus}, 2]]"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _small_config(tmp_path, **extra):
    lines = ["curves: [X+, X-]", "shape: 2P", "shape_degree: 1", "order: 2",
             "orientation: arithmetic", "expected: {}"]
    lines += [f"{k}: {v}" for k, v in extra.items()]
    p = tmp_path / "small.yaml"
    p.write_text("\n".join(lines) + "\n")
    return p


def test_zeta_ok_and_json(capsys):
    code, out, _ = run(["zeta", "X+", "X-", "--expect-equal", "--format", "json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["all_equal"] is True


def test_zeta_verdict_failure(capsys):
    code, _, _ = run(["zeta", "X+", "E", "--expect-equal"], capsys)
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["zeta", "no/such/file.yaml"],
    ["rayclass", "X+", "--modulus", "[[inf, 1]]"],
    ["rayclass", "X+", "--modulus", "[[{u: [0, 1], branch: plus}, -1]]"],
    ["rayclass", "X+", "--modulus", "nope: ["],
    ["dynsys-check", "X+", "--modulus", "[]"],
    ["places"],
    ["frobnicate"],
])
def test_input_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_curve_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("q: 3\nf: [0, 0, 0, 1]\n")
    code, _, err = run(["zeta", str(bad)], capsys)
    assert code == 2 and "squarefree" in err
    extra = tmp_path / "extra.yaml"
    extra.write_text("q: 3\nf: [1, 1, 0, 1]\ngenus: 1\n")
    code, _, err = run(["zeta", str(extra)], capsys)
    assert code == 2 and "genus" in err
    broken = tmp_path / "broken.yaml"
    broken.write_text("q: 3\nf: [1, 1\n")
    code, _, err = run(["zeta", str(broken)], capsys)
    assert code == 2 and "line" in err


def test_threads_env_validated(monkeypatch, capsys):
    monkeypatch.setenv("CFTCURVES_THREADS", "zero")
    assert run(["zeta", "X+"], capsys)[0] == 2


def test_invariant_violation_maps_to_3(monkeypatch, capsys):
    def broken(*a, **k):
        raise TheoryViolation("forced")
    monkeypatch.setattr(cli, "l_polynomial", broken)
    code, _, err = run(["lseries", "X+", "--modulus", MOD_2P, "--order", "2"], capsys)
    assert code == 3 and "forced" in err


def test_unknown_config_keys(tmp_path):
    p = _small_config(tmp_path, colour="blue")
    with pytest.raises(ConfigError, match="colour"):
        load_experiment(p)
    q = tmp_path / "nested.yaml"
    q.write_text("bounds: {B: 3, depth: 4}\n")
    with pytest.raises(ConfigError, match="bounds: unknown key"):
        load_experiment(q)


def test_shipped_configs_load():
    cfg = load_experiment(ROOT / "configs" / "xpm_covers.yaml")
    assert cfg == ExperimentConfig()
    for name in ("x_plus", "x_minus", "elliptic"):
        code = cli.main(["zeta", str(ROOT / "configs" / f"{name}.yaml")])
        assert code == 0


def test_places_rayclass_lseries(capsys):
    code, out, _ = run(["places", "X-", "--max-degree", "6", "--format", "json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert [d["count"] for d in rep["degrees"]] == [3, 4, 6, 24, 57, 115]
    code, out, _ = run(["rayclass", "X+", "--modulus", MOD_2P, "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["torsion_order"] == 7 * 2 * 3 // 2
    code, out, _ = run(["lseries", "X+", "--modulus", MOD_2P, "--order", "3", "--exact"], capsys)
    assert code == 0


def test_covers_experiment_verdict(tmp_path, capsys):
    # order-2 covers over 2P with P of degree one do not separate the curves
    cfg = _small_config(tmp_path)
    code, out, _ = run(["covers-experiment", str(cfg)], capsys)
    assert code == 1 and "passed: False" in out


def test_deterministic_output(tmp_path, capsys, monkeypatch):
    cfg = _small_config(tmp_path)
    outs = []
    for threads in ("1", "1", "2"):
        monkeypatch.setenv("CFTCURVES_THREADS", threads)
        path = tmp_path / f"out{len(outs)}.json"
        run(["covers-experiment", str(cfg), "--json", str(path)], capsys)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    a = run(["dynsys-check", "X+", "--modulus", MOD_2P, "--samples", "15", "--seed", "4",
             "--format", "json"], capsys)
    b = run(["dynsys-check", "X+", "--modulus", MOD_2P, "--samples", "15", "--seed", "4",
             "--format", "json"], capsys)
    assert a[0] == 0 and a[1] == b[1]


def test_json_roundtrip(tmp_path, capsys):
    path = tmp_path / "z.json"
    code, out, _ = run(["zeta", "X+", "E", "--json", str(path)], capsys)
    assert code == 0
    rep = json.loads(path.read_text())
    assert json.loads(json.dumps(rep)) == rep
    assert "X+" in out and "E" in out
