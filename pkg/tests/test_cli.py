import csv
import io
import json

import pytest

from strategic_complexity.cli import main
from strategic_complexity.serialize import dumps_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def band_config(tmp_path):
    path = tmp_path / "band.json"
    path.write_text(json.dumps({"chi": 0.7, "rho_s": 0.65, "rho_u": 0.2,
                                "forced_simple": 0.1, "forced_obfuscate": 0.1}))
    return path


def test_solve_simple(capsys):
    code, out, err = run(capsys, "solve-simple", "--q", "0.75")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["tau"] == pytest.approx(2 / 3, abs=1e-12)
    assert doc["p_nondisc"] == pytest.approx(1 / 3, abs=1e-12)
    assert doc["p_simple"] == pytest.approx(7 / 12, abs=1e-12)
    assert doc["diagnostics"]["agreement"] < 1e-9
    assert len(doc["regions"]) == 3
    assert dumps_json(doc) == out


def test_solve_simple_no_interior(capsys):
    code, out, err = run(capsys, "solve-simple", "--q", "0.5")
    assert code == 2 and out == ""
    assert err.startswith("NO_INTERIOR_EQUILIBRIUM:") and err.count("\n") == 1


def test_solve_simple_q_one(capsys):
    code, out, _ = run(capsys, "solve-simple", "--q", "1.0")
    doc = json.loads(out)
    assert code == 0 and doc["tau"] == 0.5
    assert doc["diagnostics"]["tau_fixed_point"] is None
    assert "skipped" in doc["diagnostics"]["notice"]


def test_bad_flags_exit_one(capsys):
    assert run(capsys, "solve-simple")[0] == 1
    assert run(capsys, "solve-simple", "--q", "abc")[0] == 1
    assert run(capsys, "solve-simple", "--q", "1.5")[0] == 1
    assert run(capsys, "nonsense")[0] == 1


def test_solve_full_enumerate(capsys, band_config):
    code, out, _ = run(capsys, "solve-full", "--config", str(band_config), "--enumerate")
    assert code == 0
    doc = json.loads(out)
    classes = {e["classification"] for e in doc["equilibria"]}
    assert classes == {"SimpleBadNews", "SimpleGoodNews"}


def test_solve_full_single_and_override(capsys, band_config):
    code, out, _ = run(capsys, "solve-full", "--config", str(band_config), "--rho-s", "0.5", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and rows[0]["classification"] == "SimpleBadNews"


def test_solve_full_errors(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"chi": 0.7, "rho_s": 0.75, "rho_u": 0.2}))
    code, out, err = run(capsys, "solve-full", "--config", str(cfg))
    assert code == 2 and out == "" and err.startswith("INVALID_ORDERING")
    cfg.write_text(json.dumps({"chi": 0.7, "rho_s": 0.5, "rho_u": 0.2,
                               "forced_simple": 0.5, "forced_obfuscate": 0.5}))
    assert run(capsys, "solve-full", "--config", str(cfg))[0] == 1
    cfg.write_text(json.dumps({"chi": 0.7, "rho_s": 0.5, "rho_u": 0.2, "beta": 1}))
    assert run(capsys, "solve-full", "--config", str(cfg))[0] == 1
    cfg.write_text("not json")
    assert run(capsys, "solve-full", "--config", str(cfg))[0] == 1
    assert run(capsys, "solve-full", "--chi", "0.7")[0] == 1


def test_solve_full_no_convergence_exit_three(capsys, band_config):
    code, out, err = run(capsys, "solve-full", "--config", str(band_config), "--enumerate", "--max-iter", "1")
    assert code == 3 and out == "" and err.startswith("NO_CONVERGENCE")
    code, out, err = run(capsys, "solve-full", "--config", str(band_config), "--max-iter", "1")
    assert code == 3 and out == ""


def test_sweep_simple_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--model", "simple", "--param", "q", "--from", "0.68",
                       "--to", "0.99", "--steps", "50", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 50
    taus = [float(r["tau"]) for r in rows]
    assert all(b < a for a, b in zip(taus, taus[1:]))
    assert out.splitlines()[0] == ("param,value,status,tau,p_nondisc,p_simple,prob_obfuscate,"
                                   "prob_simple,prob_informative,prob_complex,ret_simple,"
                                   "ret_no_information,u_shape")


def test_sweep_reversed_and_flagged(capsys):
    assert run(capsys, "sweep", "--model", "simple", "--param", "q", "--from", "0.9",
               "--to", "0.7", "--steps", "5")[0] == 1
    code, out, _ = run(capsys, "sweep", "--model", "simple", "--param", "q", "--from", "0.6",
                       "--to", "0.9", "--steps", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4 and rows[0]["status"] == "no_interior_equilibrium"


def test_sweep_full_json(capsys, band_config):
    code, out, _ = run(capsys, "sweep", "--model", "full", "--config", str(band_config),
                       "--param", "chi", "--from", "0.66", "--to", "0.99", "--steps", "12",
                       "--branch", "SimpleGoodNews", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert any(r["equilibrium_lost"] for r in doc["rows"])
    assert dumps_json(doc) == out


def test_simulate_deterministic_and_passes(capsys, tmp_path):
    args = ["simulate", "--model", "simple", "--q", "0.75", "--n", "1000000", "--seed", "42"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and out1 == out2
    assert json.loads(out1)["verdict"] == "PASS"
    target = tmp_path / "r.json"
    assert run(capsys, *args, "--out", str(target))[1] == ""
    assert target.read_text() == out1


def test_simulate_full_and_errors(capsys):
    code, out, _ = run(capsys, "simulate", "--model", "full", "--n", "200000", "--seed", "3")
    assert code == 0 and json.loads(out)["verdict"] == "PASS"
    assert run(capsys, "simulate", "--model", "simple", "--q", "0.75", "--n", "0")[0] == 1
    assert run(capsys, "simulate", "--model", "simple", "--q", "0.6", "--n", "10")[0] == 2


def _blocks(out):
    rows = list(csv.DictReader(io.StringIO(out)))
    blocks = {}
    for r in rows:
        blocks.setdefault(int(r["block"]), []).append(r)
    return blocks


def _runs(rows):
    msgs = [r["chosen_message"] for r in rows]
    return [m for i, m in enumerate(msgs) if i == 0 or msgs[i - 1] != m]


def test_figure_three(capsys):
    code, out, _ = run(capsys, "figure", "--which", "3", "--q", "0.75")
    assert code == 0
    rows = _blocks(out)[0]
    assert len(rows) == 1001
    assert _runs(rows) == ["obfuscate", "simple", "informative"]


def test_figure_one_and_two(capsys, band_config):
    code, out, _ = run(capsys, "figure", "--which", "1")
    blocks = _blocks(out)
    assert code == 0 and len(blocks) == 2
    assert _runs(blocks[0]) == ["obfuscate", "informative"]
    assert all(r["price_simple"] == "" for r in blocks[0])
    code, out, _ = run(capsys, "figure", "--which", "2", "--config", str(band_config))
    blocks = _blocks(out)
    assert {b[0]["label"] for b in blocks.values()} == {"SimpleBadNews", "SimpleGoodNews"}


def test_figure_json(capsys):
    code, out, _ = run(capsys, "figure", "--which", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["blocks"][0]["breakpoints"][1] == pytest.approx(2 / 3, abs=1e-12)


def test_unknown_figure(capsys):
    assert run(capsys, "figure", "--which", "4")[0] == 1
