import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from localsym import make_ln, make_w
from localsym.cli import main
from localsym.io import read_state, write_state, write_chain
from localsym import LocalOperatorChain

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "docs" / "report.schema.json").read_text()
)


def run(argv, capsys=None):
    code = main(argv)
    if capsys is None:
        return code, None
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def check_envelope(doc):
    jsonschema.validate(doc, SCHEMA)


def test_gen_writes_state_file(tmp_path):
    path = tmp_path / "ghz.json"
    assert main(["gen", "ghz", "--n", "4", "--out", str(path)]) == 0
    psi = read_state(path)
    assert psi.n == 4
    assert abs(psi.norm() - 1.0) < 1e-12


def test_gen_haar_seeded(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["gen", "haar", "--n", "3", "--seed", "7", "--out", str(p1)])
    main(["gen", "haar", "--n", "3", "--seed", "7", "--out", str(p2)])
    np.testing.assert_array_equal(read_state(p1).amplitudes,
                                  read_state(p2).amplitudes)


def test_gen_gabcd_missing_coefficients_is_usage_error(capsys):
    code = main(["gen", "gabcd"])
    assert code == 1
    assert "requires" in capsys.readouterr().err


def test_gen_gabcd_with_coefficients(tmp_path):
    path = tmp_path / "g.json"
    code = main(["gen", "gabcd", "--a", "1", "--b", "2+1j", "--c", "3",
                 "--d", "0.5", "--out", str(path)])
    assert code == 0
    assert read_state(path).n == 4


def test_analyze_envelope(tmp_path, capsys):
    path = tmp_path / "l5.json"
    write_state(make_ln(5), path)
    code, doc = run(["analyze", str(path)], capsys)
    assert code == 0
    check_envelope(doc)
    assert doc["command"] == "analyze"
    payload = doc["payload"]
    assert payload["n"] == 5
    assert payload["criticality"]["is_critical"]
    assert payload["lie_dim"] == 0
    assert not payload["f2"]["defined"]
    assert payload["f4"]["defined"]


def test_analyze_missing_file_is_input_error(capsys):
    assert main(["analyze", "/nonexistent/state.json"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_scale_haar_converges(tmp_path, capsys):
    state = tmp_path / "s.json"
    rep = tmp_path / "rep.json"
    main(["gen", "haar", "--n", "4", "--seed", "3", "--out", str(state)])
    code, doc = run(["scale", str(state), "--rep-out", str(rep)], capsys)
    assert code == 0
    check_envelope(doc)
    assert doc["payload"]["status"] == "converged"
    assert read_state(rep).n == 4


def test_scale_null_cone_exits_zero(tmp_path, capsys):
    state = tmp_path / "w3.json"
    write_state(make_w(3), state)
    code, doc = run(["scale", str(state)], capsys)
    assert code == 0
    assert doc["payload"]["status"] == "null_cone"


def test_scale_max_iter_exits_two(tmp_path, capsys):
    state = tmp_path / "s.json"
    main(["gen", "haar", "--n", "4", "--seed", "4", "--out", str(state)])
    code, doc = run(["scale", str(state), "--max-iter", "0"], capsys)
    assert code == 2
    assert doc["payload"]["status"] == "max_iter"


def test_stab_l5_witness(tmp_path, capsys):
    state = tmp_path / "l5.json"
    write_state(make_ln(5), state)
    code, doc = run(["stab", str(state), "--restarts", "16"], capsys)
    assert code == 0
    check_envelope(doc)
    payload = doc["payload"]
    assert payload["verdict"] == "non_trivial"
    assert payload["failed_gate"] == "phase_search"
    assert payload["gtilde_phase_hits"]


def test_pmax_and_protocol(tmp_path, capsys):
    state = tmp_path / "l5.json"
    chain = tmp_path / "g.json"
    write_state(make_ln(5), state)
    factors = np.broadcast_to(np.eye(2, dtype=complex), (5, 2, 2)).copy()
    factors[0] = np.diag([2.0, 0.5])
    write_chain(LocalOperatorChain(factors, "G"), chain)

    code, doc = run(["pmax", str(state), str(chain), "--stabilizer", "trivial"],
                    capsys)
    assert code == 0
    check_envelope(doc)
    assert abs(doc["payload"]["p_max"] - 17 / 32) < 1e-12
    assert doc["payload"]["optimality_status"] == "exact_optimum"

    code, doc = run(["protocol", str(state), str(chain), "--trials", "2000"],
                    capsys)
    assert code == 0
    check_envelope(doc)
    sim = doc["payload"]["simulation"]
    assert sim["trials"] == 2000
    assert abs(sim["empirical_p"] - 17 / 32) < 0.05


def test_pmax_chain_length_mismatch(tmp_path, capsys):
    state = tmp_path / "l5.json"
    chain = tmp_path / "g.json"
    write_state(make_ln(5), state)
    factors = np.broadcast_to(np.eye(2, dtype=complex), (3, 2, 2)).copy()
    write_chain(LocalOperatorChain(factors, "G"), chain)
    assert main(["pmax", str(state), str(chain)]) == 1
    assert "factors" in capsys.readouterr().err


def test_genericity_command(tmp_path):
    out = tmp_path / "report.json"
    code = main(["genericity", "--n", "4", "--samples", "2",
                 "--restarts", "4", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    check_envelope(doc)
    assert doc["payload"]["samples"] == 2
    assert len(doc["payload"]["records"]) == 2
