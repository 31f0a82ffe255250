import json
import math
import subprocess
import sys

import numpy as np
import pytest

from conftest import frob, random_u2
from deflation import circuit as circ
from deflation.breach import BreachPattern
from deflation.circuit import Circuit, Cnot, Cz, Rotation, evaluate
from deflation.cli import format_matrix, main, parse_matrix
from deflation.deflate import DeflationInput, build_lhs, same_side_circuit, opposite_side_circuit
from deflation.linalg import CNOT_10, I4
from deflation.verify import random_unitary


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def max_err(stderr: str) -> float:
    line = [ln for ln in stderr.splitlines() if ln.startswith("max_err=")]
    assert len(line) == 1
    return float(line[0].split("=", 1)[1])


def kinds(payload: dict) -> list:
    return [g["kind"] for g in payload["gates"]]


def write_matrix(path, m):
    path.write_text(format_matrix(m))
    return path


def test_deflate_zero_angles(capsys):
    code, out, err = run(capsys, "deflate", "--theta-l", 0, "--beta", 0,
                         "--beta-prime", 0, "--theta-r", 0)
    assert code == 0
    payload = json.loads(out)
    assert payload["angles"]["gamma_L_prime"] == pytest.approx(math.pi / 4, abs=1e-15)
    assert payload["angles"]["gamma_R_prime"] == pytest.approx(-math.pi / 4, abs=1e-15)
    assert max_err(err) < 1e-12


def test_deflate_angles_output_matches_lhs(capsys):
    code, out, err = run(capsys, "deflate", "--theta-l", 0.3, "--beta", 0.7,
                         "--beta-prime", -0.2, "--theta-r", 1.1)
    assert code == 0 and max_err(err) <= 1e-10
    c = circ.from_dict(json.loads(out))
    assert frob(evaluate(c), evaluate(build_lhs(DeflationInput(0.3, 0.7, -0.2, 1.1)))) <= 1e-10


@pytest.mark.parametrize("side, pattern", [("same", same_side_circuit),
                                           ("opposite", opposite_side_circuit)])
def test_deflate_circuit_file(capsys, tmp_path, rng, side, pattern):
    src = pattern(*(random_u2(rng) for _ in range(4)))
    path = tmp_path / "in.json"
    path.write_text(circ.dumps(src))
    code, out, err = run(capsys, "deflate", path, "--side", side)
    assert code == 0 and max_err(err) <= 1e-9
    payload = json.loads(out)
    assert kinds(payload).count("cnot") == 2
    assert frob(evaluate(circ.from_dict(payload)), evaluate(src)) <= 1e-9


def test_deflate_accepts_cnot_cz_and_phase(capsys, tmp_path):
    src = Circuit([Cnot(1, 0), Rotation("Y", 0, 0.4), Rotation("X", 1, -0.3),
                   circ.GlobalPhase(0.2), Cz()])
    path = tmp_path / "in.json"
    path.write_text(circ.dumps(src))
    code, out, err = run(capsys, "deflate", path)
    assert code == 0
    assert frob(evaluate(circ.loads(out)), evaluate(src)) <= 1e-9


@pytest.mark.parametrize("gates", [
    [Cnot(1, 0), Rotation("Y", 0, 0.4)],
    [Rotation("Y", 0, 0.4), Cnot(1, 0), Cnot(1, 0)],
    [Cnot(1, 0), Cnot(1, 0), Cnot(1, 0)],
    [Cnot(0, 1), Rotation("Y", 0, 0.4), Cnot(1, 0)],
])
def test_deflate_shape_mismatch(capsys, tmp_path, gates):
    path = tmp_path / "in.json"
    path.write_text(circ.dumps(Circuit(gates)))
    code, out, err = run(capsys, "deflate", path)
    assert code == 1 and out == "" and err.startswith("error:")


def test_deflate_opposite_orientation_checked(capsys, tmp_path, rng):
    path = tmp_path / "in.json"
    path.write_text(circ.dumps(same_side_circuit(*(random_u2(rng) for _ in range(4)))))
    assert run(capsys, "deflate", path, "--side", "opposite")[0] == 1


@pytest.mark.parametrize("argv", [
    ["deflate"],
    ["deflate", "--theta-l", "0.1"],
    ["deflate", "--theta-l", "abc", "--beta", "0", "--beta-prime", "0", "--theta-r", "0"],
    ["deflate", "missing.json"],
    ["synth"],
    ["tables", "--kind", "nope"],
    ["nope"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "deflate", path)[0] == 1
    path.write_text('{"gates": [{"kind": "warp"}]}')
    assert run(capsys, "synth", path)[0] == 1


def test_close_breach(capsys, tmp_path, rng):
    b, g, a = (random_u2(rng) for _ in range(3))
    args = []
    for name, m in (("b", b), ("g", g), ("a", a)):
        args += [f"--{name}-file", write_matrix(tmp_path / f"{name}.txt", m)]
    code, out, err = run(capsys, "close-breach", *args)
    assert code == 0 and max_err(err) <= 1e-9
    payload = json.loads(out)
    assert kinds(payload).count("cnot") == 2
    expected = evaluate(BreachPattern(b, g, a).circuit())
    assert frob(evaluate(circ.from_dict(payload)), expected) <= 1e-9


def test_close_breach_rejects_non_unitary(capsys, tmp_path):
    good = write_matrix(tmp_path / "i.txt", np.eye(2))
    bad = write_matrix(tmp_path / "x.txt", np.ones((2, 2)))
    code, out, err = run(capsys, "close-breach", "--b-file", good, "--g-file", bad, "--a-file", good)
    assert code == 1 and "input not unitary" in err


@pytest.mark.parametrize("gate", ["cz", "cnot"])
def test_synth_identity(capsys, tmp_path, gate):
    path = write_matrix(tmp_path / "id4.txt", I4)
    code, out, err = run(capsys, "synth", path, "--gate", gate)
    assert code == 0 and max_err(err) <= 1e-9
    assert kinds(json.loads(out)).count(gate) == 3


def test_synth_random_and_out_file(capsys, tmp_path, rng):
    u = random_unitary(rng)
    path = write_matrix(tmp_path / "u.txt", u)
    target = tmp_path / "out.json"
    code, out, err = run(capsys, "synth", path, "--out", target)
    assert code == 0 and out == ""
    c = circ.loads(target.read_text())
    assert circ.entangling_count(c) == 3
    assert frob(evaluate(c), u) <= 1e-9


def test_synth_from_circuit_json(capsys, tmp_path):
    path = tmp_path / "cnot.json"
    path.write_text(circ.dumps(Circuit([Cnot(1, 0)])))
    code, out, err = run(capsys, "synth", path)
    assert code == 0
    assert frob(evaluate(circ.loads(out)), CNOT_10) <= 1e-9


def test_synth_nearly_unitary_input(capsys, tmp_path, rng):
    u = random_unitary(rng) + 1e-10
    path = write_matrix(tmp_path / "u.txt", u)
    code, out, err = run(capsys, "synth", path)
    assert code == 0
    assert frob(evaluate(circ.loads(out)), u) <= 1e-8


def test_synth_rejects_non_unitary(capsys, tmp_path):
    path = write_matrix(tmp_path / "u.txt", 1.001 * np.eye(4))
    code, out, err = run(capsys, "synth", path)
    assert code == 1 and "input not unitary" in err


@pytest.mark.parametrize("text", ["1 0\n0 1\n", "1 0 0 0\n" * 3 + "1 0 0 x\n", "nan " * 4 + "\n" + "0 0 0 0\n" * 3])
def test_synth_rejects_malformed_matrix(capsys, tmp_path, text):
    path = tmp_path / "u.txt"
    path.write_text(text)
    assert run(capsys, "synth", path)[0] == 1


def test_tolerance_override(capsys, tmp_path, rng, monkeypatch):
    path = write_matrix(tmp_path / "u.txt", random_unitary(rng))
    monkeypatch.setenv("DEFLATE_TOL", "0")
    code, out, err = run(capsys, "synth", path)
    assert code == 2 and "verification failed" in err
    monkeypatch.setenv("DEFLATE_TOL", "1e-6")
    assert run(capsys, "synth", path)[0] == 0
    monkeypatch.setenv("DEFLATE_TOL", "tiny")
    assert run(capsys, "synth", path)[0] == 1


def test_verify_json(capsys):
    code, out, err = run(capsys, "verify", "--seed", 42, "--trials", 5)
    assert code == 0
    data = json.loads(out)
    assert data["seed"] == 42 and len(data["checks"]) == 6
    assert all(c["pass"] for c in data["checks"])


def test_verify_text_and_bad_trials(capsys):
    code, out, err = run(capsys, "verify", "--trials", 2, "--format", "text")
    assert code == 0 and out.startswith("seed=42 trials=2")
    assert run(capsys, "verify", "--trials", 0)[0] == 1


def test_tables(capsys):
    code, out, err = run(capsys, "tables")
    assert code == 0 and out.count("rows = qubit-1") == 4
    code, out, err = run(capsys, "tables", "--kind", "magic")
    assert code == 0 and out.startswith("magic:")


def test_emitted_json_round_trips(capsys, tmp_path, rng):
    path = write_matrix(tmp_path / "u.txt", random_unitary(rng))
    _, out, _ = run(capsys, "synth", path)
    first = circ.loads(out)
    again = circ.loads(circ.dumps(first))
    assert frob(evaluate(first), evaluate(again)) <= 1e-12
    assert circ.dumps(again) == circ.dumps(first)


def test_matrix_text_round_trip(rng):
    m = random_unitary(rng)
    assert np.array_equal(parse_matrix(format_matrix(m), 4), m)


def test_console_script_entry_point(tmp_path):
    path = write_matrix(tmp_path / "id4.txt", I4)
    proc = subprocess.run([sys.executable, "-m", "deflation.cli", "synth", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "max_err=" in proc.stderr
    assert len(json.loads(proc.stdout)["gates"]) > 0
