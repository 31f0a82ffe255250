"""Acceptance criteria, one test each.

Every test records a ``PASS`` or ``FAIL`` line; the lines are printed at the
end of the pytest run and also when this file is executed directly.
Runtime limits are measured over the rewrite and its matrix check, after the
random inputs have been drawn.
"""
import itertools
import subprocess
import sys
import time

import numpy as np

from conftest import degenerate_deflation_inputs
from identities import IDENTITIES
from deflation.breach import BreachPattern, close_breach
from deflation.circuit import Cnot, count_kind, entangling_count, evaluate
from deflation.csd import csd_2q, synth_3cnot
from deflation.deflate import (
    DeflationInput, build_lhs, build_rhs, deflate_core, deflate_opposite_side,
    deflate_same_side, opposite_side_circuit, same_side_circuit,
)
from deflation.linalg import CNOT_10, I2, I4
from deflation.tables import ConjugationKind, computed_conjugation, conjugate_pauli
from deflation.verify import random_unitary

RESULTS: list[str] = []
N = 1000


def record(number: int, title: str, ok: bool, detail: str) -> bool:
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _norm(a, b) -> float:
    return float(np.linalg.norm(a - b))


def test_criterion_1_deflation_identity():
    rng = np.random.default_rng(1)
    inputs = [DeflationInput(*rng.uniform(-np.pi, np.pi, 4)) for _ in range(N)]
    inputs += [DeflationInput(*c) for c in degenerate_deflation_inputs()]
    start = time.perf_counter()
    err = unit = 0.0
    for inp in inputs:
        a = deflate_core(inp)
        err = max(err, _norm(evaluate(build_lhs(inp)), evaluate(build_rhs(inp, a))))
        unit = max(unit, abs(a.p_plus ** 2 + a.q_plus ** 2 - 1), abs(a.p_minus ** 2 + a.q_minus ** 2 - 1))
    elapsed = time.perf_counter() - start
    ok = err <= 1e-10 and unit <= 1e-12 and elapsed < 1.0
    assert record(1, "Deflation Identity", ok,
                  f"{len(inputs)} cases, max_err={err:.2e}, max|p^2+q^2-1|={unit:.2e}, {elapsed:.2f}s")


def test_criterion_2_two_controlled_gates():
    rng = np.random.default_rng(2)
    quads = [[random_unitary(rng, 2) for _ in range(4)] for _ in range(N)]
    start = time.perf_counter()
    err, counts_ok = 0.0, True
    for deflate, pattern in ((deflate_same_side, same_side_circuit),
                             (deflate_opposite_side, opposite_side_circuit)):
        for ms in quads:
            out = deflate(*ms)
            counts_ok &= count_kind(out, Cnot) == 2 and entangling_count(out) == 2
            err = max(err, _norm(evaluate(out), evaluate(pattern(*ms))))
    elapsed = time.perf_counter() - start
    ok = counts_ok and err <= 1e-9 and elapsed < 2.0
    assert record(2, "two controlled gates, both orientations", ok,
                  f"2x{N} cases, 2 CNOTs each={counts_ok}, max_err={err:.2e}, {elapsed:.2f}s")


def test_criterion_3_closing_breach():
    rng = np.random.default_rng(3)
    err, counts_ok = 0.0, True
    for _ in range(N):
        p = BreachPattern(*(random_unitary(rng, 2) for _ in range(3)))
        out = close_breach(p)
        counts_ok &= entangling_count(p.circuit()) == 3 and count_kind(out, Cnot) == 2 \
            and entangling_count(out) == 2
        err = max(err, _norm(evaluate(out), evaluate(p.circuit())))
    trivial = _norm(evaluate(close_breach(BreachPattern(I2, I2, I2))), CNOT_10)
    ok = counts_ok and err <= 1e-9 and trivial <= 1e-12
    assert record(3, "closing a breach", ok,
                  f"{N} cases, 3->2 CNOTs={counts_ok}, max_err={err:.2e}, (I,I,I)->CNOT err={trivial:.2e}")


def test_criterion_4_conjugation_tables():
    mismatches = []
    for kind, mu, nu in itertools.product(ConjugationKind, range(4), range(4)):
        try:
            if computed_conjugation(kind, mu, nu, tol=1e-12) != conjugate_pauli(kind, mu, nu):
                mismatches.append((kind.value, mu, nu))
        except ValueError:
            mismatches.append((kind.value, mu, nu))
    ok = not mismatches
    assert record(4, "Pauli conjugation tables", ok, f"64 entries, mismatches={mismatches}")


def test_criterion_5_cosine_sine():
    rng = np.random.default_rng(5)
    err = det = 0.0
    in_range = True
    for _ in range(N):
        u = random_unitary(rng)
        f = csd_2q(u)
        err = max(err, _norm(f.reconstruct(), u))
        det = max(det, *(abs(np.linalg.det(m) - 1) for m in (f.l0, f.l1, f.r0, f.r1)))
        in_range &= all(0 <= t <= np.pi / 2 for t in (f.theta1, f.theta2))
    ok = err <= 1e-10 and det <= 1e-10 and in_range
    assert record(5, "cosine-sine decomposition", ok,
                  f"{N} cases, max_err={err:.2e}, max|det-1|={det:.2e}, angles in range={in_range}")


def test_criterion_6_three_gate_synthesis():
    rng = np.random.default_rng(6)
    targets = [random_unitary(rng) for _ in range(N)] + [I4, CNOT_10]
    start = time.perf_counter()
    err, counts_ok = 0.0, True
    for u in targets:
        out = synth_3cnot(u)
        counts_ok &= entangling_count(out) == 3
        err = max(err, _norm(evaluate(out), u))
    elapsed = time.perf_counter() - start
    ok = counts_ok and err <= 1e-9 and elapsed < 5.0
    assert record(6, "three-entangling-gate synthesis", ok,
                  f"{len(targets)} cases incl. identity and CNOT, 3 gates each={counts_ok}, "
                  f"max_err={err:.2e}, {elapsed:.2f}s")


def test_criterion_7_sub_identities():
    rng = np.random.default_rng(7)
    worst = {name: max(check(rng) for _ in range(200)) for name, check in IDENTITIES.items()}
    bad = [name for name, e in worst.items() if not e <= 1e-12]
    ok = not bad
    assert record(7, "sub-identities", ok,
                  f"{len(worst)} identities x 200 draws, max_err={max(worst.values()):.2e}, failing={bad}")


def _verify_json() -> bytes:
    proc = subprocess.run([sys.executable, "-m", "deflation.cli", "verify",
                           "--seed", "42", "--trials", "1000"], capture_output=True)
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout


def test_criterion_8_deterministic_report():
    first, second = _verify_json(), _verify_json()
    ok = first == second and len(first) > 0
    assert record(8, "deterministic verify report", ok,
                  f"two runs of seed 42 x 1000 trials, {len(first)} bytes, identical={first == second}")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
