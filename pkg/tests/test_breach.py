import numpy as np
import pytest

from conftest import frob, random_u2
from deflation.breach import BreachPattern, close_breach
from deflation.circuit import Cnot, OneQubit, count_kind, entangling_count, evaluate
from deflation.linalg import CNOT_10, I2, kron, ry


def check(b, g, a, tol=1e-9):
    p = BreachPattern(b, g, a)
    out = close_breach(p)
    assert entangling_count(p.circuit()) == 3
    assert count_kind(out, Cnot) == 2 and entangling_count(out) == 2
    assert frob(evaluate(out), evaluate(p.circuit())) <= tol
    return out


def test_identity_pattern_is_cnot():
    out = check(I2, I2, I2)
    assert frob(evaluate(out), CNOT_10) <= 1e-12


def test_pattern_matrix():
    # direct five-factor product in matrix order
    b, g, a = random_u2(np.random.default_rng(1)), I2, ry(0.4)
    p = BreachPattern(b, g, a)
    direct = CNOT_10 @ kron(I2, a) @ CNOT_10 @ kron(g, b) @ CNOT_10
    assert frob(evaluate(p.circuit()), direct) < 1e-15
    check(I2, I2, ry(0.4))


def test_random_breaches(rng):
    for _ in range(300):
        check(random_u2(rng), random_u2(rng), random_u2(rng))


def test_re_expressed_pattern_gives_equal_circuit(rng):
    # moving a phase between b and a leaves the pattern's matrix unchanged
    b, g, a = (random_u2(rng) for _ in range(3))
    first = close_breach(BreachPattern(b, g, a))
    second = close_breach(BreachPattern(np.exp(0.3j) * b, g, np.exp(-0.3j) * a))
    assert frob(evaluate(first), evaluate(second)) <= 1e-9


def test_tuple_input_accepted(rng):
    b, g, a = (random_u2(rng) for _ in range(3))
    assert frob(evaluate(close_breach((b, g, a))), evaluate(BreachPattern(b, g, a).circuit())) <= 1e-9


def test_circuit_layout():
    gates = list(BreachPattern(I2, I2, I2).circuit())
    assert [type(g) for g in gates] == [Cnot, OneQubit, OneQubit, Cnot, OneQubit, Cnot]
    assert [g.qubit for g in gates if isinstance(g, OneQubit)] == [0, 1, 0]


def test_rejects_non_unitary():
    with pytest.raises(ValueError):
        BreachPattern(I2, 2 * I2, I2)
