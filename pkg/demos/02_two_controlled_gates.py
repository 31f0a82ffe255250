"""Any pair of controlled-U gates with one-qubit gates between them needs only two CNOTs."""
import numpy as np

from deflation import (
    Cnot, count_kind, deflate_opposite_side, deflate_same_side, evaluate,
    opposite_side_circuit, same_side_circuit,
)
from deflation.verify import random_unitary

rng = np.random.default_rng(1)
u, a, b, v = (random_unitary(rng, 2) for _ in range(4))

# both controls on wire 1
out = deflate_same_side(u, a, b, v)
err = np.linalg.norm(evaluate(out) - evaluate(same_side_circuit(u, a, b, v)))
print(f"same side:     {count_kind(out, Cnot)} CNOTs, error {err:.2e}")

# second control on wire 0 instead
out = deflate_opposite_side(u, a, b, v)
err = np.linalg.norm(evaluate(out) - evaluate(opposite_side_circuit(u, a, b, v)))
print(f"opposite side: {count_kind(out, Cnot)} CNOTs, error {err:.2e}")

# the output is layered: [U0, U1], CNOT, [U0, U1], CNOT, [U0, U1], phase
for g in out:
    print("  ", type(g).__name__, getattr(g, "qubit", ""), getattr(g, "angle", ""))
