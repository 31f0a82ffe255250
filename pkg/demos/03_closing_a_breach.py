"""Three CNOTs with nothing on wire 1 between the last two collapse to two CNOTs."""
import numpy as np

from deflation import BreachPattern, close_breach, entangling_count, evaluate
from deflation.linalg import CNOT_10, I2
from deflation.verify import random_unitary

rng = np.random.default_rng(2)
p = BreachPattern(b=random_unitary(rng, 2), g=random_unitary(rng, 2), a=random_unitary(rng, 2))
out = close_breach(p)
print("entangling gates before:", entangling_count(p.circuit()))
print("entangling gates after: ", entangling_count(out))
print("error:", np.linalg.norm(evaluate(out) - evaluate(p.circuit())))

# with identities everywhere the pattern is just one CNOT
trivial = close_breach(BreachPattern(I2, I2, I2))
print("identity pattern vs CNOT:", np.linalg.norm(evaluate(trivial) - CNOT_10))
