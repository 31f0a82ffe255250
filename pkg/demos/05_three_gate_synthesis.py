"""Any two-qubit unitary from three entangling gates, by way of the cosine-sine decomposition."""
import numpy as np

from deflation import count_kind, csd_2q, csd_to_circuit, entangling_count, evaluate, synth_3cnot
from deflation.circuit import Cnot, Cz
from deflation.verify import random_unitary

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(3)
u = random_unitary(rng)

f = csd_2q(u)
print("theta1, theta2 =", f.theta1, f.theta2)
print("alpha, alpha_L, alpha_R =", f.alpha, f.alpha_L, f.alpha_R)
print("reconstruction error:", np.linalg.norm(f.reconstruct() - u))

# two controlled z-rotations and one CZ
c = csd_to_circuit(f)
print("CSD circuit: entangling gates =", entangling_count(c),
      " error =", np.linalg.norm(evaluate(c) - u))

# each controlled rotation is paired with a CZ and deflated
for gate, kind in (("cz", Cz), ("cnot", Cnot)):
    out = synth_3cnot(u, gate=gate)
    print(f"synth ({gate}): {count_kind(out, kind)} entangling gates, "
          f"error {np.linalg.norm(evaluate(out) - u):.2e}")

# the count is fixed, even when fewer gates would do
print("identity:", entangling_count(synth_3cnot(np.eye(4))), "entangling gates")
