"""Two controlled z-rotations with y-rotations between them, rewritten with two CNOTs."""
import numpy as np

from deflation import DeflationInput, build_lhs, build_rhs, deflate_core, evaluate

np.set_printoptions(precision=4, suppress=True)

# controlled rz(theta_L), then ry(beta) on wire 0 and ry(beta') on wire 1,
# then controlled rz(theta_R); both controls sit on wire 1
inp = DeflationInput(theta_L=0.3, beta=0.7, beta_prime=-0.2, theta_R=1.1)
angles = deflate_core(inp)
print("angles of the two-CNOT circuit:")
for name in ("gamma_L", "gamma_L_prime", "mu", "mu_prime", "gamma_R", "gamma_R_prime"):
    print(f"  {name:>14} = {getattr(angles, name):+.6f}")

lhs, rhs = build_lhs(inp), build_rhs(inp, angles)
for g in rhs:
    print("  ", g)

# no global phase is dropped: the two matrices agree entry by entry
print("||lhs - rhs|| =", np.linalg.norm(evaluate(lhs) - evaluate(rhs)))

# p^2 + q^2 = 1 is what makes mu well defined
print("p+^2 + q+^2 - 1 =", angles.p_plus ** 2 + angles.q_plus ** 2 - 1)

# a sweep over random angles, as a quick sanity check
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(500):
    x = DeflationInput(*rng.uniform(-np.pi, np.pi, 4))
    worst = max(worst, np.linalg.norm(evaluate(build_lhs(x)) - evaluate(build_rhs(x))))
print("worst error over 500 random inputs:", worst)
