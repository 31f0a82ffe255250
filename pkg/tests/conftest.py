import numpy as np
import pytest

from deflation.verify import random_su2, random_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def frob(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def random_u2(rng):
    return random_unitary(rng, 2)


__all__ = ["frob", "random_u2", "random_su2", "random_unitary"]


def degenerate_deflation_inputs():
    """50 axis-aligned quadruples (theta_L, beta, beta', theta_R).

    Each has theta_L +- theta_R in {0, pi} and beta +- beta' in {0, pi/2}, so
    the vanishing-radius branches of the angle formulas are reached.
    """
    import itertools
    pi = np.pi
    theta_pairs = [(t, r) for t in (0.0, 0.7, pi / 2, pi, -1.2)
                   for r in (-t, pi - t, t, t - pi)]
    beta_pairs = [(b, bp) for bp in (0.0, 0.3, pi / 4)
                  for b in (bp, -bp, pi / 2 - bp, bp - pi / 2)]
    grid = list(dict.fromkeys(
        (t + 0.0, b + 0.0, bp + 0.0, r + 0.0)
        for (t, r), (b, bp) in itertools.product(theta_pairs, beta_pairs)))
    return [grid[(k * 97) % len(grid)] for k in range(50)]


def pytest_terminal_summary(terminalreporter):
    # acceptance lines, in criterion order, whichever tests ran
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
