"""Seeded randomized checks of every rewrite against the matrix evaluator."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .breach import BreachPattern, close_breach
from .circuit import Cnot, count_kind, entangling_count, evaluate
from .csd import csd_2q, synth_3cnot
from .deflate import (
    DeflationInput, build_lhs, build_rhs, deflate_core, deflate_opposite_side,
    deflate_same_side, opposite_side_circuit, same_side_circuit,
)

CORE_TOL = 1e-10
PIPELINE_TOL = 1e-9


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """SU(2) element from a normalized Gaussian quaternion."""
    a, b, c, d = rng.standard_normal(4)
    n = np.sqrt(a * a + b * b + c * c + d * d)
    a, b, c, d = a / n, b / n, c / n, d / n
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def random_unitary(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    """Haar-random unitary.

    For ``n = 2`` this is a random SU(2) element times a uniform phase;
    otherwise QR of a complex Gaussian matrix with R's diagonal made positive.
    """
    if n == 2:
        return np.exp(1j * rng.uniform(-np.pi, np.pi)) * random_su2(rng)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True)
class CheckResult:
    check: str
    trials: int
    max_err: float
    mean_err: float
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass(frozen=True)
class Report:
    seed: int
    trials: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "trials": self.trials,
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"seed={self.seed} trials={self.trials}"]
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.check:<18} "
                         f"max_err={c.max_err:.3e} mean_err={c.mean_err:.3e}")
        return "\n".join(lines)


# each trial returns (frobenius error, gate-count condition held)
Trial = Callable[[np.random.Generator], "tuple[float, bool]"]


def _deflation(rng):
    inp = DeflationInput(*rng.uniform(-np.pi, np.pi, 4))
    a = deflate_core(inp)
    err = np.linalg.norm(evaluate(build_lhs(inp)) - evaluate(build_rhs(inp, a)))
    unit = max(abs(a.p_plus ** 2 + a.q_plus ** 2 - 1), abs(a.p_minus ** 2 + a.q_minus ** 2 - 1))
    return err, unit <= 1e-12


def _two_ctrl(deflate, pattern):
    def trial(rng):
        ms = [random_unitary(rng, 2) for _ in range(4)]
        out = deflate(*ms)
        err = np.linalg.norm(evaluate(out) - evaluate(pattern(*ms)))
        return err, count_kind(out, Cnot) == 2 and entangling_count(out) == 2
    return trial


def _breach(rng):
    p = BreachPattern(*(random_unitary(rng, 2) for _ in range(3)))
    out = close_breach(p)
    err = np.linalg.norm(evaluate(out) - evaluate(p.circuit()))
    return err, count_kind(out, Cnot) == 2 and entangling_count(out) == 2


def _csd(rng):
    u = random_unitary(rng)
    f = csd_2q(u)
    corners_ok = all(abs(np.linalg.det(m) - 1) <= 1e-10 for m in (f.l0, f.l1, f.r0, f.r1))
    in_range = all(0 <= t <= np.pi / 2 for t in (f.theta1, f.theta2))
    return np.linalg.norm(f.reconstruct() - u), corners_ok and in_range


def _synth(rng):
    u = random_unitary(rng)
    out = synth_3cnot(u)
    return np.linalg.norm(evaluate(out) - u), entangling_count(out) == 3


CHECKS: tuple[tuple[str, Trial, float], ...] = (
    ("deflation", _deflation, CORE_TOL),
    ("two_ctrl_same", _two_ctrl(deflate_same_side, same_side_circuit), PIPELINE_TOL),
    ("two_ctrl_opposite", _two_ctrl(deflate_opposite_side, opposite_side_circuit), PIPELINE_TOL),
    ("breach", _breach, PIPELINE_TOL),
    ("csd", _csd, CORE_TOL),
    ("synth_3cnot", _synth, PIPELINE_TOL),
)


def run_suite(seed: int = 42, trials: int = 1000) -> Report:
    """Run every check ``trials`` times; each check draws from its own stream."""
    if int(trials) < 1:
        raise ValueError("trials must be at least 1")
    if int(seed) < 0:
        raise ValueError("seed must be non-negative")
    results = []
    for k, (name, trial, tol) in enumerate(CHECKS):
        rng = np.random.default_rng([int(seed), k])
        errs = np.empty(trials)
        shape_ok = True
        for t in range(trials):
            err, ok = trial(rng)
            errs[t] = err
            shape_ok = shape_ok and ok
        max_err = float(errs.max())
        results.append(CheckResult(name, int(trials), max_err, float(errs.mean()),
                                   bool(shape_ok and max_err <= tol)))
    return Report(int(seed), int(trials), tuple(results))
