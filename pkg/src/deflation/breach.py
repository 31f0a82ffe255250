"""Closing a breach: three CNOTs around a gap on wire 1 become two."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Cnot, OneQubit
from .deflate import deflate_same_side
from .linalg import SIGMA_X, dagger, require_unitary


@dataclass(frozen=True, eq=False)
class BreachPattern:
    """``CNOT ; b (x) g ; CNOT ; a ; CNOT`` with every CNOT controlled by wire 1.

    ``b`` and ``a`` act on wire 0, ``g`` on wire 1.  Wire 1 carries nothing
    between the last two CNOTs, which is the breach.
    """

    b: np.ndarray
    g: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        for name in ("b", "g", "a"):
            object.__setattr__(self, name, require_unitary(getattr(self, name), (2, 2), name))

    def circuit(self) -> Circuit:
        return Circuit([
            Cnot(1, 0), OneQubit(0, self.b), OneQubit(1, self.g), Cnot(1, 0),
            OneQubit(0, self.a), Cnot(1, 0),
        ])


def close_breach(p: BreachPattern) -> Circuit:
    """Equivalent circuit with two CNOTs.

    In application order the pattern equals
    ``ctrl(X) ; (a b) (x) g ; ctrl(X a X a^dag)``, which is the same-side
    two-controlled-U shape.
    """
    if not isinstance(p, BreachPattern):
        p = BreachPattern(*p)
    a, b = p.a, p.b
    last = SIGMA_X @ a @ SIGMA_X @ dagger(a)
    return deflate_same_side(SIGMA_X, a @ b, p.g, last)
