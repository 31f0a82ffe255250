"""Two-qubit gates, circuits, and the matrix evaluator.

Gates are stored in diagram order: the first gate in a :class:`Circuit` is
applied first, so it is the rightmost factor of the evaluated product.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Union

import numpy as np

from .linalg import (
    CNOT_01, CNOT_10, CZ, HADAMARD, I2, I4, N_PROJ, NBAR_PROJ, UNITARY_TOL,
    kron, require_unitary, rx, ry, rz, split_phase,
)

_ROT = {"X": rx, "Y": ry, "Z": rz}


def _on_qubit(m: np.ndarray, qubit: int) -> np.ndarray:
    return kron(I2, m) if qubit == 0 else kron(m, I2)


def _check_qubit(q) -> int:
    if q not in (0, 1):
        raise ValueError(f"qubit index must be 0 or 1, got {q!r}")
    return int(q)


def _check_pair(control, target) -> None:
    _check_qubit(control)
    _check_qubit(target)
    if control == target:
        raise ValueError("control and target must differ")


def controlled_matrix(m: np.ndarray, control: int, target: int) -> np.ndarray:
    """4x4 matrix applying ``m`` to ``target`` when ``control`` is |1>."""
    if control == 1:
        return kron(NBAR_PROJ, I2) + kron(N_PROJ, m)
    return kron(I2, NBAR_PROJ) + kron(m, N_PROJ)


def controlled_rotation_matrix(theta: float, control: int = 1, target: int = 0) -> np.ndarray:
    """``exp(i theta sigma_Z(target) n(control))`` as a diagonal 4x4 matrix."""
    _check_pair(control, target)
    return controlled_matrix(rz(theta), control, target)


@dataclass(frozen=True)
class Rotation:
    """``exp(i angle sigma_axis)`` on one wire."""

    axis: str
    qubit: int
    angle: float

    def __post_init__(self):
        if self.axis not in _ROT:
            raise ValueError(f"rotation axis must be X, Y or Z, got {self.axis!r}")
        _check_qubit(self.qubit)

    def matrix2(self) -> np.ndarray:
        return _ROT[self.axis](self.angle)

    def unitary(self) -> np.ndarray:
        return _on_qubit(self.matrix2(), self.qubit)


@dataclass(frozen=True, eq=False)
class OneQubit:
    qubit: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_qubit(self.qubit)
        object.__setattr__(self, "matrix", require_unitary(self.matrix, (2, 2), "OneQubit matrix"))

    @classmethod
    def _checked_elsewhere(cls, qubit: int, matrix: np.ndarray) -> "OneQubit":
        # for matrices built from already-validated gates
        g = object.__new__(cls)
        object.__setattr__(g, "qubit", qubit)
        object.__setattr__(g, "matrix", matrix)
        return g

    def matrix2(self) -> np.ndarray:
        return self.matrix

    def unitary(self) -> np.ndarray:
        return _on_qubit(self.matrix, self.qubit)


@dataclass(frozen=True, eq=False)
class ControlledU:
    control: int
    target: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_pair(self.control, self.target)
        object.__setattr__(self, "matrix", require_unitary(self.matrix, (2, 2), "ControlledU matrix"))

    def unitary(self) -> np.ndarray:
        return controlled_matrix(self.matrix, self.control, self.target)


@dataclass(frozen=True)
class Cnot:
    control: int = 1
    target: int = 0

    def __post_init__(self):
        _check_pair(self.control, self.target)

    def unitary(self) -> np.ndarray:
        return (CNOT_10 if self.control == 1 else CNOT_01).copy()


@dataclass(frozen=True)
class Cz:
    def unitary(self) -> np.ndarray:
        return CZ.copy()


@dataclass(frozen=True)
class GlobalPhase:
    angle: float

    def unitary(self) -> np.ndarray:
        return np.exp(1j * self.angle) * I4


Gate = Union[Rotation, OneQubit, ControlledU, Cnot, Cz, GlobalPhase]
ONE_QUBIT = (Rotation, OneQubit)
ENTANGLING = (Cnot, Cz, ControlledU)


@dataclass(frozen=True)
class Circuit:
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        return Circuit(self.gates + tuple(other.gates))

    def unitary(self) -> np.ndarray:
        return evaluate(self)


def evaluate(circuit: Circuit | Iterable[Gate]) -> np.ndarray:
    """Matrix of a circuit; later gates multiply from the left."""
    out = I4.copy()
    for g in circuit:
        out = g.unitary() @ out
    return out


def entangling_count(circuit: Circuit | Iterable[Gate]) -> int:
    return sum(isinstance(g, ENTANGLING) for g in circuit)


def count_kind(circuit: Circuit | Iterable[Gate], kind: type) -> int:
    return sum(isinstance(g, kind) for g in circuit)


def chain(*mats: np.ndarray) -> np.ndarray:
    """Product of 2x2 gates given in application order (first applied first)."""
    return reduce(lambda acc, m: m @ acc, mats, I2)


def canonicalize(circuit: Circuit | Iterable[Gate]) -> Circuit:
    """Fuse one-qubit gates into layers between entangling gates.

    The result alternates ``[U0, U1], E, [U0, U1], E, ..., [U0, U1]`` and ends
    with a single :class:`GlobalPhase`.  Every ``U`` is special-unitary; the
    phases peeled off them go into the global phase.
    """
    phase = 0.0
    layer = [I2, I2]
    out: list = []

    def flush():
        nonlocal phase
        for q in (0, 1):
            phi, s = split_phase(layer[q])
            phase += phi
            out.append(OneQubit._checked_elsewhere(q, s))

    for g in circuit:
        if isinstance(g, GlobalPhase):
            phase += g.angle
        elif isinstance(g, ONE_QUBIT):
            layer[g.qubit] = g.matrix2() @ layer[g.qubit]
        else:
            flush()
            layer = [I2, I2]
            out.append(g)
    flush()
    out.append(GlobalPhase(float(np.angle(np.exp(1j * phase)))))
    return Circuit(out)


def to_cz(circuit: Circuit) -> Circuit:
    """Rewrite every CNOT as H-CZ-H on its target, then canonicalize."""
    gates = []
    for g in circuit:
        if isinstance(g, Cnot):
            gates += [OneQubit(g.target, HADAMARD), Cz(), OneQubit(g.target, HADAMARD)]
        else:
            gates.append(g)
    return canonicalize(gates)


def to_cnot(circuit: Circuit, control: int = 1) -> Circuit:
    """Rewrite every CZ as H-CNOT-H with the given control, then canonicalize."""
    target = 1 - control
    gates = []
    for g in circuit:
        if isinstance(g, Cz):
            gates += [OneQubit(target, HADAMARD), Cnot(control, target), OneQubit(target, HADAMARD)]
        else:
            gates.append(g)
    return canonicalize(gates)


# --- JSON -----------------------------------------------------------------

def _mat_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _mat_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape != (2, 2, 2):
        raise ValueError("matrix must be a 2x2 array of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def gate_to_dict(g: Gate) -> dict:
    if isinstance(g, Rotation):
        return {"kind": "r" + g.axis.lower(), "qubit": g.qubit, "angle": float(g.angle)}
    if isinstance(g, OneQubit):
        return {"kind": "u", "qubit": g.qubit, "matrix": _mat_to_json(g.matrix)}
    if isinstance(g, ControlledU):
        return {"kind": "cu", "control": g.control, "target": g.target,
                "matrix": _mat_to_json(g.matrix)}
    if isinstance(g, Cnot):
        return {"kind": "cnot", "control": g.control, "target": g.target}
    if isinstance(g, Cz):
        return {"kind": "cz"}
    if isinstance(g, GlobalPhase):
        return {"kind": "phase", "angle": float(g.angle)}
    raise TypeError(f"not a gate: {g!r}")


def gate_from_dict(d: dict) -> Gate:
    if not isinstance(d, dict) or "kind" not in d:
        raise ValueError(f"gate entry must be an object with a 'kind': {d!r}")
    kind = d["kind"]
    try:
        if kind in ("rx", "ry", "rz"):
            return Rotation(kind[1].upper(), d["qubit"], float(d["angle"]))
        if kind == "u":
            return OneQubit(d["qubit"], _mat_from_json(d["matrix"]))
        if kind == "cu":
            return ControlledU(d["control"], d["target"], _mat_from_json(d["matrix"]))
        if kind == "cnot":
            return Cnot(d["control"], d["target"])
        if kind == "cz":
            return Cz()
        if kind == "phase":
            return GlobalPhase(float(d["angle"]))
    except KeyError as exc:
        raise ValueError(f"gate {kind!r} is missing field {exc}") from None
    raise ValueError(f"unknown gate kind {kind!r}")


def to_dict(circuit: Circuit) -> dict:
    return {"gates": [gate_to_dict(g) for g in circuit]}


def from_dict(data: dict) -> Circuit:
    if not isinstance(data, dict) or not isinstance(data.get("gates"), list):
        raise ValueError("circuit JSON must be an object with a 'gates' list")
    return Circuit(gate_from_dict(d) for d in data["gates"])


def dumps(circuit: Circuit, **kw) -> str:
    return json.dumps(to_dict(circuit), **kw)


def loads(text: str) -> Circuit:
    return from_dict(json.loads(text))


__all__ = [
    "Rotation", "OneQubit", "ControlledU", "Cnot", "Cz", "GlobalPhase", "Gate",
    "Circuit", "evaluate", "entangling_count", "count_kind", "chain",
    "canonicalize", "to_cz", "to_cnot", "controlled_matrix",
    "controlled_rotation_matrix", "to_dict", "from_dict", "dumps", "loads",
    "UNITARY_TOL",
]
