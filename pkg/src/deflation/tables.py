"""How four fixed similarity transforms act on two-qubit Pauli products.

Each table maps ``sigma_mu (x) sigma_nu`` (``mu`` on qubit 1, ``nu`` on
qubit 0) to a single signed Pauli product.  The entries are stored as data,
and :func:`computed_conjugation` recomputes any of them from the matrices so
that the two can be cross-checked.
"""
from __future__ import annotations

from enum import Enum

import numpy as np

from .linalg import CNOT_01, CNOT_10, MAGIC, PAULIS, Pauli, SignedPauliPair, dagger, kron


class ConjugationKind(Enum):
    MAGIC_DAGGER = "magic-dagger"   # M^dag (.) M
    MAGIC = "magic"                 # M (.) M^dag
    CNOT_DOWN = "cnot-down"         # CNOT(1->0) (.) CNOT(1->0)
    CNOT_UP = "cnot-up"             # CNOT(0->1) (.) CNOT(0->1)


def _conjugators(kind: ConjugationKind) -> tuple[np.ndarray, np.ndarray]:
    return {
        ConjugationKind.MAGIC_DAGGER: (dagger(MAGIC), MAGIC),
        ConjugationKind.MAGIC: (MAGIC, dagger(MAGIC)),
        ConjugationKind.CNOT_DOWN: (CNOT_10, CNOT_10),
        ConjugationKind.CNOT_UP: (CNOT_01, CNOT_01),
    }[kind]


def _parse(row: str) -> list[SignedPauliPair]:
    # "1" is the identity, "-XY" is -sigma_X (x) sigma_Y, "U" marks an identity factor
    out = []
    for tok in row.split():
        sign = -1 if tok.startswith("-") else 1
        body = tok.lstrip("-")
        if body == "1":
            out.append(SignedPauliPair(sign, Pauli.I, Pauli.I))
        else:
            left, right = (Pauli.I if ch == "U" else Pauli[ch] for ch in body)
            out.append(SignedPauliPair(sign, left, right))
    return out


# rows: factor on qubit 1 (I, X, Y, Z); columns: factor on qubit 0 (I, X, Y, Z)
_RAW = {
    ConjugationKind.MAGIC_DAGGER: (
        "1   -UY  YZ  -YX",
        "-ZY  ZU -XX  -XZ",
        "-YU  YY -UZ   UX",
        "-XY  XU  ZX   ZZ",
    ),
    ConjugationKind.MAGIC: (
        "1    YZ -UX  -YY",
        "ZX  -XY -ZU  -XZ",
        "-YU -UZ  YX   UY",
        "XX   ZY -XU   ZZ",
    ),
    ConjugationKind.CNOT_DOWN: (
        "1   UX  ZY   ZZ",
        "XX  XU  YZ  -YY",
        "YX  YU -XZ   XY",
        "ZU  ZX  UY   UZ",
    ),
    ConjugationKind.CNOT_UP: (
        "1   XX  XY  UZ",
        "XU  UX  UY  XZ",
        "YZ  ZY -ZX  YU",
        "ZZ -YY  YX  ZU",
    ),
}

TABLES: dict[ConjugationKind, tuple[tuple[SignedPauliPair, ...], ...]] = {
    kind: tuple(tuple(_parse(r)) for r in rows) for kind, rows in _RAW.items()
}


def conjugate_pauli(kind: ConjugationKind, mu: int, nu: int) -> SignedPauliPair:
    """Table lookup of ``K (sigma_mu (x) sigma_nu) K'`` for the given kind."""
    return TABLES[ConjugationKind(kind)][Pauli(mu)][Pauli(nu)]


def expand_pauli_basis(m: np.ndarray) -> np.ndarray:
    """Coefficients ``c[mu, nu] = tr(sigma_{mu nu}^dag m) / 4``."""
    m = np.asarray(m, dtype=complex)
    c = np.empty((4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(4):
            c[mu, nu] = np.trace(dagger(kron(PAULIS[mu], PAULIS[nu])) @ m) / 4
    return c


def from_pauli_basis(c: np.ndarray) -> np.ndarray:
    out = np.zeros((4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(4):
            out += c[mu, nu] * kron(PAULIS[mu], PAULIS[nu])
    return out


def computed_conjugation(kind: ConjugationKind, mu: int, nu: int,
                         tol: float = 1e-12) -> SignedPauliPair:
    """Conjugate by matrix product and read back the single signed Pauli term.

    Raises ValueError if the result is not ``+-`` one Pauli product within
    ``tol``.
    """
    left, right = _conjugators(ConjugationKind(kind))
    c = expand_pauli_basis(left @ kron(PAULIS[mu], PAULIS[nu]) @ right)
    k = np.unravel_index(np.argmax(np.abs(c)), c.shape)
    lead = c[k]
    rest = c.copy()
    rest[k] = 0
    if abs(abs(lead.real) - 1) > tol or abs(lead.imag) > tol or np.abs(rest).max() > tol:
        raise ValueError(f"conjugation of ({mu}, {nu}) is not a signed Pauli product")
    return SignedPauliPair(int(np.sign(lead.real)), Pauli(int(k[0])), Pauli(int(k[1])))


def format_table(kind: ConjugationKind) -> str:
    kind = ConjugationKind(kind)
    names = ["1", "sX", "sY", "sZ"]
    lines = [f"{kind.value}: rows = qubit-1 factor A, columns = qubit-0 factor B",
             "      " + "".join(f"{n:>7}" for n in names)]
    for mu in range(4):
        cells = []
        for nu in range(4):
            cells.append(f"{str(conjugate_pauli(kind, mu, nu)).lstrip('+'):>7}")
        lines.append(f"{names[mu]:>6}" + "".join(cells))
    return "\n".join(lines)
