"""Fixed-size complex matrix helpers for two-qubit work.

Qubit convention
----------------
Rows and columns of every 4x4 matrix are labelled ``(a1, a0)`` in the order
00, 01, 10, 11, where ``a0`` is qubit 0 (the top wire of a diagram) and
``a1`` is qubit 1 (the bottom wire).  Consequently ``kron(a, b)`` puts ``a``
on qubit 1 and ``b`` on qubit 0, and a block-diagonal matrix
``blockdiag(P, Q)`` applies ``P`` or ``Q`` to qubit 0 depending on qubit 1.

Every rotation in this package is written ``exp(i * angle * sigma)``; there
is no factor of one half and the sign of the exponent is positive.
"""
from __future__ import annotations

import cmath
import math
from enum import IntEnum
from typing import NamedTuple

import numpy as np
import scipy.linalg

UNITARY_TOL = 1e-10
ZERO_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)

# projectors onto |1> and |0>
N_PROJ = np.array([[0, 0], [0, 1]], dtype=complex)
NBAR_PROJ = np.array([[1, 0], [0, 0]], dtype=complex)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

I4 = np.eye(4, dtype=complex)
EXCHANGE = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)
MAGIC = np.array(
    [[1, 0, 0, 1j],
     [0, 1j, 1, 0],
     [0, 1j, -1, 0],
     [1, 0, 0, -1j]], dtype=complex) / np.sqrt(2)

# CNOT_10: control qubit 1, target qubit 0.  CNOT_01: control 0, target 1.
CNOT_10 = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=complex)
CNOT_01 = np.array(
    [[1, 0, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0],
     [0, 1, 0, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)


class Pauli(IntEnum):
    I = 0
    X = 1
    Y = 2
    Z = 3

    @property
    def matrix(self) -> np.ndarray:
        return PAULIS[self]


class SignedPauliPair(NamedTuple):
    """``sign * kron(sigma_left, sigma_right)``; ``left`` acts on qubit 1."""

    sign: int
    left: Pauli
    right: Pauli

    def matrix(self) -> np.ndarray:
        return self.sign * kron(PAULIS[self.left], PAULIS[self.right])

    def __str__(self) -> str:
        if self.left == Pauli.I and self.right == Pauli.I:
            body = "1"
        else:
            body = "s" + ("U" if self.left == Pauli.I else self.left.name) + (
                "U" if self.right == Pauli.I else self.right.name)
        return ("-" if self.sign < 0 else "+") + body


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with ``a`` on qubit 1 (bottom) and ``b`` on qubit 0 (top)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape == b.shape == (2, 2):
        return (a[:, None, :, None] * b[None, :, None, :]).reshape(4, 4)
    return np.kron(a, b)


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def blockdiag(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = p
    out[2:, 2:] = q
    return out


def unitarity_error(a: np.ndarray) -> float:
    """Frobenius norm of ``a^dag a - I``."""
    a = np.asarray(a)
    if a.shape == (2, 2):
        p, q, r, s = a.ravel().tolist()
        d0 = abs(p) ** 2 + abs(r) ** 2 - 1
        d1 = abs(q) ** 2 + abs(s) ** 2 - 1
        off = abs(p.conjugate() * q + r.conjugate() * s)
        return math.sqrt(d0 * d0 + d1 * d1 + 2 * off * off)
    m = a.conj().T @ a
    m.flat[::a.shape[0] + 1] -= 1
    return float(np.sqrt(np.sum(m.real ** 2 + m.imag ** 2)))


def is_unitary(a: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    # NaN propagates into the error and fails the comparison
    return unitarity_error(a) <= tol


def det2(a: np.ndarray) -> complex:
    return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]


def is_special_unitary(a: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    if not is_unitary(a, tol):
        return False
    det = det2(a) if a.shape == (2, 2) else np.linalg.det(a)
    return abs(det - 1) <= tol


def require_unitary(a, shape: tuple[int, int], name: str = "matrix",
                    tol: float = UNITARY_TOL) -> np.ndarray:
    """Return ``a`` as a complex array, raising ValueError unless it is unitary."""
    arr = np.asarray(a, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not is_unitary(arr, tol):
        raise ValueError(f"{name} is not unitary")
    return arr


def wrap_angle(x: float) -> float:
    """Map an angle onto (-pi, pi]."""
    y = float(np.fmod(x, 2 * np.pi))
    if y <= -np.pi:
        y += 2 * np.pi
    elif y > np.pi:
        y -= 2 * np.pi
    return y


def su2_exp(axis, angle: float) -> np.ndarray:
    """``exp(i * angle * (axis . sigma))`` for a unit 3-vector ``axis``."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1) > 1e-12:
        raise ValueError("axis must be a unit 3-vector")
    gen = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
    return np.cos(angle) * I2 + 1j * np.sin(angle) * gen


def rx(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 1j * s], [1j * s, c]])


def ry(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]], dtype=complex)


def rz(angle: float) -> np.ndarray:
    e = cmath.exp(1j * angle)
    return np.array([[e, 0], [0, e.conjugate()]])


def pauli_exp(coeffs: dict[tuple[int, int], float]) -> np.ndarray:
    """``exp(i * sum c * sigma_mu (x) sigma_nu)`` for a dict ``{(mu, nu): c}``."""
    gen = np.zeros((4, 4), dtype=complex)
    for (mu, nu), c in coeffs.items():
        gen += c * kron(PAULIS[mu], PAULIS[nu])
    return scipy.linalg.expm(1j * gen)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> float | None:
    """Phase ``phi`` with ``||a - exp(i phi) b||_F <= tol``, or None.

    The candidate phase is read off the largest-magnitude entry of ``b^dag a``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    m = dagger(b) @ a
    k = np.unravel_index(np.argmax(np.abs(m)), m.shape)
    if abs(m[k]) <= ZERO_TOL:
        return None
    phi = float(np.angle(m[k]))
    if abs(phi) <= ZERO_TOL:
        phi = 0.0
    if np.linalg.norm(a - np.exp(1j * phi) * b) <= tol:
        return phi
    return None


def euler_zyz(a: np.ndarray) -> tuple[float, float, float]:
    """Angles ``(alpha, beta, gamma)`` with ``a = rz(alpha) @ ry(beta) @ rz(gamma)``.

    ``a`` must lie in SU(2).  ``beta`` is in [0, pi/2].  When ``beta`` sits at
    an end of that range only one combination of ``alpha`` and ``gamma`` is
    fixed; the other (``alpha + gamma`` or ``alpha - gamma``) is set to zero.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2) or not is_special_unitary(a):
        raise ValueError("euler_zyz needs a special-unitary 2x2 matrix")
    c, s = abs(a[0, 0]), abs(a[0, 1])
    beta = float(np.arctan2(s, c))
    # a00 = exp(i(alpha+gamma)) cos(beta), a01 = exp(i(alpha-gamma)) sin(beta)
    plus = float(np.angle(a[0, 0])) if c > ZERO_TOL else 0.0
    minus = float(np.angle(a[0, 1])) if s > ZERO_TOL else 0.0
    alpha = wrap_angle((plus + minus) / 2)
    gamma = wrap_angle((plus - minus) / 2)
    return alpha, beta, gamma


def _fix_column_phases(w: np.ndarray) -> np.ndarray:
    # the first entry within 1e-12 of the column's largest magnitude is made real positive
    mag = np.abs(w)
    k = np.argmax(mag > mag.max(axis=0) - 1e-12, axis=0)
    pivot = w[k, np.arange(w.shape[1])]
    return w * (pivot.conj() / np.abs(pivot))


def diagonalize_unitary2(a: np.ndarray) -> tuple[np.ndarray, float, float]:
    """Write a 2x2 unitary as ``exp(i delta) * w @ rz(theta) @ w^dag``.

    Returns ``(w, theta, delta)`` with ``theta`` in [0, pi/2] (the eigenvalue
    pair is ordered so that ``2 theta`` is the counter-clockwise gap from the
    second eigenphase to the first, taken in [0, pi]).  A scalar input gives
    ``w = I`` and ``theta = 0``.  Columns of ``w`` are phase-fixed so their
    largest entry is real and positive.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2) or not is_unitary(a):
        raise ValueError("diagonalize_unitary2 needs a unitary 2x2 matrix")
    p, q, r, s = (complex(z) for z in a.ravel())
    half = (p - s) / 2
    if abs(q) <= ZERO_TOL and abs(r) <= ZERO_TOL and abs(half) <= ZERO_TOL:
        return I2.copy(), 0.0, wrap_angle(cmath.phase(p))
    # a is normal: one eigenvector plus its orthogonal complement diagonalize it
    h = cmath.sqrt(half * half + q * r)
    lam1, lam2 = (p + s) / 2 + h, (p + s) / 2 - h
    va, vb = (q, h - half), (h + half, r)
    v = va if abs(va[0]) ** 2 + abs(va[1]) ** 2 >= abs(vb[0]) ** 2 + abs(vb[1]) ** 2 else vb
    norm = math.hypot(abs(v[0]), abs(v[1]))
    v = (v[0] / norm, v[1] / norm)
    w = np.array([[v[0], -v[1].conjugate()], [v[1], v[0].conjugate()]])
    ph1, ph2 = cmath.phase(lam1), cmath.phase(lam2)
    gap = (ph1 - ph2) % (2 * math.pi)
    if gap > math.pi:
        w = w[:, ::-1]
        ph1 = ph2
        gap = 2 * math.pi - gap
    theta = gap / 2
    return _fix_column_phases(w), theta, wrap_angle(ph1 - theta)


def split_phase(a: np.ndarray) -> tuple[float, np.ndarray]:
    """Write a unitary as ``exp(i phi) * s`` with ``det(s) = 1``."""
    a = np.asarray(a, dtype=complex)
    if a.shape == (2, 2):
        det = det2(a)
    else:
        det = np.linalg.det(a)
    phi = float(np.angle(det)) / a.shape[0]
    return phi, a * np.exp(-1j * phi)
