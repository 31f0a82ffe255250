"""Cosine-sine decomposition of a two-qubit unitary and three-CNOT synthesis."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .circuit import (
    Circuit, Cnot, ControlledU, Cz, GlobalPhase, OneQubit, Rotation,
    canonicalize, chain, to_cz,
)
from .deflate import _same_side_layers
from .linalg import (
    HADAMARD, I2, SIGMA_Z, ZERO_TOL, blockdiag, dagger, det2,
    diagonalize_unitary2, require_unitary, ry, rz, wrap_angle,
)


@dataclass(frozen=True, eq=False)
class CsdFactors:
    """``U = e^{i alpha} diag(e^{i aL} L0, e^{-i aL} L1) CS diag(e^{i aR} R0, e^{-i aR} R1)``.

    The middle factor is ``CS = [[C, S], [-S, C]]`` with
    ``C = diag(cos theta1, cos theta2)`` and ``S = diag(sin theta1, sin theta2)``.
    Blocks are indexed by qubit 1, so the corner factors act on qubit 0.
    """

    alpha: float
    alpha_L: float
    alpha_R: float
    theta1: float
    theta2: float
    l0: np.ndarray
    l1: np.ndarray
    r0: np.ndarray
    r1: np.ndarray

    @property
    def C(self) -> np.ndarray:
        return np.diag([np.cos(self.theta1), np.cos(self.theta2)])

    @property
    def S(self) -> np.ndarray:
        return np.diag([np.sin(self.theta1), np.sin(self.theta2)])

    def cs_matrix(self) -> np.ndarray:
        C, S = self.C, self.S
        return np.block([[C, S], [-S, C]]).astype(complex)

    def reconstruct(self) -> np.ndarray:
        left = blockdiag(np.exp(1j * self.alpha_L) * self.l0, np.exp(-1j * self.alpha_L) * self.l1)
        right = blockdiag(np.exp(1j * self.alpha_R) * self.r0, np.exp(-1j * self.alpha_R) * self.r1)
        return np.exp(1j * self.alpha) * left @ self.cs_matrix() @ right


@dataclass(frozen=True, eq=False)
class CsdCircuitIntermediates:
    """Diagonalized controlled blocks of the CSD circuit.

    ``L0^dag L1 = u_l rz(lambda_L) u_l^dag`` and
    ``sigma_Z R1 R0^dag = e^{i delta_R} u_r rz(lambda_R) u_r^dag``.
    ``sigma_Z R1 R0^dag`` has determinant -1, so ``delta_R`` is always
    +-pi/2.
    """

    u_l: np.ndarray
    u_r: np.ndarray
    lambda_L: float
    lambda_R: float
    delta_R: float


def _pivot_phase(row: np.ndarray) -> complex:
    mag = np.abs(row)
    k = int(np.argmax(mag > mag.max() - 1e-12))
    return np.exp(1j * np.angle(row[k]))


def _su2_part(a: np.ndarray) -> tuple[float, np.ndarray]:
    # a = e^{i phi} s with det s = 1; sign chosen so that Re tr s >= 0
    phi = float(np.angle(det2(a))) / 2
    s = a * np.exp(-1j * phi)
    if np.trace(s).real < -ZERO_TOL:
        s = -s
        phi += np.pi
    return phi, s


def csd_2q(u) -> CsdFactors:
    """Cosine-sine decomposition with ``cos theta1 >= cos theta2``."""
    u = require_unitary(u, (4, 4), "u")
    q, cs, vdh = scipy.linalg.cossin(u, p=2, q=2)
    a0, a1 = q[:2, :2], -q[2:, 2:]
    b0, b1 = vdh[:2, :2], -vdh[2:, 2:]
    c = np.clip(np.diag(cs[:2, :2]).real, 0.0, 1.0)
    s = np.clip(np.diag(cs[2:, :2]).real, 0.0, 1.0)
    if c[0] < c[1]:
        a0, a1 = a0[:, ::-1], a1[:, ::-1]
        b0, b1 = b0[::-1, :], b1[::-1, :]
        c, s = c[::-1], s[::-1]
    theta = np.arctan2(s, c)

    if abs(theta[0] - theta[1]) <= ZERO_TOL:
        # C and S are scalar: rotate the shared basis so that b0 = I
        a0, a1, b1, b0 = a0 @ b0, a1 @ b0, dagger(b0) @ b1, I2.copy()
    else:
        d = np.array([_pivot_phase(b0[i]) for i in range(2)])
        a0, a1 = a0 * d, a1 * d
        b0, b1 = b0 / d[:, None], b1 / d[:, None]
    for i in range(2):
        # a column of a1 (if s_i = 0) or a0 (if c_i = 0) pairs only with row i of b1
        if s[i] <= ZERO_TOL or c[i] <= ZERO_TOL:
            d = _pivot_phase(b1[i])
            b1[i] = b1[i] / d
            if s[i] <= ZERO_TOL:
                a1[:, i] = a1[:, i] * d
            else:
                a0[:, i] = a0[:, i] * d

    phi0, l0 = _su2_part(a0)
    phi1, l1 = _su2_part(a1)
    psi0, r0 = _su2_part(b0)
    psi1, r1 = _su2_part(b1)
    return CsdFactors(
        alpha=wrap_angle((phi0 + phi1 + psi0 + psi1) / 2),
        alpha_L=wrap_angle((phi0 - phi1) / 2),
        alpha_R=wrap_angle((psi0 - psi1) / 2),
        theta1=float(theta[0]), theta2=float(theta[1]),
        l0=l0, l1=l1, r0=r0, r1=r1,
    )


def csd_intermediates(f: CsdFactors) -> CsdCircuitIntermediates:
    u_l, lam_l, delta_l = diagonalize_unitary2(dagger(f.l0) @ f.l1)
    if abs(delta_l) > np.pi / 2:
        # L0^dag L1 is in SU(2), so delta_l is 0 or pi; -rz(x) = rz(x + pi)
        lam_l += np.pi
    u_r, lam_r, delta_r = diagonalize_unitary2(SIGMA_Z @ f.r1 @ dagger(f.r0))
    return CsdCircuitIntermediates(u_l, u_r, wrap_angle(lam_l), lam_r, delta_r)


def _phase_gate(delta: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * delta)])


def csd_to_circuit(f: CsdFactors) -> Circuit:
    """Circuit with two controlled-Rz gates and one CZ equal to the CSD product.

    In application order: the right corner block, the cosine-sine block as
    ``CZ ; ry(d) ; CZ ; ry(s)`` on wire 1 with ``d = (theta1 - theta2)/2`` and
    ``s = (theta1 + theta2)/2``, then the left corner block.  The first CZ is
    folded into the controlled ``R1 R0^dag``.
    """
    im = csd_intermediates(f)
    half_sum = (f.theta1 + f.theta2) / 2
    half_dif = (f.theta1 - f.theta2) / 2
    return Circuit([
        OneQubit(0, chain(f.r0, dagger(im.u_r))),
        Rotation("Z", 1, f.alpha_R),
        OneQubit(1, _phase_gate(im.delta_R)),
        ControlledU(1, 0, rz(im.lambda_R)),
        OneQubit(0, im.u_r),
        Rotation("Y", 1, half_dif),
        Cz(),
        OneQubit(0, dagger(im.u_l)),
        Rotation("Y", 1, half_sum),
        ControlledU(1, 0, rz(im.lambda_L)),
        OneQubit(0, chain(im.u_l, f.l0)),
        Rotation("Z", 1, f.alpha_L),
        GlobalPhase(f.alpha),
    ])


def synth_3cnot(u, gate: str = "cz") -> Circuit:
    """Circuit with exactly three entangling gates equal to ``u``.

    ``gate`` selects the entangling gate of the output: ``"cz"`` or ``"cnot"``
    (control on wire 1).  The two controlled-Rz gates of
    :func:`csd_to_circuit` are each paired with a CZ and rewritten as two
    CNOTs.
    """
    if gate not in ("cz", "cnot"):
        raise ValueError("gate must be 'cz' or 'cnot'")
    f = csd_2q(u)
    im = csd_intermediates(f)
    half_sum = (f.theta1 + f.theta2) / 2
    half_dif = (f.theta1 - f.theta2) / 2

    # ctrl-rz(lambda_R) ; u_r (x) ry(d) ; CZ
    first = _same_side_layers(rz(im.lambda_R), im.u_r, ry(half_dif), SIGMA_Z)
    # second CNOT of `first` as H CZ H, then CZ ; ... ; ctrl-rz(lambda_L)
    second = _same_side_layers(
        SIGMA_Z,
        chain(HADAMARD, first.post[0], dagger(im.u_l)),
        chain(first.post[1], ry(half_sum)),
        rz(im.lambda_L),
    )
    gates = [
        OneQubit(0, chain(f.r0, dagger(im.u_r))),
        OneQubit(1, chain(rz(f.alpha_R), _phase_gate(im.delta_R))),
        OneQubit(0, first.pre[0]), OneQubit(1, first.pre[1]),
        Cnot(1, 0),
        OneQubit(0, chain(first.mid[0], HADAMARD)), OneQubit(1, first.mid[1]),
        GlobalPhase(first.phase),
    ]
    gates += list(second.circuit())
    gates += [
        OneQubit(0, chain(im.u_l, f.l0)),
        OneQubit(1, rz(f.alpha_L)),
        GlobalPhase(f.alpha),
    ]
    out = canonicalize(gates)
    return to_cz(out) if gate == "cz" else out
