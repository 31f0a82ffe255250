"""Rewrite two controlled-U's on two qubits as a circuit with two CNOTs.

:func:`deflate_core` gives the closed-form angles for the case where both
controlled gates are z-rotations and the middle gates are y-rotations.
:func:`deflate_same_side` and :func:`deflate_opposite_side` reduce arbitrary
2x2 unitaries to that case.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import (
    Circuit, Cnot, ControlledU, GlobalPhase, OneQubit, Rotation, canonicalize,
    chain, controlled_rotation_matrix,
)
from .linalg import (
    ZERO_TOL, diagonalize_unitary2, euler_zyz, require_unitary, rx, ry, rz,
    split_phase, wrap_angle,
)


@dataclass(frozen=True)
class DeflationInput:
    theta_L: float
    beta: float
    beta_prime: float
    theta_R: float


@dataclass(frozen=True)
class DeflationAngles:
    gamma_L: float
    gamma_L_prime: float
    mu: float
    mu_prime: float
    gamma_R: float
    gamma_R_prime: float
    # intermediates, kept for testing
    xi_plus: float = 0.0
    xi_minus: float = 0.0
    eta_plus: float = 0.0
    eta_minus: float = 0.0
    p_plus: float = 1.0
    p_minus: float = 1.0
    q_plus: float = 0.0
    q_minus: float = 0.0
    mu_plus: float = 0.0
    mu_minus: float = 0.0


def _polar_angle(c: float, s: float, r: float) -> float:
    # angle with (cos, sin) = (c, s) / r; zero when r vanishes
    if r <= ZERO_TOL:
        return 0.0
    return float(np.arctan2(s, c))


def deflate_core(inp: DeflationInput) -> DeflationAngles:
    tl, b, bp, tr = inp.theta_L, inp.beta, inp.beta_prime, inp.theta_R
    ch_sum, sh_sum = np.cos((tl + tr) / 2), np.sin((tl + tr) / 2)
    ch_dif, sh_dif = np.cos((tl - tr) / 2), np.sin((tl - tr) / 2)

    parts = {}
    for sgn in (1, -1):
        ang = -bp + sgn * b
        x1 = ch_sum * np.cos(ang)
        x2 = ch_dif * np.sin(ang)
        p = float(np.hypot(x1, x2))
        xi = _polar_angle(x1, x2, p)
        y1 = -sgn * sh_dif * np.sin(ang)
        y2 = -sgn * sh_sum * np.cos(ang)
        q = float(np.hypot(y1, y2))
        eta = _polar_angle(y1, y2, q)
        # p^2 + q^2 = 1 analytically, so (p, q) is already a unit vector
        m = float(np.arctan2(q, p))
        parts[sgn] = (p, xi, q, eta, m)

    pp, xp, qp, ep, mp = parts[1]
    pm, xm, qm, em, mm = parts[-1]
    return DeflationAngles(
        gamma_L=wrap_angle((ep - em + xp - xm) / 4),
        gamma_L_prime=wrap_angle((-ep - em - xp - xm + np.pi) / 4),
        mu=wrap_angle((mp - mm) / 2),
        mu_prime=wrap_angle((mp + mm) / 2),
        gamma_R=wrap_angle((-ep + em + xp - xm) / 4),
        gamma_R_prime=wrap_angle((ep + em - xp - xm - np.pi) / 4),
        xi_plus=xp, xi_minus=xm, eta_plus=ep, eta_minus=em,
        p_plus=pp, p_minus=pm, q_plus=qp, q_minus=qm,
        mu_plus=mp, mu_minus=mm,
    )


def build_lhs(inp: DeflationInput) -> Circuit:
    """Controlled-Rz, a layer of y-rotations, controlled-Rz (controls on wire 1)."""
    return Circuit([
        ControlledU(1, 0, rz(inp.theta_L)),
        Rotation("Y", 0, inp.beta),
        Rotation("Y", 1, inp.beta_prime),
        ControlledU(1, 0, rz(inp.theta_R)),
    ])


def build_rhs(inp: DeflationInput, angles: DeflationAngles | None = None) -> Circuit:
    """The equivalent two-CNOT circuit."""
    a = deflate_core(inp) if angles is None else angles
    return Circuit([
        Rotation("Z", 0, inp.theta_L / 2),
        Rotation("Y", 0, a.gamma_L),
        Rotation("Y", 1, a.gamma_L_prime),
        Cnot(1, 0),
        Rotation("Z", 0, a.mu),
        Rotation("X", 1, a.mu_prime),
        Cnot(1, 0),
        Rotation("Y", 0, a.gamma_R),
        Rotation("Y", 1, a.gamma_R_prime),
        Rotation("Z", 0, inp.theta_R / 2),
    ])


def _phase_gate(delta: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * delta)])


@dataclass
class _TwoCnotLayers:
    """``pre, CNOT(1->0), mid, CNOT(1->0), post`` with a global phase.

    Each of ``pre``, ``mid`` and ``post`` is a pair ``(wire0, wire1)`` of 2x2
    matrices.
    """

    pre: list
    mid: list
    post: list
    phase: float

    def circuit(self) -> Circuit:
        gates = [OneQubit(0, self.pre[0]), OneQubit(1, self.pre[1]), Cnot(1, 0),
                 OneQubit(0, self.mid[0]), OneQubit(1, self.mid[1]), Cnot(1, 0),
                 OneQubit(0, self.post[0]), OneQubit(1, self.post[1]),
                 GlobalPhase(self.phase)]
        return canonicalize(gates)


def _same_side_layers(u, a, b, v) -> _TwoCnotLayers:
    wu, theta_u, delta_u = diagonalize_unitary2(u)
    wv, theta_v, delta_v = diagonalize_unitary2(v)
    # the phase of each controlled gate becomes diag(1, e^{i delta}) on wire 1;
    # it is diagonal on the control wire so it commutes past the controls
    m0 = chain(wu, a, wv.conj().T)
    m1 = chain(_phase_gate(delta_u), b)
    phi0, s0 = split_phase(m0)
    phi1, s1 = split_phase(m1)
    al0, be0, ga0 = euler_zyz(s0)
    al1, be1, ga1 = euler_zyz(s1)
    # the outer z-rotations of each Euler triple commute with controlled-Rz
    inp = DeflationInput(theta_u, be0, be1, theta_v)
    ang = deflate_core(inp)
    pre0 = chain(wu.conj().T, rz(ga0), rz(theta_u / 2), ry(ang.gamma_L))
    pre1 = chain(rz(ga1), ry(ang.gamma_L_prime))
    post0 = chain(ry(ang.gamma_R), rz(theta_v / 2), rz(al0), wv)
    post1 = chain(ry(ang.gamma_R_prime), rz(al1), _phase_gate(delta_v))
    return _TwoCnotLayers([pre0, pre1], [rz(ang.mu), rx(ang.mu_prime)],
                          [post0, post1], phi0 + phi1)


def deflate_same_side(u, a, b, v) -> Circuit:
    """Two-CNOT circuit equal to ``ctrl(u) ; a (x) b ; ctrl(v)``.

    Both controlled gates have control on wire 1 and target on wire 0; ``a``
    acts on wire 0 and ``b`` on wire 1.  Gates are listed in application
    order.  The result is in canonical layered form and matches the input
    matrix exactly, global phase included.
    """
    u, a, b, v = (require_unitary(m, (2, 2), n) for m, n in
                  zip((u, a, b, v), ("u", "a", "b", "v")))
    return _same_side_layers(u, a, b, v).circuit()


def deflate_opposite_side(u, a, b, v) -> Circuit:
    """Two-CNOT circuit equal to ``ctrl(u) ; a (x) b ; ctrl(v)``.

    Here the first controlled gate has control on wire 1 and the second has
    control on wire 0 (target wire 1).
    """
    u, a, b, v = (require_unitary(m, (2, 2), n) for m, n in
                  zip((u, a, b, v), ("u", "a", "b", "v")))
    wv, theta, delta = diagonalize_unitary2(v)
    # ctrl_{0->1}(rz(theta)) = rz(theta/2) on wire 1, rz(-theta/2) on wire 0,
    # then ctrl_{1->0}(rz(theta)); all factors are diagonal
    layers = _same_side_layers(u, a, chain(b, wv.conj().T), rz(theta))
    layers.post[0] = chain(layers.post[0], rz(-theta / 2), _phase_gate(delta))
    layers.post[1] = chain(layers.post[1], rz(theta / 2), wv)
    return layers.circuit()


def same_side_circuit(u, a, b, v) -> Circuit:
    """The input pattern of :func:`deflate_same_side` as a circuit."""
    return Circuit([ControlledU(1, 0, u), OneQubit(0, a), OneQubit(1, b), ControlledU(1, 0, v)])


def opposite_side_circuit(u, a, b, v) -> Circuit:
    """The input pattern of :func:`deflate_opposite_side` as a circuit."""
    return Circuit([ControlledU(1, 0, u), OneQubit(0, a), OneQubit(1, b), ControlledU(0, 1, v)])


__all__ = [
    "DeflationInput", "DeflationAngles", "deflate_core", "build_lhs", "build_rhs",
    "deflate_same_side", "deflate_opposite_side", "same_side_circuit",
    "opposite_side_circuit", "controlled_rotation_matrix",
]
