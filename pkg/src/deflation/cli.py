"""Command-line front end.

Commands: ``deflate``, ``close-breach``, ``synth``, ``verify`` and ``tables``.
Circuits are read and written as JSON (see :mod:`deflation.circuit`); plain
matrices are text files with one row per line and whitespace-separated
entries such as ``0.5+0.5j``.

Exit codes: 0 success, 1 input error, 2 verification failure.  Commands that
produce a circuit also print ``max_err=<value>`` on stderr; the tolerance it
is compared against can be overridden with the ``DEFLATE_TOL`` environment
variable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np
import scipy.linalg

from . import circuit as circ
from .breach import BreachPattern, close_breach
from .circuit import Circuit, Cnot, ControlledU, Cz, GlobalPhase, evaluate
from .csd import synth_3cnot
from .deflate import (
    DeflationInput, build_lhs, build_rhs, deflate_core, deflate_opposite_side,
    deflate_same_side,
)
from .linalg import I2, SIGMA_X, SIGMA_Z, unitarity_error
from .tables import ConjugationKind, format_table
from .verify import CORE_TOL, PIPELINE_TOL, run_suite

INPUT_UNITARY_TOL = 1e-8

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2


class InputError(Exception):
    """Bad input: reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors too
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# --- matrix text files -----------------------------------------------------

def parse_matrix(text: str, n: int) -> np.ndarray:
    """Parse an ``n x n`` complex matrix, one row per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows = [ln.split() for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"expected a {n}x{n} matrix, one row per line")
    try:
        return np.array([[complex(tok) for tok in r] for r in rows])
    except ValueError as exc:
        raise InputError(f"bad matrix entry: {exc}") from None


def format_matrix(m: np.ndarray) -> str:
    """Inverse of :func:`parse_matrix`, exact for doubles."""
    return "\n".join(" ".join(repr(complex(z)).strip("()") for z in row)
                     for row in np.asarray(m)) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_matrix(path: str, n: int) -> np.ndarray:
    m = parse_matrix(_read(path), n)
    if not np.all(np.isfinite(m)):
        raise InputError(f"{path}: entries must be finite")
    if unitarity_error(m) > INPUT_UNITARY_TOL:
        raise InputError("input not unitary")
    return m


def _read_circuit(path: str) -> Circuit:
    try:
        return circ.loads(_read(path))
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


# --- shared output ---------------------------------------------------------

def _tolerance(default: float) -> float:
    raw = os.environ.get("DEFLATE_TOL")
    if raw is None or raw.strip() == "":
        return default
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"DEFLATE_TOL must be a decimal number, got {raw!r}") from None
    if not tol >= 0:
        raise InputError("DEFLATE_TOL must be non-negative")
    return tol


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _finish(payload: dict, produced: Circuit, expected: np.ndarray,
            tol: float, out: str | None) -> int:
    err = float(np.linalg.norm(evaluate(produced) - expected))
    _emit(json.dumps(payload, indent=2), out)
    print(f"max_err={err:.17g}", file=sys.stderr)
    if not err <= tol:
        print(f"verification failed: max_err exceeds {tol:g}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# --- commands --------------------------------------------------------------

def _controlled_block(g, side_control: int) -> np.ndarray:
    """2x2 block of an entangling gate with the given control wire."""
    if isinstance(g, Cz):
        return SIGMA_Z
    if isinstance(g, Cnot) and g.control == side_control:
        return SIGMA_X
    if isinstance(g, ControlledU) and g.control == side_control:
        return g.matrix
    raise InputError(f"expected a controlled gate with control on wire {side_control}")


def split_two_controlled(c: Circuit, side: str):
    """Read ``ctrl(u) ; a (x) b ; ctrl(v)`` out of a circuit.

    Returns ``(u, a, b, v, phase)``.  Only one-qubit gates and global phases
    may sit between the two controlled gates; nothing may come before the
    first or after the second except global phases.
    """
    phase = 0.0
    body = []
    for g in c:
        if isinstance(g, GlobalPhase):
            phase += g.angle
        else:
            body.append(g)
    if len(body) < 2 or not isinstance(body[0], circ.ENTANGLING) \
            or not isinstance(body[-1], circ.ENTANGLING):
        raise InputError("circuit must start and end with a controlled gate")
    if any(isinstance(g, circ.ENTANGLING) for g in body[1:-1]):
        raise InputError("circuit must contain exactly two controlled gates")
    u = _controlled_block(body[0], 1)
    v = _controlled_block(body[-1], 1 if side == "same" else 0)
    layer = [I2, I2]
    for g in body[1:-1]:
        layer[g.qubit] = g.matrix2() @ layer[g.qubit]
    return u, layer[0], layer[1], v, phase


def cmd_deflate(args) -> int:
    angle_flags = (args.theta_l, args.beta, args.beta_prime, args.theta_r)
    if args.circuit is None:
        if any(x is None for x in angle_flags):
            raise InputError("give a circuit file or all of --theta-l --beta --beta-prime --theta-r")
        inp = DeflationInput(*angle_flags)
        angles = deflate_core(inp)
        out = build_rhs(inp, angles)
        payload = circ.to_dict(out)
        payload["angles"] = {
            "gamma_L": angles.gamma_L, "gamma_L_prime": angles.gamma_L_prime,
            "mu": angles.mu, "mu_prime": angles.mu_prime,
            "gamma_R": angles.gamma_R, "gamma_R_prime": angles.gamma_R_prime,
        }
        return _finish(payload, out, evaluate(build_lhs(inp)), _tolerance(CORE_TOL), args.out)
    if any(x is not None for x in angle_flags):
        raise InputError("angle flags cannot be combined with a circuit file")
    source = _read_circuit(args.circuit)
    u, a, b, v, phase = split_two_controlled(source, args.side)
    rewrite = deflate_same_side if args.side == "same" else deflate_opposite_side
    out = circ.canonicalize(list(rewrite(u, a, b, v)) + [GlobalPhase(phase)])
    return _finish(circ.to_dict(out), out, evaluate(source), _tolerance(PIPELINE_TOL), args.out)


def cmd_close_breach(args) -> int:
    p = BreachPattern(_read_matrix(args.b_file, 2), _read_matrix(args.g_file, 2),
                      _read_matrix(args.a_file, 2))
    out = close_breach(p)
    return _finish(circ.to_dict(out), out, evaluate(p.circuit()),
                   _tolerance(PIPELINE_TOL), args.out)


def cmd_synth(args) -> int:
    text = _read(args.file)
    if text.lstrip().startswith("{"):
        u = evaluate(_read_circuit(args.file))
    else:
        u = parse_matrix(text, 4)
        if not np.all(np.isfinite(u)):
            raise InputError(f"{args.file}: entries must be finite")
    if unitarity_error(u) > INPUT_UNITARY_TOL:
        raise InputError("input not unitary")
    # nearest unitary; the target the circuit is checked against
    target = scipy.linalg.polar(u)[0]
    out = synth_3cnot(target, gate=args.gate)
    return _finish(circ.to_dict(out), out, target, _tolerance(PIPELINE_TOL), args.out)


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if args.seed < 0:
        raise InputError("--seed must be non-negative")
    report = run_suite(args.seed, args.trials)
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_tables(args) -> int:
    kinds = [ConjugationKind(args.kind)] if args.kind else list(ConjugationKind)
    _emit("\n\n".join(format_table(k) for k in kinds), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deflation", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("deflate", help="two controlled gates -> two CNOTs")
    p.add_argument("circuit", nargs="?", help="circuit JSON: ctrl(u), one-qubit gates, ctrl(v)")
    p.add_argument("--side", choices=["same", "opposite"], default="same",
                   help="control of the second gate on wire 1 (same) or wire 0 (opposite)")
    p.add_argument("--theta-l", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--beta-prime", type=float)
    p.add_argument("--theta-r", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_deflate)

    p = sub.add_parser("close-breach", help="three CNOTs around a breach -> two")
    p.add_argument("--b-file", required=True)
    p.add_argument("--g-file", required=True)
    p.add_argument("--a-file", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_close_breach)

    p = sub.add_parser("synth", help="any 4x4 unitary -> three entangling gates")
    p.add_argument("file", help="4x4 matrix text file or circuit JSON")
    p.add_argument("--gate", choices=["cz", "cnot"], default="cz")
    p.add_argument("--out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="seeded randomized check of every rewrite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="Pauli conjugation tables")
    p.add_argument("--kind", choices=[k.value for k in ConjugationKind])
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
