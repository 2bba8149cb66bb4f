"""Unitary decompositions: Z-Y angles, AXBXC controlled compilation,
doubly/multi-controlled gates, two-level factoring and gray-code synthesis.

All compilers return :class:`~qalg.circuit.Circuit` objects and are verified
against directly-constructed matrices in the tests (full composition only at
small register widths).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Instruction, gate_matrix
from .errors import ArgumentError, ValidationError
from .linalg import dagger, principal_sqrt, require_unitary
from .state import label_to_index

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ZYDecomposition:
    """Angles with u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def reconstruct(self) -> np.ndarray:
        return (
            np.exp(1j * self.alpha)
            * gate_matrix("rz", (self.beta,))
            @ gate_matrix("ry", (self.gamma,))
            @ gate_matrix("rz", (self.delta,))
        )


def _wrap(angle: float, low: float, high: float) -> float:
    span = high - low
    while angle > high:
        angle -= span
    while angle <= low:
        angle += span
    return angle


def zy_decompose(u) -> ZYDecomposition:
    """Z-Y Euler angles of a single-qubit unitary.

    Branch choices: gamma in [0, pi]; beta, delta in (-2pi, 2pi]; alpha in
    (-pi, pi]. When gamma is 0 or pi the z-rotations merge; the full
    rotation then goes to delta and beta is fixed at 0.
    """
    u = require_unitary(u, what="zy_decompose input")
    if u.shape != (2, 2):
        raise ArgumentError("zy_decompose expects a 2x2 unitary")
    alpha = 0.5 * np.angle(np.linalg.det(u))
    v = np.exp(-1j * alpha) * u  # now in SU(2): [[a, -conj(b)], [b, conj(a)]]
    a, b = v[0, 0], v[1, 0]
    gamma = 2.0 * math.atan2(abs(b), abs(a))
    if abs(b) < 1e-9:  # diagonal: only beta + delta is determined
        beta = 0.0
        delta = -2.0 * np.angle(a)
    elif abs(a) < 1e-9:  # anti-diagonal: only beta - delta is determined
        beta = 0.0
        delta = -2.0 * np.angle(b)
    else:
        beta = np.angle(b) - np.angle(a)
        delta = -np.angle(a) - np.angle(b)
    dec = ZYDecomposition(
        _wrap(alpha, -math.pi, math.pi),
        _wrap(beta, -_TWO_PI, _TWO_PI),
        _wrap(gamma, -1e-15, math.pi + 1e-12),
        _wrap(delta, -_TWO_PI, _TWO_PI),
    )
    if float(np.max(np.abs(dec.reconstruct() - u))) > 1e-9:
        raise ValidationError("zy_decompose failed to reconstruct its input")
    return dec


def axbxc_decompose(u):
    """(alpha, A, B, C) with u = e^{i alpha} A X B X C and A @ B @ C = I."""
    d = zy_decompose(u)
    a_mat = gate_matrix("rz", (d.beta,)) @ gate_matrix("ry", (d.gamma / 2,))
    b_mat = gate_matrix("ry", (-d.gamma / 2,)) @ gate_matrix(
        "rz", (-(d.delta + d.beta) / 2,)
    )
    c_mat = gate_matrix("rz", ((d.delta - d.beta) / 2,))
    return d.alpha, a_mat, b_mat, c_mat


def axbxc_compile(u) -> Circuit:
    """Controlled-u on 2 qubits (control 0, target 1) from single-qubit
    gates, CX and a P(alpha) on the control."""
    alpha, a_mat, b_mat, c_mat = axbxc_decompose(u)
    circ = Circuit(2)
    circ.unitary((1,), c_mat)
    circ.cx(0, 1)
    circ.unitary((1,), b_mat)
    circ.cx(0, 1)
    circ.unitary((1,), a_mat)
    circ.p(0, alpha)
    return circ


def sqrt_gate(u) -> np.ndarray:
    """Principal square root: V with V @ V = u."""
    u = require_unitary(u, what="sqrt_gate input")
    return principal_sqrt(u)


def ccu_compile(u) -> Circuit:
    """Doubly-controlled u on 3 qubits (controls 0,1; target 2) using the
    five-stage V / CX / V-dagger / CX / V pattern with V = sqrt(u)."""
    u = require_unitary(u, what="ccu input")
    if u.shape != (2, 2):
        raise ArgumentError("ccu_compile expects a 2x2 unitary")
    v = sqrt_gate(u)
    circ = Circuit(3)
    circ.unitary((2,), v, controls=((1, 1),))
    circ.cx(0, 1)
    circ.unitary((2,), dagger(v), controls=((1, 1),))
    circ.cx(0, 1)
    circ.unitary((2,), v, controls=((0, 1),))
    return circ


def multi_controlled_compile(u, n_controls: int) -> Circuit:
    """C^n(u) via the Toffoli ladder with n_controls - 1 ancillas.

    Register layout: controls ``0..n_controls-1``, target ``n_controls``,
    ancillas at the high end. Ancillas must start in ``|0>`` and are
    restored by mirroring the ladder.
    """
    if n_controls < 1:
        raise ArgumentError("need at least one control")
    u = require_unitary(u, what="multi-controlled input")
    if u.shape != (2, 2):
        raise ArgumentError("multi_controlled_compile expects a 2x2 unitary")
    target = n_controls
    if n_controls == 1:
        return Circuit(2).unitary((target,), u, controls=((0, 1),))
    n_anc = n_controls - 1
    anc = [target + 1 + k for k in range(n_anc)]
    circ = Circuit(n_controls + 1 + n_anc)
    ladder = [Instruction("x", (anc[0],), ((0, 1), (1, 1)))]
    for k in range(2, n_controls):
        ladder.append(Instruction("x", (anc[k - 1],), ((k, 1), (anc[k - 2], 1))))
    circ.instructions.extend(ladder)
    circ.unitary((target,), u, controls=((anc[-1], 1),))
    for ins in reversed(ladder):
        circ.instructions.append(ins)
    return circ


def two_level_decompose(u) -> list[np.ndarray]:
    """Factor a unitary into two-level matrices (each acts non-trivially on
    at most two basis indices) with product equal to ``u``.

    Columns are cleared below the diagonal one entry at a time; the final
    2x2 block is emitted whole, keeping the factor count at most
    d(d-1)/2.
    """
    u = require_unitary(u, what="two_level input")
    d = u.shape[0]
    if d > 16:
        raise ArgumentError("two_level_decompose is limited to dim 16")
    if d == 1:
        return [u.copy()]
    if d == 2:
        return [u.copy()]
    work = u.copy()
    lefts: list[np.ndarray] = []

    def emit(t: np.ndarray) -> None:
        nonlocal work
        work = t @ work
        lefts.append(t)

    for c in range(d - 2):
        for r in range(c + 1, d):
            b = work[r, c]
            if abs(b) < 1e-13:
                continue
            a = work[c, c]
            m = math.hypot(abs(a), abs(b))
            t = np.eye(d, dtype=complex)
            t[c, c] = np.conj(a) / m
            t[c, r] = np.conj(b) / m
            t[r, c] = b / m
            t[r, r] = -a / m
            emit(t)
        ph = work[c, c]
        if abs(ph - 1.0) > 1e-13:
            t = np.eye(d, dtype=complex)
            t[c, c] = np.conj(ph)
            emit(t)
    block = work[d - 2 :, d - 2 :]
    t = np.eye(d, dtype=complex)
    t[d - 2 :, d - 2 :] = dagger(block)
    if float(np.max(np.abs(t - np.eye(d)))) > 1e-13:
        emit(t)
    factors = [dagger(t) for t in lefts]
    return factors if factors else [np.eye(d, dtype=complex)]


def two_level_indices(factor, tol: float = 1e-12) -> tuple[int, ...]:
    """Basis indices a two-level matrix acts on non-trivially."""
    factor = np.asarray(factor)
    d = factor.shape[0]
    rows, cols = np.nonzero(np.abs(factor - np.eye(d)) > tol)
    return tuple(sorted(set(rows.tolist()) | set(cols.tolist())))


def gray_path(idx_a: int, idx_b: int, n: int) -> list[int]:
    """Gray code from a to b, flipping the lowest-index differing qubit
    first (qubit 0 is the most significant bit)."""
    path = [idx_a]
    cur = idx_a
    for q in range(n):
        bit = 1 << (n - 1 - q)
        if (cur ^ idx_b) & bit:
            cur ^= bit
            path.append(cur)
    return path


def gray_code_synthesize(two_level, idx_a, idx_b, n: int) -> Circuit:
    """Compile a two-level unitary into multi-controlled X steps along a
    gray path, one multi-controlled 2x2 gate at the final step, and the X
    steps mirrored back (so every other basis state is untouched)."""
    u = require_unitary(two_level, what="gray-code input")
    ia = label_to_index(idx_a, n)
    ib = label_to_index(idx_b, n)
    if ia == ib:
        raise ArgumentError("the two acted-on indices must differ")
    if u.shape[0] != (1 << n):
        raise ArgumentError(f"matrix dim {u.shape[0]} vs {n} qubits")
    touched = two_level_indices(u)
    if not set(touched) <= {ia, ib}:
        raise ArgumentError(f"matrix acts outside indices {{{ia}, {ib}}}: {touched}")
    block = np.array(
        [[u[ia, ia], u[ia, ib]], [u[ib, ia], u[ib, ib]]], dtype=complex
    )
    path = gray_path(ia, ib, n)
    circ = Circuit(n)
    steps: list[Instruction] = []
    for g_from, g_to in zip(path[:-2], path[1:-1]):
        q = (g_from ^ g_to).bit_length()
        q = n - q  # flipped qubit index
        controls = tuple(
            (k, (g_to >> (n - 1 - k)) & 1) for k in range(n) if k != q
        )
        steps.append(Instruction("x", (q,), controls))
    for ins in steps:
        circ.instructions.append(ins)
    last, final = path[-2], path[-1]
    q = n - (last ^ final).bit_length()
    controls = tuple((k, (final >> (n - 1 - k)) & 1) for k in range(n) if k != q)
    # Orient the 2x2 block: row/col 0 of `block` is index ia, which has
    # travelled to `last` along the path.
    if (last >> (n - 1 - q)) & 1:
        tilde = np.array(
            [[block[1, 1], block[1, 0]], [block[0, 1], block[0, 0]]], dtype=complex
        )
    else:
        tilde = block
    circ.unitary((q,), tilde, controls=controls)
    for ins in reversed(steps):
        circ.instructions.append(ins)
    return circ
