"""Quantum Fourier transform circuits and both phase-estimation algorithms.

The QFT circuit matches the discrete Fourier matrix
``(1/sqrt(N)) exp(2 pi i j k / N)`` in this package's bit order when the
final swap layer is included; the no-swap variant leaves the output register
bit-reversed (period finding reads it that way). Controlled powers of the
estimated unitary are supplied as circuits per power-of-two exponent so
callers can plug in modular-multiplication networks instead of matrix
exponentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import state as st
from .circuit import Circuit, run
from .errors import ArgumentError
from .linalg import require_unitary


@dataclass(frozen=True)
class PhaseEstimate:
    """Measured clock register and the phase it encodes."""

    raw_outcome: str
    theta_hat: float
    distribution: dict[str, float]
    exact: bool = True


def qft_circuit(n: int, with_final_swaps: bool = True) -> Circuit:
    """n-qubit QFT: n(n+1)/2 Hadamard/controlled-phase gates plus
    floor(n/2) swaps."""
    if n < 1:
        raise ArgumentError("qft needs at least one qubit")
    circ = Circuit(n)
    for q in range(n):
        circ.h(q)
        for m in range(q + 1, n):
            circ.cp(m, q, 2.0 * math.pi / (1 << (m - q + 1)))
    if with_final_swaps:
        for q in range(n // 2):
            circ.swap(q, n - 1 - q)
    return circ


def iqft_circuit(n: int, with_final_swaps: bool = True) -> Circuit:
    """Hermitian conjugate of the QFT circuit (gates reversed and daggered)."""
    from .circuit import inverse

    return inverse(qft_circuit(n, with_final_swaps))


def qft_gate_count(n: int) -> dict[str, int]:
    """Gate tally of the swap-including circuit: n Hadamards,
    n(n-1)/2 controlled phases, floor(n/2) swaps."""
    return {
        "hadamard": n,
        "controlled_phase": n * (n - 1) // 2,
        "swap": n // 2,
        "total": n * (n + 1) // 2 + n // 2,
    }


def controlled_power_from_matrix(u) -> "callable":
    """Controlled-u^(2^k) factory for a small dense unitary.

    Returned circuits act on 1 + n_target qubits with the control on
    qubit 0; powers are computed by repeated squaring of the matrix.
    """
    u = require_unitary(u, what="phase-estimation unitary")
    dim = u.shape[0]
    n_t = dim.bit_length() - 1
    if dim != 1 << n_t or n_t > 3:
        raise ArgumentError("matrix must act on 1..3 qubits")

    def factory(k: int) -> Circuit:
        power = u.copy()
        for _ in range(k):
            power = power @ power
        circ = Circuit(1 + n_t)
        circ.unitary(tuple(range(1, 1 + n_t)), power, controls=((0, 1),))
        return circ

    return factory


def controlled_power_from_circuit(g: Circuit) -> "callable":
    """Controlled-G^(2^k) factory by repetition of a controlled circuit."""

    def factory(k: int) -> Circuit:
        mapping = {q: q + 1 for q in range(g.n_qubits)}
        shifted = g.remapped(mapping, g.n_qubits + 1)
        once = shifted.controlled(((0, 1),))
        return once.repeated(1 << k)

    return factory


def qpe_circuit(controlled_power, eigenstate_qubits: int, c: int) -> Circuit:
    """Clock register on qubits 0..c-1, target register after it."""
    if not 1 <= c <= 20:
        raise ArgumentError("clock size must be within [1, 20]")
    n = c + eigenstate_qubits
    circ = Circuit(n)
    for q in range(c):
        circ.h(q)
    for j in range(c):
        k = c - 1 - j  # clock qubit j controls U^(2^(c-1-j))
        stage = controlled_power(k)
        if stage.n_qubits != 1 + eigenstate_qubits:
            raise ArgumentError("controlled-power circuit has the wrong width")
        mapping = {0: j}
        for q in range(1, stage.n_qubits):
            mapping[q] = c + (q - 1)
        circ.extend(stage.remapped(mapping, n))
    circ.extend(iqft_circuit(c).remapped({q: q for q in range(c)}, n))
    return circ


def qpe(controlled_power, eigenstate, c: int) -> PhaseEstimate:
    """Phase estimation with a c-bit clock.

    For theta with an exact c-bit expansion the distribution is a point
    mass at ``|2^c theta>``; otherwise it follows the sinc-squared law of
    :func:`qpe_outcome_prob`. Superposed eigenstates yield the weighted
    mixture, reported through the full distribution.
    """
    eigenstate = st.validate_state(eigenstate)
    n_t = st.n_qubits_of(eigenstate)
    circ = qpe_circuit(controlled_power, n_t, c)
    init = st.kron(st.zero_state(c), eigenstate)
    final = run(circ, init)
    dist = st.probabilities(final, list(range(c)))
    outcome = max(dist, key=dist.get)
    theta = int(outcome, 2) / (1 << c)
    exact = dist[outcome] >= 1.0 - 1e-9
    return PhaseEstimate(outcome, theta, dist, exact)


def qpe_outcome_prob(theta: float, c: int, outcome: int) -> float:
    """Closed-form outcome probability sin^2(pi d N) / (N sin(pi d))^2 with
    d = theta - outcome/2^c; the removable singularity at d = 0 is 1."""
    if not 0 <= theta < 1:
        raise ArgumentError("theta must lie in [0, 1)")
    big_n = 1 << c
    if not 0 <= outcome < big_n:
        raise ArgumentError("outcome out of range")
    delta = (theta - outcome / big_n) % 1.0
    if min(delta, 1.0 - delta) < 1e-15:
        return 1.0
    num = math.sin(math.pi * delta * big_n) ** 2
    den = (big_n * math.sin(math.pi * delta)) ** 2
    return num / den


def ipe(controlled_power, eigenstate, m: int) -> PhaseEstimate:
    """Iterative phase estimation with a single recycled ancilla.

    Bits come out least significant first; round k applies the accumulated
    correction phase conditioned on previously measured bits, then a
    Hadamard. Dyadic phases give deterministic bits; otherwise the most
    likely bit is taken per round and the result is flagged inexact.
    """
    if m < 1:
        raise ArgumentError("need at least one phase bit")
    eigenstate = st.validate_state(eigenstate)
    n_t = st.n_qubits_of(eigenstate)
    bits: list[int] = [0] * (m + 1)  # bits[k] = phi_k, 1-indexed
    exact = True
    for round_no in range(1, m + 1):
        power = m - round_no  # apply U^(2^(m - round))
        correction = 0.0
        for l in range(2, round_no + 1):
            correction -= 2.0 * math.pi * bits[m - round_no + l] / (1 << l)
        circ = Circuit(1 + n_t)
        circ.h(0)
        stage = controlled_power(power)
        circ.extend(stage.remapped({q: q for q in range(stage.n_qubits)}, 1 + n_t))
        if correction:
            circ.p(0, correction)
        circ.h(0)
        final = run(circ, st.kron(st.basis_state(0, 1), eigenstate))
        probs = st.probabilities(final, [0])
        bit = 1 if probs["1"] > probs["0"] else 0
        if max(probs.values()) < 1.0 - 1e-9:
            exact = False
        bits[m - round_no + 1] = bit
    measured = "".join(str(bits[k]) for k in range(1, m + 1))
    theta = sum(bits[k] / (1 << k) for k in range(1, m + 1))
    return PhaseEstimate(measured, theta, {measured: 1.0}, exact)
