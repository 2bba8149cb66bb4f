"""Grover search, quantum counting, amplitude estimation, derandomized
search, and the Hamiltonian-evolution realization of search.

The Grover operator is compiled as phase oracle followed by the diffuser
``2|s><s| - I`` (a global-phase instruction keeps the sign exact, which
matters once the operator is controlled inside phase estimation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import state as st
from .circuit import Circuit, run
from .errors import ArgumentError
from .fourier import controlled_power_from_circuit, qpe
from .linalg import hermitian_expm
from .oracles import MarkedSet, phase_oracle


@dataclass(frozen=True)
class GroverPlan:
    n: int
    n_items: int
    mu: int
    alpha: float
    r: int

    @classmethod
    def for_marked(cls, marked: MarkedSet, r_override: int | None = None) -> "GroverPlan":
        n = marked.n
        n_items = 1 << n
        mu = len(marked)
        if not 1 <= mu < n_items:
            raise ArgumentError("need 1 <= mu < N marked items")
        alpha = math.asin(math.sqrt(mu / n_items))
        r = round(math.pi / (4 * alpha) - 0.5)
        r = max(r, 0)
        if r_override is not None:
            if r_override < 0:
                raise ArgumentError("iteration count must be non-negative")
            r = r_override
        return cls(n, n_items, mu, alpha, r)

    def success_probability(self, rounds: int | None = None) -> float:
        r = self.r if rounds is None else rounds
        return math.sin((2 * r + 1) * self.alpha) ** 2


def zero_reflection(n: int) -> Circuit:
    """2|0...0><0...0| - I as a circuit (X conjugated multi-controlled Z
    plus a global pi phase)."""
    circ = phase_oracle(MarkedSet(n, {0}))
    circ.gphase(math.pi)
    return circ


def diffuser(n: int) -> Circuit:
    """V = H^n (2|0><0| - I) H^n = 2|s><s| - I."""
    if n < 1:
        raise ArgumentError("diffuser needs n >= 1")
    circ = Circuit(n)
    for q in range(n):
        circ.h(q)
    circ.extend(zero_reflection(n))
    for q in range(n):
        circ.h(q)
    return circ


def grover_operator(marked: MarkedSet) -> Circuit:
    """G = V . U_f as a circuit (oracle first)."""
    circ = Circuit(marked.n)
    circ.extend(phase_oracle(marked))
    circ.extend(diffuser(marked.n))
    return circ


def grover_search(
    marked: MarkedSet, r_override: int | None = None
) -> tuple[dict[str, float], GroverPlan]:
    """Run r Grover iterations on the uniform superposition; returns the
    exact outcome distribution and the iteration plan."""
    plan = GroverPlan.for_marked(marked, r_override)
    n = marked.n
    circ = Circuit(n)
    for q in range(n):
        circ.h(q)
    g = grover_operator(marked)
    for _ in range(plan.r):
        circ.extend(g)
    dist = st.probabilities(run(circ))
    return dist, plan


def _fold_outcome(raw: int, c: int) -> int:
    """Map an estimate of 2pi - angle onto the angle branch."""
    return ((1 << c) - raw) % (1 << c) if raw >= (1 << (c - 1)) else raw


def amplitude_estimate(prep: Circuit, good: MarkedSet, c: int) -> dict:
    """Amplitude estimation: QPE on Q = A S0 Adag Sg starting from A|0>.

    Returns the folded angle estimate theta_hat (with sqrt(g) = sin(theta))
    and g_hat = sin^2(theta_hat), plus the raw clock distribution.
    """
    if c < 1:
        raise ArgumentError("clock needs at least one qubit")
    n = good.n
    if prep.n_qubits != n:
        raise ArgumentError("prep circuit width disagrees with the marked set")
    q_circ = Circuit(n)
    q_circ.extend(phase_oracle(good))
    from .circuit import inverse as circ_inverse

    q_circ.extend(circ_inverse(prep))
    q_circ.extend(zero_reflection(n))
    q_circ.extend(prep)
    initial = run(prep)
    est = qpe(controlled_power_from_circuit(q_circ), initial, c)
    raw = int(est.raw_outcome, 2)
    folded = _fold_outcome(raw, c)
    theta = math.pi * folded / (1 << c)
    return {
        "theta_hat": theta,
        "g_hat": math.sin(theta) ** 2,
        "raw_outcome": est.raw_outcome,
        "distribution": est.distribution,
    }


def quantum_count(marked: MarkedSet, c: int) -> tuple[int, dict]:
    """Estimate the marked-set size via phase estimation on the Grover
    operator; mu_hat = round(N sin^2(theta_hat))."""
    if c < 2:
        raise ArgumentError("counting clock needs c >= 2")
    n = marked.n
    prep = Circuit(n)
    for q in range(n):
        prep.h(q)
    if len(marked) == 0:
        return 0, {"theta_hat": 0.0, "g_hat": 0.0, "raw_outcome": "0" * c,
                   "distribution": {"0" * c: 1.0}}
    est = amplitude_estimate(prep, marked, c)
    mu_hat = round((1 << n) * est["g_hat"])
    return mu_hat, est


def derandomized_search(n: int, mu: int, marked: MarkedSet) -> dict[str, float]:
    """Exact Grover search with an appended rotated ancilla.

    The ancilla rotation shrinks the initial good amplitude from
    g0 = mu/N to the nearest g0' <= g0 with an integer iteration count, so
    the final good-subspace probability is exactly 1. Good states are
    ``|w>|1>``; the returned distribution is over all n+1 qubits.
    """
    if marked.n != n or len(marked) != mu:
        raise ArgumentError("marked set disagrees with n and mu")
    if not 1 <= mu < (1 << n):
        raise ArgumentError("need 1 <= mu < N")
    g0 = mu / (1 << n)
    r_real = math.pi / (4 * math.asin(math.sqrt(g0))) - 0.5
    r = max(1, math.ceil(r_real - 1e-12))
    g0p = math.sin(math.pi / (2 * (2 * r + 1))) ** 2
    if g0p > g0 + 1e-12:
        raise ArgumentError("no feasible derandomizing rotation")
    phi = 2.0 * math.asin(math.sqrt(g0p / g0))
    total = n + 1
    good = MarkedSet(total, {(w << 1) | 1 for w in marked.marked})
    prep = Circuit(total)
    for q in range(n):
        prep.h(q)
    prep.ry(n, phi)
    circ = Circuit(total)
    circ.extend(prep)
    from .circuit import inverse as circ_inverse

    for _ in range(r):
        circ.extend(phase_oracle(good))
        circ.extend(circ_inverse(prep))
        circ.extend(zero_reflection(total))
        circ.extend(prep)
    return st.probabilities(run(circ))


def search_hamiltonian_step(n: int, x, dt: float = math.pi) -> Circuit:
    """One composite step exp(-i |psi><psi| dt) . exp(-i |x><x| dt) on
    n data qubits plus one ancilla (index n), built from the two
    oracle-conjugated ancilla phases."""
    x_idx = st.label_to_index(x, n)
    total = n + 1
    circ = Circuit(total)
    x_controls = tuple((q, (x_idx >> (n - 1 - q)) & 1) for q in range(n))
    zero_controls = tuple((q, 0) for q in range(n))
    # exp(-i |x><x| dt): mark, phase the ancilla, unmark
    circ.add("x", (n,), controls=x_controls)
    circ.p(n, -dt)
    circ.add("x", (n,), controls=x_controls)
    # exp(-i |psi><psi| dt) = H^n exp(-i |0><0| dt) H^n
    for q in range(n):
        circ.h(q)
    circ.add("x", (n,), controls=zero_controls)
    circ.p(n, -dt)
    circ.add("x", (n,), controls=zero_controls)
    for q in range(n):
        circ.h(q)
    return circ


def search_by_hamiltonian(n: int, x, steps: int, dt: float = math.pi) -> dict:
    """Search-as-simulation: repeat U(dt) and trace the target probability.

    Returns the per-step success probabilities, the per-step rotation angle
    implied by cos(theta/2) = 1 - (2/N) sin^2(dt/2), and the ancilla
    ground-probability after each step (always 1).
    """
    if steps < 1:
        raise ArgumentError("need at least one step")
    x_idx = st.label_to_index(x, n)
    step = search_hamiltonian_step(n, x_idx, dt)
    circ = Circuit(n + 1)
    for q in range(n):
        circ.h(q)
    amps = run(circ)
    trace = []
    anc_ok = []
    for _ in range(steps):
        amps = run(step, amps)
        probs = st.probabilities(amps)
        p_x = sum(
            p for label, p in probs.items()
            if int(label[:n], 2) == x_idx
        )
        trace.append(float(p_x))
        anc0 = sum(p for label, p in probs.items() if label[n] == "0")
        anc_ok.append(float(anc0))
    big_n = 1 << n
    cos_half_theta = 1.0 - 2.0 / big_n * math.sin(dt / 2.0) ** 2
    return {"trace": trace, "cos_half_theta": cos_half_theta, "ancilla_zero": anc_ok}


def exact_search_evolution(n: int, x, t: float) -> np.ndarray:
    """Dense exp(-i H t) |psi> with H = |x><x| + |psi><psi| (test oracle)."""
    big_n = 1 << n
    x_idx = st.label_to_index(x, n)
    psi = np.full(big_n, 1.0 / math.sqrt(big_n), dtype=complex)
    h = np.outer(psi, psi.conj())
    h[x_idx, x_idx] += 1.0
    return hermitian_expm(h, t) @ psi
