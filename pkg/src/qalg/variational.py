"""QUBO/MaxCut encoding, QAOA, adiabatic evolution, HHL, the Hadamard test
and the variational linear-system cost.

The classical optimizer is a deterministic coordinate search so acceptance
thresholds stay reproducible; its seed only shuffles the coordinate order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import state as st
from .circuit import Circuit, run
from .errors import ArgumentError, NullResultError, ValidationError
from .fourier import iqft_circuit, qft_circuit
from .hamsim import PauliSum, exp_pauli_circuit
from .linalg import dagger, require_hermitian


# -- QUBO / MaxCut ------------------------------------------------------------

@dataclass
class WeightedGraph:
    n_nodes: int
    w: np.ndarray

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=float)
        if self.w.shape != (self.n_nodes, self.n_nodes):
            raise ValidationError("weight matrix shape disagrees with n_nodes")
        if np.max(np.abs(self.w - self.w.T)) > 1e-12:
            raise ValidationError("weight matrix must be symmetric")
        if np.max(np.abs(np.diagonal(self.w))) > 1e-12:
            raise ValidationError("weight matrix diagonal must be zero")

    @classmethod
    def from_edges(cls, n_nodes: int, edges) -> "WeightedGraph":
        w = np.zeros((n_nodes, n_nodes))
        for i, j, weight in edges:
            w[i, j] = w[j, i] = weight
        return cls(n_nodes, w)


def paper_graph() -> WeightedGraph:
    """The worked 5-node example graph (max cut weight 10 with 5 edges)."""
    return WeightedGraph.from_edges(
        5,
        [(0, 1, 2), (0, 3, 1), (0, 4, 1), (1, 2, 2), (2, 3, 2), (3, 4, 3)],
    )


def load_graph(path) -> WeightedGraph:
    """Text format: first line n, then 'i j w' edge lines, '#' comments."""
    edges = []
    n_nodes = None
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n_nodes is None:
                n_nodes = int(line)
                continue
            i, j, w = line.split()
            edges.append((int(i), int(j), float(w)))
    if n_nodes is None:
        raise ArgumentError("graph file is empty")
    return WeightedGraph.from_edges(n_nodes, edges)


@dataclass
class Qubo:
    q: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        if self.q.ndim != 2 or self.q.shape[0] != self.q.shape[1]:
            raise ValidationError("Q must be square")
        if self.c.shape != (self.q.shape[0],):
            raise ValidationError("c length disagrees with Q")

    @property
    def n(self) -> int:
        return self.q.shape[0]

    def cost(self, bits) -> float:
        x = np.asarray(bits, dtype=float)
        return float(x @ self.q @ x + self.c @ x)


def maxcut_qubo(g: WeightedGraph) -> Qubo:
    """Q = -W and c_i = sum_j W_ij, so x^T Q x + c^T x is the cut weight."""
    return Qubo(-g.w, g.w.sum(axis=1))


def qubo_cost_hamiltonian(qubo: Qubo) -> tuple[PauliSum, float]:
    """Diagonal Ising form: <x|H_c|x> + constant = C(x) for every bitstring.

    Substituting x_i = (I - Z_i)/2 gives ZZ couplings Q_ij/4, local fields
    -(c_i + sum_j (Q_ij + Q_ji)/2)/2 and a scalar remainder.
    """
    n = qubo.n
    terms: list[tuple[complex, str]] = []
    constant = 0.0

    def zz(i: int, j: int) -> str:
        letters = ["I"] * n
        letters[i] = "Z"
        letters[j] = "Z"
        return "".join(letters)

    def z(i: int) -> str:
        letters = ["I"] * n
        letters[i] = "Z"
        return "".join(letters)

    for i in range(n):
        for j in range(n):
            qij = qubo.q[i, j]
            if qij == 0.0:
                continue
            # x_i x_j = (I - Z_i - Z_j + Z_i Z_j) / 4, with Z_i^2 = I on i = j
            if i == j:
                constant += qij / 2.0
                terms.append((-qij / 2.0, z(i)))
            else:
                constant += qij / 4.0
                terms.append((-qij / 4.0, z(i)))
                terms.append((-qij / 4.0, z(j)))
                terms.append((qij / 4.0, zz(i, j)))
    for i in range(n):
        ci = qubo.c[i]
        if ci == 0.0:
            continue
        constant += ci / 2.0
        terms.append((-ci / 2.0, z(i)))
    return PauliSum(n, terms), constant


@dataclass(frozen=True)
class QaoaParams:
    betas: tuple[float, ...]
    gammas: tuple[float, ...]

    def __post_init__(self):
        if len(self.betas) != len(self.gammas) or not self.betas:
            raise ArgumentError("need p >= 1 rounds with one beta and gamma each")

    @property
    def p(self) -> int:
        return len(self.betas)


def qaoa_state(h_c: PauliSum, params: QaoaParams) -> np.ndarray:
    """|beta, gamma> = prod_k U_M(beta_k) U_C(gamma_k) H^n |0>."""
    n = h_c.n
    circ = Circuit(n)
    for q in range(n):
        circ.h(q)
    for beta, gamma in zip(params.betas, params.gammas):
        for coeff, letters in h_c.real_terms():
            circ.extend(exp_pauli_circuit(letters, coeff * gamma, n))
        for q in range(n):
            circ.rx(q, 2.0 * beta)
    return run(circ)


def qaoa_expectation(h_c: PauliSum, constant: float, params: QaoaParams) -> float:
    state = qaoa_state(h_c, params)
    value = st.expectation(state, h_c.matrix())
    return float(value.real) + constant


def optimize_derivative_free(objective, init, budget: int, seed: int = 0):
    """Deterministic coordinate descent with a shrinking step.

    Starts at step pi/4, halves after any full sweep without improvement,
    stops below 1e-3 or when the evaluation budget runs out. Minimizes.
    """
    if budget < 1:
        raise ArgumentError("budget must be >= 1")
    x = np.asarray(init, dtype=float).copy()
    rng = np.random.default_rng(seed)
    order = np.arange(x.size)
    rng.shuffle(order)
    best = objective(x)
    evals = 1
    step = math.pi / 4
    while step >= 1e-3 and evals < budget:
        improved = False
        for k in order:
            for delta in (step, -step):
                if evals >= budget:
                    break
                trial = x.copy()
                trial[k] += delta
                val = objective(trial)
                evals += 1
                if val < best - 1e-12:
                    best, x = val, trial
                    improved = True
                    break
        if not improved:
            step /= 2
    return x, best


def qaoa_optimize(
    h_c: PauliSum, constant: float, p: int, budget: int = 2000, seed: int = 0
):
    """Maximize the QAOA expectation over p rounds of (beta, gamma)."""

    def objective(vec):
        params = QaoaParams(tuple(vec[:p]), tuple(vec[p:]))
        return -qaoa_expectation(h_c, constant, params)

    init = np.concatenate([np.full(p, 0.4), np.full(p, 0.6)])
    best_vec, best_neg = optimize_derivative_free(objective, init, budget, seed)
    params = QaoaParams(tuple(best_vec[:p]), tuple(best_vec[p:]))
    return params, -best_neg


# -- Adiabatic evolution -------------------------------------------------------

def default_mixer(n: int) -> PauliSum:
    """H_ini = -sum_i X_i, whose ground state is |+...+>."""
    terms = []
    for i in range(n):
        letters = ["I"] * n
        letters[i] = "X"
        terms.append((-1.0, "".join(letters)))
    return PauliSum(n, terms)


def adiabatic_evolve(
    h_f: PauliSum, total_t: float, p: int, h_i: PauliSum | None = None
) -> np.ndarray:
    """Trotterized interpolation H(t) = (t/T) H_f + (1 - t/T) H_i from the
    mixer ground state; slice j applies exp(-i gamma_j H_i) then
    exp(-i beta_j H_f) with beta_j = (t_j/T) dt, gamma_j = (1 - t_j/T) dt."""
    if p < 1:
        raise ArgumentError("need p >= 1 slices")
    n = h_f.n
    if h_i is None:
        h_i = default_mixer(n)
    if h_i.n != n:
        raise ArgumentError("Hamiltonian widths disagree")
    circ = Circuit(n)
    for q in range(n):
        circ.h(q)
    dt = total_t / p
    for j in range(1, p + 1):
        s = j / p
        beta = s * dt
        gamma = (1.0 - s) * dt
        if abs(gamma) > 1e-15:
            for coeff, letters in h_i.real_terms():
                circ.extend(exp_pauli_circuit(letters, coeff * gamma, n))
            if abs(h_i.constant) > 1e-12:
                circ.gphase(-h_i.constant.real * gamma)
        for coeff, letters in h_f.real_terms():
            circ.extend(exp_pauli_circuit(letters, coeff * beta, n))
        if abs(h_f.constant) > 1e-12:
            circ.gphase(-h_f.constant.real * beta)
    return run(circ)


# -- HHL -----------------------------------------------------------------------

@dataclass
class LinearSystem:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.a = require_hermitian(self.a, what="system matrix")
        self.b = st.validate_state(np.asarray(self.b, dtype=complex))
        if self.a.shape[0] != self.b.size:
            raise ValidationError("matrix and vector sizes disagree")
        vals = np.linalg.eigvalsh(self.a)
        if np.any(vals <= 0) or np.any(vals >= 1):
            raise ValidationError(
                f"eigenvalues must lie in (0, 1); got {np.round(vals, 6)}"
            )

    def solution(self) -> np.ndarray:
        x = np.linalg.solve(self.a, self.b)
        return x / np.linalg.norm(x)


def hhl(sys: LinearSystem, n_clock: int, c_const: float | None = None):
    """Eigenvalue-inversion linear solver.

    QPE with U = exp(2 pi i A) writes lambda onto the clock grid v / 2^c;
    per-value ancilla rotations put C/lambda on the ancilla-|0> branch;
    inverse QPE disentangles; post-selecting ancilla |0> leaves the state
    proportional to A^{-1} b. Returns (solution_state, success_prob).
    """
    if n_clock < 1:
        raise ArgumentError("need at least one clock qubit")
    if c_const is None:
        c_const = 2.0**-n_clock
    if c_const <= 0:
        raise ArgumentError("rotation constant must be positive")
    n_b = sys.b.size.bit_length() - 1
    u = _matrix_phase_unitary(sys.a)
    total = n_clock + n_b + 1
    ancilla = total - 1
    circ = Circuit(total)
    # QPE on clock [0, n_clock), memory [n_clock, n_clock + n_b)
    for q in range(n_clock):
        circ.h(q)
    for j in range(n_clock):
        k = n_clock - 1 - j
        power = u.copy()
        for _ in range(k):
            power = power @ power
        circ.unitary(
            tuple(range(n_clock, n_clock + n_b)), power, controls=((j, 1),)
        )
    circ.extend(
        iqft_circuit(n_clock).remapped({q: q for q in range(n_clock)}, total)
    )
    # eigenvalue-inversion rotations: clock value v encodes lambda = v / 2^c
    grid = 1 << n_clock
    for v in range(grid):
        controls = tuple((q, (v >> (n_clock - 1 - q)) & 1) for q in range(n_clock))
        if v == 0:
            circ.add("ry", (ancilla,), controls=controls, params=(math.pi,))
            continue
        ratio = min(c_const * grid / v, 1.0)
        angle = 2.0 * math.acos(ratio)
        if abs(angle) > 1e-15:
            circ.add("ry", (ancilla,), controls=controls, params=(angle,))
    # inverse QPE
    circ.extend(
        qft_circuit(n_clock).remapped({q: q for q in range(n_clock)}, total)
    )
    for j in reversed(range(n_clock)):
        k = n_clock - 1 - j
        power = u.copy()
        for _ in range(k):
            power = power @ power
        circ.unitary(
            tuple(range(n_clock, n_clock + n_b)), dagger(power), controls=((j, 1),)
        )
    for q in range(n_clock):
        circ.h(q)
    init = st.kron(st.kron(st.zero_state(n_clock), sys.b), st.zero_state(1))
    final = run(circ, init)
    # post-select ancilla |0> and clock |0...0>
    tensor = final.reshape(grid, 1 << n_b, 2)
    branch = tensor[0, :, 0].copy()
    prob = float(np.sum(np.abs(branch) ** 2))
    if prob < 1e-9:
        raise NullResultError("post-selection probability vanished")
    return branch / math.sqrt(prob), prob


def _matrix_phase_unitary(a: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(a)
    return (vecs * np.exp(2j * math.pi * vals)) @ dagger(vecs)


def lambda_inverse_rotations(n_clock: int, c_const: float | None = None) -> Circuit:
    """The figure's crude inversion ladder: ancilla Ry(2 pi / 2^(k+1))
    controlled by the clock bit of integer weight 2^k, scaled so the
    default constant reproduces the printed angles. Clock qubits come
    first, the ancilla is last."""
    if n_clock < 1:
        raise ArgumentError("need at least one clock qubit")
    if c_const is None:
        c_const = 2.0**-n_clock
    scale = c_const * (1 << n_clock)
    circ = Circuit(n_clock + 1)
    for k in range(n_clock):
        control_qubit = n_clock - 1 - k  # holds the 2^k bit of the value
        angle = scale * 2.0 * math.pi / (1 << (k + 1))
        circ.add("ry", (n_clock,), controls=((control_qubit, 1),), params=(angle,))
    return circ


# -- Hadamard test / variational linear solver ---------------------------------

def hadamard_test(u: Circuit, prep: Circuit) -> float:
    """Re<Phi|U|Phi> from the ancilla statistics of one controlled-U.

    With measured probabilities the estimator is p0 - p1 (the textbook
    2[p0 - p1] form counts the unnormalized cross terms).
    """
    n = u.n_qubits
    if prep.n_qubits != n:
        raise ArgumentError("prep and U act on different registers")
    total = n + 1
    circ = Circuit(total)
    circ.extend(prep.remapped({q: q + 1 for q in range(n)}, total))
    circ.h(0)
    circ.extend(u.remapped({q: q + 1 for q in range(n)}, total).controlled(((0, 1),)))
    circ.h(0)
    probs = st.probabilities(run(circ), [0])
    return float(probs["0"] - probs["1"])


def vqls_cost(a, b, candidate) -> float:
    """C = <Phi|Phi> - |<b|Phi>|^2 with |Phi> = A |candidate>; zero exactly
    when A|candidate> is parallel to |b>."""
    a = np.asarray(a, dtype=complex)
    b = st.validate_state(b)
    candidate = st.validate_state(candidate)
    if a.shape != (b.size, b.size) or candidate.size != b.size:
        raise ArgumentError("dimension mismatch in vqls_cost")
    phi = a @ candidate
    return float((np.vdot(phi, phi) - abs(np.vdot(b, phi)) ** 2).real)
