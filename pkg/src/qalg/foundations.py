"""Entanglement and promise-problem algorithms: Bell pairs, basis
measurements, teleportation, Deutsch-Jozsa, Bernstein-Vazirani, Simon with a
GF(2) solver, and measurement-error mitigation through the response matrix.

The simulator is exact, so the promise algorithms read probabilities
directly instead of sampling; sampling variants exist where the contract
calls for them (teleportation branches, Simon's row collection).
"""

from __future__ import annotations

import numpy as np

from . import state as st
from .circuit import Circuit, run
from .errors import (
    ArgumentError,
    ConditioningError,
    DimensionError,
    PromiseViolationError,
    InconclusiveError,
    ValidationError,
)
from .oracles import MarkedSet, TruthTable, bit_oracle, phase_oracle
from .state import index_to_label, label_to_index


# -- Bell pairs -------------------------------------------------------------

def bell_prepare(x: int, y: int) -> np.ndarray:
    """|psi^{xy}> = (|0 y> + (-1)^x |1 y-bar>)/sqrt(2): H then CX on |xy>."""
    if x not in (0, 1) or y not in (0, 1):
        raise ArgumentError("bell indices are single bits")
    circ = Circuit(2).h(0).cx(0, 1)
    return run(circ, (x << 1) | y)


def measure_in_basis(state, basis: str) -> dict[str, float]:
    """Outcome distribution after a basis-change circuit.

    ``computational`` measures directly, ``bell`` (2 qubits) applies CX then
    H, ``hadamard`` applies H on every qubit.
    """
    state = st.validate_state(state)
    n = st.n_qubits_of(state)
    basis = basis.lower()
    if basis == "computational":
        return st.probabilities(state)
    if basis == "bell":
        if n != 2:
            raise ArgumentError("bell-basis measurement needs exactly 2 qubits")
        circ = Circuit(2).cx(0, 1).h(0)
        return st.probabilities(run(circ, state))
    if basis == "hadamard":
        circ = Circuit(n)
        for q in range(n):
            circ.h(q)
        return st.probabilities(run(circ, state))
    raise ArgumentError(f"unknown basis {basis!r}")


# -- Teleportation ----------------------------------------------------------

def teleport(payload, seed: int) -> tuple[np.ndarray, tuple[int, int]]:
    """Teleport a 1-qubit state across a shared |psi^00> pair.

    Returns Bob's corrected qubit and Alice's sampled Bell outcome (i, j).
    The classical channel is modelled by that returned pair; the correction
    applied is X^j then Z^i.
    """
    payload = st.validate_state(payload)
    if payload.size != 2:
        raise ArgumentError("payload must be a single qubit")
    joint = st.kron(payload, bell_prepare(0, 0))
    alice = Circuit(3).cx(0, 1).h(0)
    joint = run(alice, joint)
    probs = st.probabilities(joint, [0, 1])
    rng = np.random.default_rng(seed)
    labels = sorted(probs)
    branch = rng.choice(len(labels), p=np.array([probs[k] for k in labels]))
    i, j = (int(b) for b in labels[branch])
    collapsed, _ = st.project(joint, 0, i)
    collapsed, _ = st.project(collapsed, 1, j)
    correction = Circuit(3)
    if j:
        correction.x(2)
    if i:
        correction.z(2)
    collapsed = run(correction, collapsed)
    tensor = collapsed.reshape(4, 2)
    bob = tensor[(i << 1) | j, :].copy()
    bob /= np.linalg.norm(bob)
    return bob, (i, j)


# -- Deutsch-Jozsa / Bernstein-Vazirani --------------------------------------

def _hadamard_sandwich(oracle: Circuit, n: int) -> np.ndarray:
    if oracle.n_qubits != n:
        raise DimensionError("oracle register width disagrees with n")
    circ = Circuit(n)
    for q in range(n):
        circ.h(q)
    circ.extend(oracle)
    for q in range(n):
        circ.h(q)
    return run(circ)


def deutsch_jozsa(
    oracle: Circuit, n: int, tol: float = 1e-9, shots: int | None = None,
    seed: int = 0,
) -> str:
    """Classify a promised constant-or-balanced phase oracle in one query.

    The all-zeros amplitude has |C0|^2 = 1 for constant f and 0 for
    balanced f; anything in between violates the promise. The simulator is
    exact, so the default verdict reads the probability directly; passing
    ``shots`` switches to a sampled demonstration with threshold 0.5.
    """
    final = _hadamard_sandwich(oracle, n)
    if shots is not None:
        counts = st.sample(final, shots, seed)
        freq = counts.get("0" * n, 0) / shots
        return "constant" if freq > 0.5 else "balanced"
    p0 = float(abs(final[0]) ** 2)
    if p0 >= 1.0 - tol:
        return "constant"
    if p0 <= tol:
        return "balanced"
    raise PromiseViolationError(f"all-zeros probability {p0} is neither 0 nor 1")


def bernstein_vazirani(oracle: Circuit, n: int) -> str:
    """Recover the secret string of f(x) = s.x mod 2 with one query."""
    final = _hadamard_sandwich(oracle, n)
    idx = int(np.argmax(np.abs(final) ** 2))
    if abs(final[idx]) ** 2 < 1.0 - 1e-9:
        raise PromiseViolationError("oracle is not a dot-product oracle")
    return index_to_label(idx, n)


def bv_oracle(s, n: int) -> Circuit:
    """Phase oracle of f(x) = s.x mod 2."""
    s_idx = label_to_index(s, n)
    marked = {x for x in range(1 << n) if bin(x & s_idx).count("1") % 2 == 1}
    return phase_oracle(MarkedSet(n, marked))


# -- GF(2) linear algebra ----------------------------------------------------

def _gf2_rref(masks: list[int]) -> dict[int, int]:
    """Reduced row echelon form; returns {leading bit position: row mask}."""
    pivots: dict[int, int] = {}
    for row in masks:
        cur = row
        for lead in sorted(pivots, reverse=True):
            if (cur >> lead) & 1:
                cur ^= pivots[lead]
        if cur:
            lead = cur.bit_length() - 1
            for other in pivots:
                if (pivots[other] >> lead) & 1:
                    pivots[other] ^= cur
            pivots[lead] = cur
    return pivots


def gf2_rank(rows: list[int], n: int) -> int:
    return len(_gf2_rref(list(rows)))


def gf2_nullspace(rows, n: int) -> list[str]:
    """Basis of {p : row . p = 0 mod 2 for every row}, by GF(2) Gaussian
    elimination. Rows and results use the package's bit-label forms."""
    masks = [label_to_index(r, n) for r in rows]
    pivots = _gf2_rref(masks)
    free_bits = [b for b in range(n) if b not in pivots]
    basis = []
    for free in free_bits:
        vec = 1 << free
        for lead, row in pivots.items():
            if (row >> free) & 1:
                vec |= 1 << lead
        if any(bin(vec & m).count("1") % 2 for m in masks):
            raise ValidationError("GF(2) elimination produced a bad vector")
        basis.append(index_to_label(vec, n))
    return sorted(basis)


def simon_oracle(p, n: int) -> Circuit:
    """Bit oracle of a canonical Simon function with hidden shift p.

    f(x) = min(x, x XOR p): constant on the pairs {x, x XOR p}, distinct
    across pairs (identity when p = 0).
    """
    p_idx = label_to_index(p, n)
    table = TruthTable.from_function(lambda x: min(x, x ^ p_idx), n, n)
    return bit_oracle(table)


def simon(oracle: Circuit, n: int, seed: int, max_runs: int | None = None) -> str:
    """Find the hidden shift of a promised 1-to-1 or 2-to-1 bit oracle.

    Samples x-register outcomes (each satisfying x.p = 0) until their GF(2)
    rank reaches n-1, solves for the nullspace, and disambiguates the
    one-to-one case by evaluating the oracle classically on 0 and the
    candidate shift.
    """
    if oracle.n_qubits != 2 * n:
        raise DimensionError("Simon oracle must act on 2n qubits")
    if max_runs is None:
        max_runs = 4 * n
    circ = Circuit(2 * n)
    for q in range(n):
        circ.h(q)
    circ.extend(oracle)
    for q in range(n):
        circ.h(q)
    final = run(circ)
    probs = st.probabilities(final, list(range(n)))
    labels = sorted(probs)
    weights = np.array([probs[k] for k in labels])
    weights /= weights.sum()
    rng = np.random.default_rng(seed)
    rows: list[int] = []
    for _ in range(max_runs):
        draw = labels[rng.choice(len(labels), p=weights)]
        rows.append(label_to_index(draw, n))
        if gf2_rank(rows, n) >= n - 1:
            break
    rank = gf2_rank(rows, n)
    if rank < n - 1:
        raise InconclusiveError(
            f"rank {rank} after {max_runs} runs; cannot pin down the shift"
        )
    null = gf2_nullspace([index_to_label(r, n) for r in rows], n)
    if not null:
        return "0" * n
    candidate = null[0]
    if _oracle_value(oracle, n, 0) == _oracle_value(oracle, n, label_to_index(candidate, n)):
        return candidate
    return "0" * n


def _oracle_value(oracle: Circuit, n: int, x: int) -> int:
    out = run(oracle, x << n)
    idx = int(np.argmax(np.abs(out)))
    return idx & ((1 << n) - 1)


# -- Measurement-error mitigation --------------------------------------------

def validate_mitigation_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError("mitigation matrix must be square")
    if np.any(m < -1e-12) or np.any(m > 1 + 1e-12):
        raise ValidationError("mitigation matrix entries must lie in [0, 1]")
    if np.max(np.abs(m.sum(axis=0) - 1.0)) > 1e-9:
        raise ValidationError("mitigation matrix columns must sum to 1")
    return m


def mitigation_predict(m, ideal) -> np.ndarray:
    """P_noisy = M @ P_ideal."""
    m = validate_mitigation_matrix(m)
    ideal = np.asarray(ideal, dtype=float)
    if ideal.shape != (m.shape[0],):
        raise DimensionError("probability vector length disagrees with M")
    if abs(ideal.sum() - 1.0) > 1e-9:
        raise ValidationError("ideal probabilities must sum to 1")
    return m @ ideal


def mitigation_correct(m, noisy) -> tuple[np.ndarray, np.ndarray]:
    """P_ideal = M^-1 @ P_noisy, clipped to [0, 1] and renormalized.

    Returns (corrected, raw) where raw is the unclipped solve, kept for
    diagnostics since an empirical vector can leave the simplex.
    """
    m = validate_mitigation_matrix(m)
    noisy = np.asarray(noisy, dtype=float)
    if noisy.shape != (m.shape[0],):
        raise DimensionError("probability vector length disagrees with M")
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > 1e8:
        raise ConditioningError(f"mitigation matrix condition {cond:.3g} too large")
    raw = np.linalg.solve(m, noisy)
    clipped = np.clip(raw, 0.0, 1.0)
    total = clipped.sum()
    if total <= 0:
        raise ConditioningError("corrected distribution vanished after clipping")
    return clipped / total, raw


def load_mitigation_matrix(path) -> np.ndarray:
    """Read a text grid of floats (one matrix row per line, '#' comments)."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append([float(x) for x in line.split()])
    return validate_mitigation_matrix(np.array(rows))
