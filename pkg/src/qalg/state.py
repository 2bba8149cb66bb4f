"""Dense state-vector storage, gate application, measurement and sampling.

A state over ``n`` qubits is a complex128 numpy vector of length ``2**n``
with unit norm. Qubit 0 is the **most significant bit** of the basis index,
so the ket ``|q0 q1 ... q_{n-1}>`` labels amplitude
``sum(q_k * 2**(n-1-k))``. That matches left-to-right ket notation: for two
qubits the basis order is ``|00>, |01>, |10>, |11>``.

Gate application never materializes a full ``2**n x 2**n`` operator; it
strides over the amplitude array in place via the selected kernel backend
(:mod:`qalg.backend`). Public functions are pure: they return fresh arrays
and leave their inputs untouched.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .backend import check_capacity, get_backend
from .errors import (
    ArgumentError,
    CapacityError,
    DimensionError,
    ImpossibleOutcomeError,
    ValidationError,
)
from .linalg import as_complex, require_unitary

NORM_TOL = 1e-10


def n_qubits_of(state: np.ndarray) -> int:
    size = state.shape[0]
    n = size.bit_length() - 1
    if size != (1 << n):
        raise DimensionError(f"state length {size} is not a power of two")
    return n


def label_to_index(label, n: int) -> int:
    """Basis label (int, '0101' string, or bit sequence) -> amplitude index."""
    if isinstance(label, str):
        if len(label) != n or set(label) - {"0", "1"}:
            raise ArgumentError(f"label {label!r} is not an {n}-bit string")
        return int(label, 2)
    if isinstance(label, (int, np.integer)):
        if not 0 <= label < (1 << n):
            raise ArgumentError(f"label {label} out of range for {n} qubits")
        return int(label)
    bits = list(label)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ArgumentError(f"label {label!r} is not an {n}-bit vector")
    return int("".join(str(b) for b in bits), 2)


def index_to_label(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def zero_state(n: int) -> np.ndarray:
    check_capacity(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def basis_state(label, n: int) -> np.ndarray:
    amps = zero_state(n)
    idx = label_to_index(label, n)
    amps[0] = 0.0
    amps[idx] = 1.0
    return amps


def validate_state(state) -> np.ndarray:
    state = as_complex(state)
    if state.ndim != 1:
        raise DimensionError("states are one-dimensional arrays")
    n_qubits_of(state)
    norm2 = float(np.sum(np.abs(state) ** 2))
    if abs(norm2 - 1.0) > NORM_TOL:
        raise ValidationError(f"state norm^2 = {norm2} deviates from 1 beyond {NORM_TOL}")
    return state


def kron(a, b) -> np.ndarray:
    """Tensor product of two states or two operators.

    The result's dimension is the product of the operand dimensions; for
    states this concatenates registers (left operand becomes the high bits).
    """
    a = as_complex(a)
    b = as_complex(b)
    if a.size == 0 or b.size == 0:
        raise ArgumentError("kron operands must be nonempty")
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise DimensionError("kron expects two vectors or two matrices")
    if a.shape[0] * b.shape[0] > (1 << 24):
        raise CapacityError(f"kron result dimension {a.shape[0] * b.shape[0]} exceeds 2^24")
    return np.kron(a, b)


def _gate_layout(n: int, targets: Sequence[int], controls: Iterable[tuple[int, int]]):
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ArgumentError(f"duplicate target qubits in {targets}")
    for q in targets:
        if not 0 <= q < n:
            raise ArgumentError(f"target qubit {q} out of range for {n} qubits")
    tmask = 0
    for q in targets:
        tmask |= 1 << (n - 1 - q)
    cmask = 0
    cval = 0
    for q, want in controls:
        if not 0 <= q < n:
            raise ArgumentError(f"control qubit {q} out of range for {n} qubits")
        if q in targets:
            raise ArgumentError(f"qubit {q} cannot be both control and target")
        if want not in (0, 1):
            raise ArgumentError(f"control polarity must be 0 or 1, got {want}")
        bit = 1 << (n - 1 - q)
        if cmask & bit:
            raise ArgumentError(f"duplicate control qubit {q}")
        cmask |= bit
        if want:
            cval |= bit
    k = len(targets)
    offs = np.zeros(1 << k, dtype=np.int64)
    for j in range(1 << k):
        off = 0
        for l, q in enumerate(targets):
            if (j >> (k - 1 - l)) & 1:
                off |= 1 << (n - 1 - q)
        offs[j] = off
    return offs, tmask, cmask, cval


def apply_gate_inplace(amps, u, targets, controls=(), *, checked=False) -> None:
    """Apply ``u`` on ``targets`` (conditioned on ``controls``) in place.

    ``controls`` is a sequence of ``(qubit, polarity)`` pairs; amplitudes are
    only updated on basis states whose control bits all match. ``u`` must be
    a ``2**len(targets)`` square unitary unless ``checked`` is set by a
    caller that already validated it.
    """
    n = n_qubits_of(amps)
    if len(targets) == 0:
        raise ArgumentError("gate needs at least one target (use a gphase instruction)")
    if not checked:
        u = require_unitary(u, what="gate")
    else:
        u = np.ascontiguousarray(u, dtype=np.complex128)
    if u.shape != (1 << len(targets), 1 << len(targets)):
        raise DimensionError(
            f"gate of dim {u.shape[0]} does not act on {len(targets)} qubits"
        )
    offs, tmask, cmask, cval = _gate_layout(n, targets, controls)
    kern = get_backend()
    diag = np.count_nonzero(u - np.diag(np.diagonal(u))) == 0
    if diag:
        kern.apply_diag(amps, np.ascontiguousarray(np.diagonal(u)), offs, tmask, cmask, cval)
    else:
        kern.apply_dense(amps, np.ascontiguousarray(u), offs, tmask, cmask, cval)


def apply_phase_inplace(amps, phase: complex, controls=()) -> None:
    """Multiply the (control-selected) amplitudes by a unit-modulus phase."""
    n = n_qubits_of(amps)
    offs, tmask, cmask, cval = _gate_layout(n, [], controls)
    offs = np.zeros(1, dtype=np.int64)
    get_backend().apply_diag(
        amps, np.asarray([phase], dtype=np.complex128), offs, tmask, cmask, cval
    )


def apply_gate(state, u, targets, controls=()) -> np.ndarray:
    """Pure version of :func:`apply_gate_inplace`; returns the new state."""
    out = validate_state(state).copy()
    apply_gate_inplace(out, u, targets, controls)
    return out


def inner(a, b) -> complex:
    """<a|b> with conjugation on the left argument."""
    a = as_complex(a)
    b = as_complex(b)
    if a.shape != b.shape:
        raise DimensionError(f"states of length {a.size} vs {b.size}")
    return complex(np.vdot(a, b))


def probabilities(state, subset=None) -> dict[str, float]:
    """Marginal outcome distribution over ``subset`` (default: all qubits).

    Keys are bitstrings ordered as the qubits appear in ``subset``.
    """
    state = validate_state(state)
    n = n_qubits_of(state)
    if subset is None:
        subset = list(range(n))
    subset = list(subset)
    if not subset:
        raise ArgumentError("subset must name at least one qubit")
    if len(set(subset)) != len(subset) or any(not 0 <= q < n for q in subset):
        raise ArgumentError(f"subset {subset} invalid for {n} qubits")
    probs = np.abs(state) ** 2
    tensor = probs.reshape((2,) * n)
    keep = subset
    drop = tuple(ax for ax in range(n) if ax not in keep)
    marg = tensor.sum(axis=drop) if drop else tensor
    # axes of marg follow increasing qubit order; reorder to the caller's.
    sorted_keep = sorted(keep)
    perm = [sorted_keep.index(q) for q in keep]
    marg = np.transpose(marg, axes=perm)
    flat = marg.reshape(-1)
    k = len(keep)
    return {index_to_label(i, k): float(p) for i, p in enumerate(flat)}


def sample(state, shots: int, seed: int) -> dict[str, int]:
    """Multinomial draw of ``shots`` outcomes; fixed (seed, shots, state) is
    reproduced bit-for-bit (numpy PCG64 generator)."""
    if shots < 1:
        raise ArgumentError("shots must be >= 1")
    state = validate_state(state)
    n = n_qubits_of(state)
    probs = np.abs(state) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {
        index_to_label(i, n): int(c) for i, c in enumerate(counts) if c > 0
    }


def project(state, qubit: int, outcome: int) -> tuple[np.ndarray, float]:
    """Collapse one qubit; returns the renormalized state and the branch
    probability. Zero-probability branches raise."""
    state = validate_state(state)
    n = n_qubits_of(state)
    if not 0 <= qubit < n:
        raise ArgumentError(f"qubit {qubit} out of range")
    if outcome not in (0, 1):
        raise ArgumentError("outcome must be 0 or 1")
    bit = 1 << (n - 1 - qubit)
    idx = np.arange(state.size)
    mask = ((idx & bit) != 0) == bool(outcome)
    prob = float(np.sum(np.abs(state[mask]) ** 2))
    if prob <= 1e-12:
        raise ImpossibleOutcomeError(
            f"outcome {outcome} on qubit {qubit} has probability {prob}"
        )
    out = np.where(mask, state, 0.0) / np.sqrt(prob)
    return out, prob


def expectation(state, m) -> complex:
    """<psi|M|psi> for a dense operator of matching dimension."""
    state = validate_state(state)
    m = as_complex(m)
    if m.shape != (state.size, state.size):
        raise DimensionError(f"operator shape {m.shape} vs state length {state.size}")
    return complex(np.vdot(state, m @ state))


def equal_up_to_global_phase(a, b, tol: float = NORM_TOL) -> bool:
    """True iff |<a|b>| >= 1 - tol (global phase carries no information)."""
    a = validate_state(a)
    b = validate_state(b)
    return abs(inner(a, b)) >= 1.0 - tol


def fidelity(a, b) -> float:
    return abs(inner(validate_state(a), validate_state(b))) ** 2
