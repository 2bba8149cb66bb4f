"""Pauli algebra, Pauli-string exponentials, Trotter product formulas,
1-sparse oracle simulation, and linear-combination-of-unitaries application
with oblivious amplitude amplification.

PauliSum coefficients are stored complex so ladder-operator products from
the fermion module compose exactly; Hamiltonian-facing entry points check
that the imaginary parts vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import state as st
from .circuit import Circuit, inverse as circuit_inverse, run
from .errors import (
    ArgumentError,
    NullResultError,
    ValidationError,
)
from .linalg import dagger, require_hermitian

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-qubit products: (left, right) -> (phase, result)
_MUL = {}
for _a in "IXYZ":
    _MUL[("I", _a)] = (1.0, _a)
    _MUL[(_a, "I")] = (1.0, _a)
    _MUL[(_a, _a)] = (1.0, "I")
_MUL[("X", "Y")] = (1j, "Z")
_MUL[("Y", "X")] = (-1j, "Z")
_MUL[("Y", "Z")] = (1j, "X")
_MUL[("Z", "Y")] = (-1j, "X")
_MUL[("Z", "X")] = (1j, "Y")
_MUL[("X", "Z")] = (-1j, "Y")


def pauli_string_matrix(letters: str) -> np.ndarray:
    out = np.array([[1.0]], dtype=complex)
    for ch in letters:
        out = np.kron(out, _PAULI[ch])
    return out


@dataclass
class PauliSum:
    """coefficient * Pauli-string terms over a fixed register width.

    Terms merge on the letter string; coefficients below 1e-12 are dropped.
    An all-identity component is kept separately as ``constant``.
    """

    n: int
    terms: list[tuple[complex, str]] = field(default_factory=list)
    constant: complex = 0.0

    def __post_init__(self):
        merged: dict[str, complex] = {}
        const = complex(self.constant)
        for coeff, letters in self.terms:
            letters = letters.upper()
            if len(letters) != self.n or set(letters) - set("IXYZ"):
                raise ValidationError(f"bad Pauli string {letters!r} for n={self.n}")
            if letters == "I" * self.n:
                const += complex(coeff)
            else:
                merged[letters] = merged.get(letters, 0.0) + complex(coeff)
        self.terms = [
            (c, s) for s, c in sorted(merged.items()) if abs(c) > 1e-12
        ]
        self.constant = const

    def matrix(self) -> np.ndarray:
        if self.n > 12:
            raise ArgumentError("dense PauliSum matrices are limited to 12 qubits")
        out = np.zeros((1 << self.n, 1 << self.n), dtype=complex)
        for coeff, letters in self.terms:
            out += coeff * pauli_string_matrix(letters)
        out += self.constant * np.eye(1 << self.n)
        return out

    def real_terms(self) -> list[tuple[float, str]]:
        for coeff, letters in self.terms:
            if abs(coeff.imag) > 1e-10:
                raise ValidationError(f"term {letters} has complex coefficient {coeff}")
        return [(c.real, s) for c, s in self.terms]

    def scaled(self, factor: complex) -> "PauliSum":
        return PauliSum(
            self.n,
            [(c * factor, s) for c, s in self.terms],
            self.constant * factor,
        )

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n != self.n:
            raise ArgumentError("PauliSum widths disagree")
        return PauliSum(
            self.n, self.terms + other.terms, self.constant + other.constant
        )

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        if other.n != self.n:
            raise ArgumentError("PauliSum widths disagree")
        out: list[tuple[complex, str]] = []
        ident = "I" * self.n
        mine = self.terms + ([(self.constant, ident)] if self.constant else [])
        theirs = other.terms + ([(other.constant, ident)] if other.constant else [])
        for ca, sa in mine:
            for cb, sb in theirs:
                phase = 1.0 + 0.0j
                letters = []
                for la, lb in zip(sa, sb):
                    ph, lc = _MUL[(la, lb)]
                    phase *= ph
                    letters.append(lc)
                out.append((ca * cb * phase, "".join(letters)))
        return PauliSum(self.n, out)

    def dagger(self) -> "PauliSum":
        return PauliSum(
            self.n,
            [(np.conj(c), s) for c, s in self.terms],
            np.conj(self.constant),
        )

    def l1_norm(self) -> float:
        return float(sum(abs(c) for c, _ in self.terms))


def parse_pauli_sum(text: str, n: int | None = None) -> PauliSum:
    """Text format: one ``<coeff> <letters>`` pair per line, '#' comments."""
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ArgumentError(f"line {lineno}: expected '<coeff> <letters>'")
        terms.append((float(parts[0]), parts[1].upper()))
    if not terms and n is None:
        raise ArgumentError("empty PauliSum text and no width given")
    width = n if n is not None else len(terms[0][1])
    return PauliSum(width, terms)


def format_pauli_sum(h: PauliSum) -> str:
    lines = [f"{c} {s}" for c, s in h.real_terms()]
    if abs(h.constant) > 1e-12:
        lines.append(f"{h.constant.real} {'I' * h.n}")
    return "\n".join(lines) + ("\n" if lines else "")


def pauli_decompose(h) -> PauliSum:
    """Expand a hermitian matrix in the Pauli basis: a_j = Tr[H P_j] / d.

    Runs the per-qubit basis transform on the reshaped matrix, so the cost
    is O(n 4^n) rather than one trace per string.
    """
    h = require_hermitian(h, what="pauli_decompose input")
    dim = h.shape[0]
    n = dim.bit_length() - 1
    if dim != 1 << n or n > 8:
        raise ArgumentError("dimension must be a power of two, at most 2^8")
    # tensor with one (row, col) axis pair per qubit, then fuse to 4-levels
    tensor = h.reshape((2,) * (2 * n))
    order = [x for q in range(n) for x in (q, n + q)]
    tensor = np.transpose(tensor, order).reshape((4,) * n)
    # per-axis map (m00, m01, m10, m11) -> (cI, cX, cY, cZ)
    t = 0.5 * np.array(
        [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1j, -1j, 0], [1, 0, 0, -1]], dtype=complex
    )
    for axis in range(n):
        tensor = np.tensordot(t, tensor, axes=([1], [axis]))
        tensor = np.moveaxis(tensor, 0, axis)
    letters = "IXYZ"
    terms = []
    flat = tensor.reshape(-1)
    for idx, coeff in enumerate(flat):
        if abs(coeff) <= 1e-12:
            continue
        digits = []
        rem = idx
        for _ in range(n):
            digits.append(letters[rem % 4])
            rem //= 4
        string = "".join(reversed(digits))
        if abs(coeff.imag) > 1e-9:
            raise ValidationError("hermitian input produced a complex coefficient")
        terms.append((coeff.real, string))
    return PauliSum(n, terms)


def exp_pauli_circuit(letters: str, angle: float, n: int | None = None) -> Circuit:
    """Circuit for exp(-i * angle * P) for a Pauli string P.

    Basis changes map X and Y onto Z (H, and Rz(+-pi/2) conjugated H), a CX
    parity ladder folds the string onto its last active qubit, and a single
    Rz(2*angle) supplies the phase.
    """
    letters = letters.upper()
    width = n if n is not None else len(letters)
    if len(letters) != width or set(letters) - set("IXYZ"):
        raise ArgumentError(f"bad Pauli string {letters!r}")
    active = [q for q, ch in enumerate(letters) if ch != "I"]
    if not active:
        raise ArgumentError(
            "all-identity string: fold exp(-i*angle) into global-phase bookkeeping"
        )
    circ = Circuit(width)
    for q in active:
        if letters[q] == "X":
            circ.h(q)
        elif letters[q] == "Y":
            circ.rz(q, -math.pi / 2)
            circ.h(q)
    last = active[-1]
    for q in active[:-1]:
        circ.cx(q, last)
    circ.rz(last, 2.0 * angle)
    for q in reversed(active[:-1]):
        circ.cx(q, last)
    for q in reversed(active):
        if letters[q] == "X":
            circ.h(q)
        elif letters[q] == "Y":
            circ.h(q)
            circ.rz(q, math.pi / 2)
    return circ


def exp_pauli_sum_slice(h: PauliSum, angle_scale: float) -> Circuit:
    """Product of per-term exponentials at coefficient * angle_scale, in the
    stored term order (never re-sorted; error constants depend on it)."""
    circ = Circuit(h.n)
    for coeff, letters in h.real_terms():
        circ.extend(exp_pauli_circuit(letters, coeff * angle_scale, h.n))
    if abs(h.constant) > 1e-12:
        circ.gphase(-h.constant.real * angle_scale)
    return circ


def trotter1(h: PauliSum, t: float, r: int) -> Circuit:
    """First-order Lie-Trotter: r repetitions of the term product at t/r."""
    if r < 1:
        raise ArgumentError("need r >= 1 slices")
    return _repeat_slices(h, t, r, order=1)


def trotter2(h: PauliSum, t: float, r: int) -> Circuit:
    """Symmetric (Strang) splitting: half-step forward sweep then mirrored
    half-step sweep per slice; per-slice error O((t/r)^3)."""
    if r < 1:
        raise ArgumentError("need r >= 1 slices")
    return _repeat_slices(h, t, r, order=2)


def _repeat_slices(h: PauliSum, t: float, r: int, order: int) -> Circuit:
    circ = Circuit(h.n)
    dt = t / r
    if order == 1:
        one = exp_pauli_sum_slice(h, dt)
    else:
        terms = h.real_terms()
        one = Circuit(h.n)
        for coeff, letters in terms:
            one.extend(exp_pauli_circuit(letters, coeff * dt / 2, h.n))
        for coeff, letters in reversed(terms):
            one.extend(exp_pauli_circuit(letters, coeff * dt / 2, h.n))
        if abs(h.constant) > 1e-12:
            one.gphase(-h.constant.real * dt)
    for _ in range(r):
        circ.extend(one)
    return circ


# -- 1-sparse Hamiltonian simulation -----------------------------------------

@dataclass
class SparseOracle:
    """Row-computable 1-sparse hermitian matrix with real entries.

    ``f`` maps a row to the column of its nonzero entry and must be an
    involution; ``h`` returns the (real) entry value.
    """

    n: int
    f: "callable"
    h: "callable"

    def __post_init__(self):
        dim = 1 << self.n
        for x in range(dim):
            fx = self.f(x)
            if not 0 <= fx < dim or self.f(fx) != x:
                raise ValidationError("f is not an involution on the basis range")
            val = self.h(x, fx)
            if abs(complex(val).imag) > 1e-14:
                raise ValidationError(
                    "only real couplings are supported by the rotation circuit"
                )
            if abs(complex(self.h(fx, x)) - np.conj(complex(val))) > 1e-12:
                raise ValidationError("h is not hermitian across the pair")

    def dense(self) -> np.ndarray:
        dim = 1 << self.n
        out = np.zeros((dim, dim), dtype=complex)
        for x in range(dim):
            fx = self.f(x)
            out[fx, x] = self.h(fx, x)
        return out


def _fixed_point_bits(value: float, bits: int) -> tuple[int, float]:
    """Quantize |value| in [0, 2) to `bits` fixed-point bits (MSB weight 1)."""
    scale = 1 << (bits - 1)
    code = int(round(abs(value) * scale))
    code = min(code, (1 << bits) - 1)
    return code, code / scale


def one_sparse_evolve(
    oracle: SparseOracle, t: float, state, quantized: bool = False, bits: int = 8
) -> np.ndarray:
    """Evolve under exp(-i H t) for a 1-sparse H via the oracle circuit.

    Pipeline per the construction: compute f into an ancilla register,
    compare, controlled-swap so the pair amplitude rides on the flag qubit,
    rotate (X-generator for paired rows, Z-generator for diagonal rows),
    then uncompute. With ``quantized`` the rotation angles pass through a
    ``bits``-bit fixed-point magnitude register first, modelling the value
    oracle; otherwise angles come straight from the callback.
    """
    state = st.validate_state(state)
    n = oracle.n
    if st.n_qubits_of(state) != n:
        raise ArgumentError("state width disagrees with the oracle")
    dim = 1 << n
    # registers: data 0..n-1, f-copy n..2n-1, flag 2n
    total = 2 * n + 1
    circ = Circuit(total)
    flag = 2 * n

    def data_controls(x: int):
        return tuple((q, (x >> (n - 1 - q)) & 1) for q in range(n))

    # O_f: write f(x) into the ancilla register
    for x in range(dim):
        fx = oracle.f(x)
        for j in range(n):
            if (fx >> (n - 1 - j)) & 1:
                circ.add("x", (n + j,), controls=data_controls(x))
    # COMP: flag = data > ancilla
    for x in range(dim):
        for y in range(dim):
            if x > y:
                controls = data_controls(x) + tuple(
                    (n + q, (y >> (n - 1 - q)) & 1) for q in range(n)
                )
                circ.add("x", (flag,), controls=controls)
    # controlled swap of the two registers on the flag
    for q in range(n):
        circ.add("swap", (q, n + q), controls=((flag, 1),))
    # rotation stage
    mid = Circuit(total)
    for x in range(dim):
        fx = oracle.f(x)
        if fx == x:
            val = float(np.real(oracle.h(x, x)))
            if abs(val) < 1e-15:
                continue
            angle, sign = (abs(val), 1.0 if val >= 0 else -1.0)
            if quantized:
                _, angle = _fixed_point_bits(val, bits)
            zrot = np.array(
                [[np.exp(-1j * sign * angle * t), 0], [0, np.exp(1j * sign * angle * t)]],
                dtype=complex,
            )
            mid.unitary((flag,), zrot, controls=data_controls(x))
        elif x < fx:
            val = float(np.real(oracle.h(x, fx)))
            if abs(val) < 1e-15:
                continue
            angle, sign = (abs(val), 1.0 if val >= 0 else -1.0)
            if quantized:
                _, angle = _fixed_point_bits(val, bits)
            c, s = math.cos(angle * t), math.sin(angle * t)
            xrot = np.array([[c, -1j * sign * s], [-1j * sign * s, c]], dtype=complex)
            mid.unitary((flag,), xrot, controls=data_controls(x))
    # assemble: compute, rotate, uncompute
    full = Circuit(total)
    full.extend(circ)
    full.extend(mid)
    full.extend(circuit_inverse(circ))
    padded = st.kron(state, st.zero_state(n + 1))
    out = run(full, padded)
    tensor = out.reshape(dim, 1 << (n + 1))
    result = tensor[:, 0].copy()
    norm = np.linalg.norm(result)
    if abs(norm - 1.0) > 1e-9:
        raise ValidationError(f"ancillas failed to uncompute (norm {norm})")
    return result / norm


def split_one_sparse(h) -> list[SparseOracle]:
    """Split a (at most) 2-sparse real hermitian matrix into 1-sparse
    hermitian oracle pieces that sum back to it.

    Matrix-level only, for small test instances: the diagonal goes into the
    first piece, off-diagonal entries are grouped into matchings.
    """
    h = require_hermitian(h)
    dim = h.shape[0]
    n = dim.bit_length() - 1
    if dim != 1 << n:
        raise ArgumentError("dimension must be a power of two")
    if np.max(np.abs(h.imag)) > 1e-12:
        raise ValidationError("only real entries are supported")
    edges = {
        (r, c)
        for r in range(dim)
        for c in range(r + 1, dim)
        if abs(h[r, c]) > 1e-14
    }
    if any(sum(1 for e in edges if r in e) > 2 for r in range(dim)):
        raise ArgumentError("matrix has more than two off-diagonal couplings per row")
    pieces: list[np.ndarray] = [np.diag(np.real(np.diagonal(h))).astype(complex)]
    remaining = set(edges)
    while remaining:
        used: set[int] = set()
        layer = np.zeros((dim, dim), dtype=complex)
        for r, c in sorted(remaining):
            if r in used or c in used:
                continue
            layer[r, c] = layer[c, r] = h[r, c].real
            used.update((r, c))
            remaining.discard((r, c))
        pieces.append(layer)
    oracles = []
    for piece in pieces:
        if np.max(np.abs(piece)) < 1e-14:
            continue

        def make(mat):
            f_map = {}
            for x in range(dim):
                cols = [c for c in range(dim) if abs(mat[x, c]) > 1e-14]
                f_map[x] = cols[0] if cols else x
            return SparseOracle(
                n, lambda x: f_map[x], lambda x, y: float(mat[x, y].real)
            )

        oracles.append(make(piece))
    if not oracles:
        oracles.append(SparseOracle(n, lambda x: x, lambda x, y: 0.0))
    total = sum(o.dense() for o in oracles)
    if float(np.max(np.abs(total - h))) > 1e-12:
        raise ValidationError("splitter failed to reproduce the input")
    return oracles


# -- Linear combination of unitaries ------------------------------------------

def prepare_matrix(coeffs) -> np.ndarray:
    """Unitary whose first column is sqrt(a_i / l1(a)); the remaining
    columns are any orthonormal completion (Gram-Schmidt), documented
    non-unique."""
    coeffs = np.asarray(coeffs, dtype=float)
    if np.any(coeffs < 0):
        raise ArgumentError("LCU coefficients must be non-negative")
    total = coeffs.sum()
    if total <= 0:
        raise ArgumentError("LCU needs a positive coefficient sum")
    dim = int(coeffs.size)
    first = np.sqrt(coeffs / total)
    basis = [first]
    for k in range(1, dim):
        probe = np.zeros(dim)
        probe[k] = 1.0
        vec = probe.astype(complex)
        for b in basis:
            vec -= np.vdot(b, vec) * b
        norm = np.linalg.norm(vec)
        if norm < 1e-12:
            probe = np.zeros(dim)
            probe[0] = 1.0
            vec = probe.astype(complex)
            for b in basis:
                vec -= np.vdot(b, vec) * b
            norm = np.linalg.norm(vec)
        basis.append(vec / norm)
    return np.column_stack(basis)


def _pad_power_of_two(coeffs, unitaries, n_data: int):
    m = len(coeffs)
    if m != len(unitaries) or m == 0:
        raise ArgumentError("coefficient and unitary lists must match and be nonempty")
    size = 2
    while size < m:
        size *= 2
    coeffs = list(coeffs) + [0.0] * (size - m)
    unitaries = list(unitaries) + [Circuit(n_data) for _ in range(size - m)]
    return coeffs, unitaries, size


def lcu_circuit(coeffs, unitaries: list[Circuit]) -> tuple[Circuit, int]:
    """W = (Odag x I) . select(V) . (O x I); ancilla register first.

    Returns the circuit and the number of ancilla qubits.
    """
    n_data = unitaries[0].n_qubits
    for u in unitaries:
        if u.n_qubits != n_data:
            raise ArgumentError("all LCU unitaries must share a register width")
    coeffs, unitaries, size = _pad_power_of_two(coeffs, unitaries, n_data)
    n_anc = max(size.bit_length() - 1, 1)
    if n_anc > 3:
        raise ArgumentError("LCU selection register is limited to 3 qubits here")
    total = n_anc + n_data
    prep = prepare_matrix(np.asarray(coeffs))
    circ = Circuit(total)
    circ.unitary(tuple(range(n_anc)), prep)
    data_map = {q: n_anc + q for q in range(n_data)}
    for i, u in enumerate(unitaries):
        controls = tuple((q, (i >> (n_anc - 1 - q)) & 1) for q in range(n_anc))
        circ.extend(u.remapped(data_map, total).controlled(controls))
    circ.unitary(tuple(range(n_anc)), dagger(prep))
    return circ, n_anc


def lcu_apply(coeffs, unitaries: list[Circuit], state) -> tuple[np.ndarray, float]:
    """Apply A = sum_i a_i U_i by post-selecting the ancilla on |0...0>.

    Returns the normalized post-selected state and the success probability
    ||A psi||^2 / l1(a)^2 (computed, not sampled).
    """
    state = st.validate_state(state)
    circ, n_anc = lcu_circuit(coeffs, unitaries)
    n_data = circ.n_qubits - n_anc
    if st.n_qubits_of(state) != n_data:
        raise ArgumentError("state width disagrees with the LCU unitaries")
    joint = run(circ, st.kron(st.zero_state(n_anc), state))
    tensor = joint.reshape(1 << n_anc, 1 << n_data)
    branch = tensor[0, :].copy()
    prob = float(np.sum(np.abs(branch) ** 2))
    if prob < 1e-12:
        raise NullResultError("A|psi> vanished; nothing to post-select")
    return branch / math.sqrt(prob), prob


def oblivious_aa(w: Circuit, rounds: int, n_flag_qubits: int = 1) -> Circuit:
    """Amplify the ancilla-|0...0> branch of W without touching its input.

    Reflection phases follow the exact-amplification rule: with success
    amplitude sin(theta) read off W itself, both reflections use phase
    phi = 2 asin(sin(pi / (4*rounds + 2)) / sin(theta)), which reduces to
    the plain (-1) reflections when sin(theta) = sin(pi/(4 rounds + 2)) and
    otherwise derandomizes the round count so the final success is exactly 1
    (requires sin(theta) >= sin(pi/(4 rounds + 2)); smaller amplitudes fall
    back to plain reflections).
    """
    if rounds < 0:
        raise ArgumentError("rounds must be non-negative")
    if rounds == 0:
        out = Circuit(w.n_qubits)
        return out.extend(w)
    n = w.n_qubits
    n_anc = n_flag_qubits
    probe = run(w)  # data register |0...0>; amplitude structure is oblivious
    tensor = probe.reshape(1 << n_anc, 1 << (n - n_anc))
    p = float(np.sum(np.abs(tensor[0, :]) ** 2))
    sin_theta = math.sqrt(max(min(p, 1.0), 0.0))
    target = math.sin(math.pi / (4 * rounds + 2))
    if sin_theta <= 0:
        raise NullResultError("W has no ancilla-|0> amplitude to amplify")
    ratio = target / sin_theta
    phi = 2.0 * math.asin(ratio) if ratio <= 1.0 else math.pi
    refl = Circuit(n)
    zero_marks = tuple((q, 0) for q in range(1, n_anc))
    refl.x(0)
    refl.add("p", (0,), controls=zero_marks, params=(phi,))
    refl.x(0)
    w_dag = circuit_inverse(w)
    out = Circuit(n)
    out.extend(w)
    for _ in range(rounds):
        out.extend(refl)
        out.extend(w_dag)
        out.extend(refl)
        out.extend(w)
    return out


def lcu_taylor_expand(h: PauliSum, t: float, order: int) -> tuple[list[float], list[Circuit]]:
    """Truncated Taylor series of exp(-i H t) as an LCU.

    V_k = (-i)^k H_{j1} ... H_{jk} with coefficient (t^k / k!) a_{j1}...a_{jk};
    the truncation error bound (l1 t)^(order+1)/(order+1)! must stay below
    1e-6.
    """
    if order < 0 or order > 6:
        raise ArgumentError("order must lie in [0, 6]")
    terms = h.real_terms()
    if abs(h.constant) > 1e-12:
        raise ArgumentError("fold constants out before Taylor expansion")
    l1 = sum(abs(c) for c, _ in terms)
    bound = (l1 * abs(t)) ** (order + 1) / math.factorial(order + 1)
    if bound > 1e-6:
        raise ArgumentError(
            f"truncation bound {bound:.3g} exceeds 1e-6; raise order or cut t"
        )
    coeffs: list[float] = []
    unitaries: list[Circuit] = []
    unit = -1j if t >= 0 else 1j

    def string_circuit(seq: tuple[int, ...]) -> Circuit:
        circ = Circuit(h.n)
        kphase = unit ** len(seq)
        prod = PauliSum(h.n, [(1.0, "I" * h.n)], 0.0)
        for idx in seq:
            sign = 1.0 if terms[idx][0] >= 0 else -1.0
            prod = prod @ PauliSum(h.n, [(sign, terms[idx][1])])
        if prod.terms:
            coeff, letters = prod.terms[0]
            for q, ch in enumerate(letters):
                if ch != "I":
                    circ.add(ch.lower(), (q,))
            angle = float(np.angle(kphase * coeff))
        else:
            angle = float(np.angle(kphase * prod.constant))
        if abs(angle) > 1e-15:
            circ.gphase(angle)
        return circ

    from itertools import product as iproduct

    for k in range(order + 1):
        for seq in iproduct(range(len(terms)), repeat=k):
            weight = (abs(t) ** k) / math.factorial(k)
            for idx in seq:
                weight *= abs(terms[idx][0])
            if weight <= 1e-15:
                continue
            coeffs.append(weight)
            unitaries.append(string_circuit(seq))
    return coeffs, unitaries
