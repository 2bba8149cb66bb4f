"""Occupation-number formalism, ladder operators, and the Jordan-Wigner,
parity and Bravyi-Kitaev encodings into Pauli sums.

Mode index 0 maps to qubit 0 (leftmost bit of the occupation vector).
Ladder products are never normal-ordered implicitly; the anticommutation
signs live in the encoded matrices themselves. The Bravyi-Kitaev binary
matrices are kept in natural index order (row i gives encoded bit b_i as a
GF(2) sum of occupations), which is the printed form with both axes
reversed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ValidationError
from .hamsim import PauliSum
from .state import index_to_label, label_to_index

ENCODINGS = ("jordan_wigner", "parity", "bravyi_kitaev")


@dataclass(frozen=True)
class LadderTerm:
    """coefficient x ordered product of raising/lowering operators.

    ``factors`` lists (mode, dagger) pairs exactly as written; the
    rightmost factor acts first.
    """

    coefficient: complex
    factors: tuple[tuple[int, bool], ...]

    def __init__(self, coefficient, factors):
        object.__setattr__(self, "coefficient", complex(coefficient))
        object.__setattr__(
            self, "factors", tuple((int(m), bool(d)) for m, d in factors)
        )

    def dagger(self) -> "LadderTerm":
        return LadderTerm(
            np.conj(self.coefficient),
            tuple((m, not d) for m, d in reversed(self.factors)),
        )


def ladder_apply(term: LadderTerm, bits, amplitude: complex = 1.0):
    """Apply the operator product to an occupation basis vector.

    Returns ``(bits, amplitude)`` or ``None`` when a Pauli-exclusion or
    emptiness factor annihilates the state. The phase per factor is
    (-1)^(number of occupied modes left of the acted mode).
    """
    occ = list(bits)
    n = len(occ)
    amp = complex(amplitude) * term.coefficient
    for mode, dag in reversed(term.factors):
        if not 0 <= mode < n:
            raise ArgumentError(f"mode {mode} out of range for {n} modes")
        if dag:
            if occ[mode] == 1:
                return None
            occ[mode] = 1
        else:
            if occ[mode] == 0:
                return None
            occ[mode] = 0
        if sum(occ[:mode]) % 2 == 1:
            amp = -amp
    return tuple(occ), amp


def ladder_matrix(term: LadderTerm, n: int) -> np.ndarray:
    """Dense matrix of the term in the occupation basis (n <= 12)."""
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = tuple(int(b) for b in index_to_label(col, n))
        res = ladder_apply(term, bits)
        if res is None:
            continue
        new_bits, amp = res
        out[label_to_index(new_bits, n), col] += amp
    return out


# -- binary transform matrices -------------------------------------------------

def pi_matrix(n: int) -> np.ndarray:
    """Parity map p_i = sum_{j <= i} k_j mod 2 (lower-triangular ones)."""
    if n < 1:
        raise ArgumentError("need n >= 1")
    return np.tril(np.ones((n, n), dtype=np.int64))


def beta_matrix(n: int) -> np.ndarray:
    """Bravyi-Kitaev partial-sum map, defined for power-of-two n.

    Built by the block recursion on the printed (reversed-index) form and
    flipped into natural order, so row i gives b_i over columns k_j.
    """
    if n < 1 or n & (n - 1):
        raise ArgumentError(f"beta_matrix needs a power-of-two size, got {n}")
    disp = np.array([[1]], dtype=np.int64)
    while disp.shape[0] < n:
        m = disp.shape[0]
        top = np.zeros((m, m), dtype=np.int64)
        top[0, :] = 1
        disp = np.block([[disp, top], [np.zeros((m, m), dtype=np.int64), disp]])
    return disp[::-1, ::-1].copy()


def gf2_inverse(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % 2
    n = a.shape[0]
    work = np.concatenate([a.copy(), np.eye(n, dtype=np.int64)], axis=1)
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if work[r, col]), None)
        if pivot is None:
            raise ValidationError("matrix is singular over GF(2)")
        work[[row, pivot]] = work[[pivot, row]]
        for r in range(n):
            if r != row and work[r, col]:
                work[r] = (work[r] + work[row]) % 2
        row += 1
    return work[:, n:]


def beta_inv(n: int) -> np.ndarray:
    return gf2_inverse(beta_matrix(n))


def transform_bits(matrix: np.ndarray, bits) -> tuple[int, ...]:
    vec = np.asarray([int(b) for b in bits], dtype=np.int64)
    return tuple(int(x) for x in (matrix @ vec) % 2)


# -- index sets ----------------------------------------------------------------

def parity_set(j: int, n: int) -> tuple[int, ...]:
    """Qubits whose joint parity equals that of the modes strictly below j.

    Computed from the rows of (strict-pi @ beta^-1); the strictly-lower
    triangular parity map is what "modes with index < j" means, and it
    reproduces the printed n = 8 lists.
    """
    strict = np.tril(np.ones((n, n), dtype=np.int64), k=-1)
    mat = (strict @ beta_inv(n)) % 2
    return tuple(sorted((k for k in range(n) if mat[j, k]), reverse=True))


def update_set(j: int, n: int) -> tuple[int, ...]:
    """Qubits (above j) storing partial sums that include mode j."""
    mat = beta_matrix(n)
    return tuple(sorted((i for i in range(n) if i > j and mat[i, j]), reverse=True))


def flip_set(j: int, n: int) -> tuple[int, ...]:
    """Qubits that decide whether qubit j carries inverted parity."""
    mat = beta_inv(n)
    return tuple(sorted((k for k in range(n) if k < j and mat[j, k]), reverse=True))


def remainder_set(j: int, n: int) -> tuple[int, ...]:
    return tuple(sorted(set(parity_set(j, n)) - set(flip_set(j, n)), reverse=True))


def rho_set(j: int, n: int) -> tuple[int, ...]:
    return parity_set(j, n) if j % 2 == 0 else remainder_set(j, n)


# -- encodings -----------------------------------------------------------------

def _single(n: int, q: int, letter: str) -> str:
    letters = ["I"] * n
    letters[q] = letter
    return "".join(letters)


def _lowering(n: int, j: int) -> PauliSum:
    """A^- = (X + iY)/2 on qubit j."""
    return PauliSum(n, [(0.5, _single(n, j, "X")), (0.5j, _single(n, j, "Y"))])


def _raising(n: int, j: int) -> PauliSum:
    """A^+ = (X - iY)/2 on qubit j."""
    return PauliSum(n, [(0.5, _single(n, j, "X")), (-0.5j, _single(n, j, "Y"))])


def _pauli_on(n: int, qubits, letter: str) -> PauliSum:
    letters = ["I"] * n
    for q in qubits:
        letters[q] = letter
    return PauliSum(n, [(1.0, "".join(letters))])


def _projector(n: int, qubits, even: bool) -> PauliSum:
    """E_S = (I + Z_S)/2 on the joint parity, O_S = (I - Z_S)/2."""
    z_s = _pauli_on(n, qubits, "Z")
    ident = PauliSum(n, [], 1.0)
    sign = 1.0 if even else -1.0
    return (ident + z_s.scaled(sign)).scaled(0.5)


def _encode_single(j: int, n: int, dag: bool, kind: str) -> PauliSum:
    if kind == "jordan_wigner":
        core = _raising(n, j) if dag else _lowering(n, j)
        return _pauli_on(n, range(j), "Z") @ core
    if kind == "parity":
        if j == 0:
            core = _raising(n, 0) if dag else _lowering(n, 0)
        else:
            plus = _raising(n, j) @ _projector(n, [j - 1], even=True)
            minus = _lowering(n, j) @ _projector(n, [j - 1], even=True)
            swap_plus = _lowering(n, j) @ _projector(n, [j - 1], even=False)
            swap_minus = _raising(n, j) @ _projector(n, [j - 1], even=False)
            core = (
                plus + swap_plus.scaled(-1.0)
                if dag
                else minus + swap_minus.scaled(-1.0)
            )
        update = _pauli_on(n, range(j + 1, n), "X")
        return update @ core
    if kind == "bravyi_kitaev":
        if n & (n - 1):
            raise ArgumentError("bravyi_kitaev needs power-of-two mode count")
        flips = flip_set(j, n)
        if j % 2 == 0 or not flips:
            core = _raising(n, j) if dag else _lowering(n, j)
            core = core @ _pauli_on(n, rho_set(j, n), "Z")
        else:
            even_proj = _projector(n, flips, even=True)
            odd_proj = _projector(n, flips, even=False)
            a_plus = _raising(n, j)
            a_minus = _lowering(n, j)
            pi_op = (
                a_plus @ even_proj + (a_minus @ odd_proj).scaled(-1.0)
                if dag
                else a_minus @ even_proj + (a_plus @ odd_proj).scaled(-1.0)
            )
            core = pi_op @ _pauli_on(n, rho_set(j, n), "Z")
        return _pauli_on(n, update_set(j, n), "X") @ core
    raise ArgumentError(f"unknown encoding {kind!r}")


def encode_ladder(term: LadderTerm, n: int, kind: str) -> PauliSum:
    """Pauli representation of a ladder product under the chosen encoding."""
    if kind not in ENCODINGS:
        raise ArgumentError(f"encoding must be one of {ENCODINGS}")
    out = PauliSum(n, [], term.coefficient)
    for mode, dag in term.factors:
        if not 0 <= mode < n:
            raise ArgumentError(f"mode {mode} out of range")
        out = out @ _encode_single(mode, n, dag, kind)
    return out


def basis_map(kind: str, n: int) -> np.ndarray:
    """GF(2) matrix sending occupation bits to encoded qubit bits."""
    if kind == "jordan_wigner":
        return np.eye(n, dtype=np.int64)
    if kind == "parity":
        return pi_matrix(n)
    if kind == "bravyi_kitaev":
        return beta_matrix(n)
    raise ArgumentError(f"unknown encoding {kind!r}")


def basis_permutation(kind: str, n: int) -> np.ndarray:
    """The basis map lifted to a permutation on the 2^n basis states."""
    mat = basis_map(kind, n)
    dim = 1 << n
    perm = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = tuple(int(b) for b in index_to_label(col, n))
        perm[label_to_index(transform_bits(mat, bits), n), col] = 1.0
    return perm


@dataclass
class FermionHamiltonian:
    """One- and two-body integrals h_pq, h_pqrs over n_modes orbitals."""

    n_modes: int
    h1: np.ndarray
    h2: np.ndarray | None = None

    def __post_init__(self):
        n = self.n_modes
        self.h1 = np.asarray(self.h1, dtype=complex)
        if self.h1.shape != (n, n):
            raise ValidationError("h1 must be n x n")
        if np.max(np.abs(self.h1 - self.h1.conj().T)) > 1e-10:
            raise ValidationError("h1 must be hermitian")
        if self.h2 is None:
            self.h2 = np.zeros((n, n, n, n), dtype=complex)
        self.h2 = np.asarray(self.h2, dtype=complex)
        if self.h2.shape != (n, n, n, n):
            raise ValidationError("h2 must be n^4")

    def terms(self) -> list[LadderTerm]:
        out = []
        n = self.n_modes
        for p in range(n):
            for q in range(n):
                if abs(self.h1[p, q]) > 1e-14:
                    out.append(
                        LadderTerm(self.h1[p, q], ((p, True), (q, False)))
                    )
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    for s in range(n):
                        if abs(self.h2[p, q, r, s]) > 1e-14:
                            out.append(
                                LadderTerm(
                                    0.5 * self.h2[p, q, r, s],
                                    ((p, True), (q, True), (r, False), (s, False)),
                                )
                            )
        return out

    def dense(self) -> np.ndarray:
        dim = 1 << self.n_modes
        out = np.zeros((dim, dim), dtype=complex)
        for term in self.terms():
            out += ladder_matrix(term, self.n_modes)
        return out


def encode_hamiltonian(h: FermionHamiltonian, kind: str) -> PauliSum:
    """Sum of encoded ladder terms, merged; the result must be hermitian
    with real coefficients.

    Bravyi-Kitaev with a non-power-of-two mode count pads with frozen empty
    modes; the padded qubits only ever receive update-set X letters, which
    pair-cancel in the number-conserving products, so they come out as
    identities and are dropped from the result.
    """
    n = h.n_modes
    n_enc = n
    if kind == "bravyi_kitaev" and n & (n - 1):
        n_enc = 1 << n.bit_length()
    total = PauliSum(n_enc, [], 0.0)
    for term in h.terms():
        padded = LadderTerm(term.coefficient, term.factors)
        total = total + encode_ladder(padded, n_enc, kind)
    for coeff, letters in total.terms:
        if abs(coeff.imag) > 1e-10:
            raise ValidationError(
                f"non-hermitian input: term {letters} has coefficient {coeff}"
            )
        if any(ch != "I" for ch in letters[n:]):
            raise ValidationError(
                f"padded qubit acted on in term {letters}; cannot truncate"
            )
    return PauliSum(
        n,
        [(c.real, s[:n]) for c, s in total.terms],
        total.constant.real,
    )


def anticommutator_check(n: int, kind: str, tol: float = 1e-12) -> dict:
    """Verify {Q_i, Q_j} = 0, {Qd_i, Qd_j} = 0, {Q_i, Qd_j} = delta_ij I."""
    if n > 5:
        raise ArgumentError("dense anticommutator checks are limited to n <= 5")
    dim = 1 << n
    lowers = [
        encode_ladder(LadderTerm(1.0, ((j, False),)), n, kind).matrix()
        for j in range(n)
    ]
    raises = [
        encode_ladder(LadderTerm(1.0, ((j, True),)), n, kind).matrix()
        for j in range(n)
    ]
    worst = 0.0
    checks = 0
    for i in range(n):
        for j in range(n):
            acc = lowers[i] @ lowers[j] + lowers[j] @ lowers[i]
            worst = max(worst, float(np.max(np.abs(acc))))
            acc = raises[i] @ raises[j] + raises[j] @ raises[i]
            worst = max(worst, float(np.max(np.abs(acc))))
            acc = lowers[i] @ raises[j] + raises[j] @ lowers[i]
            target = np.eye(dim) if i == j else np.zeros((dim, dim))
            worst = max(worst, float(np.max(np.abs(acc - target))))
            checks += 3
    return {"n": n, "encoding": kind, "checks": checks, "max_deviation": worst,
            "passed": worst <= tol}


def load_fermion_hamiltonian(path) -> FermionHamiltonian:
    """File format: first a line ``n``, then ``[h1]`` with ``p q re im``
    lines and ``[h2]`` with ``p q r s re im`` lines; '#' comments."""
    n = None
    section = None
    h1 = h2 = None
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                n = int(line)
                h1 = np.zeros((n, n), dtype=complex)
                h2 = np.zeros((n, n, n, n), dtype=complex)
                continue
            if line.lower() == "[h1]":
                section = "h1"
                continue
            if line.lower() == "[h2]":
                section = "h2"
                continue
            parts = line.split()
            if section == "h1":
                p, q = int(parts[0]), int(parts[1])
                h1[p, q] = float(parts[2]) + 1j * float(parts[3])
            elif section == "h2":
                p, q, r, s = (int(x) for x in parts[:4])
                h2[p, q, r, s] = float(parts[4]) + 1j * float(parts[5])
            else:
                raise ArgumentError("integral line outside [h1]/[h2] sections")
    if n is None:
        raise ArgumentError("empty fermion Hamiltonian file")
    return FermionHamiltonian(n, h1, h2)
