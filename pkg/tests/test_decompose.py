import math

import numpy as np
import pytest

from qalg import circuit as qc
from qalg import decompose as dc
from qalg.errors import ArgumentError, ValidationError
from qalg.linalg import random_unitary


def controlled(u, dim_before=2):
    out = np.eye(2 * u.shape[0], dtype=complex)
    out[u.shape[0]:, u.shape[0]:] = u
    return out


def test_zy_identity_and_hadamard():
    d = dc.zy_decompose(np.eye(2))
    assert (d.alpha, d.beta, d.gamma, d.delta) == pytest.approx((0, 0, 0, 0))
    d = dc.zy_decompose(qc.gate_matrix("h"))
    assert (d.alpha, d.beta, d.gamma, d.delta) == pytest.approx(
        (math.pi / 2, 0.0, math.pi / 2, math.pi)
    )


def test_zy_random_reconstruction_and_ranges():
    rng = np.random.default_rng(11)
    for _ in range(100):
        u = random_unitary(2, rng)
        d = dc.zy_decompose(u)
        assert np.max(np.abs(d.reconstruct() - u)) < 1e-9
        assert 0 <= d.gamma <= math.pi + 1e-12
        assert -math.pi < d.alpha <= math.pi + 1e-12
        assert -2 * math.pi < d.beta <= 2 * math.pi
        assert -2 * math.pi < d.delta <= 2 * math.pi


def test_zy_rejects_non_unitary():
    with pytest.raises(ValidationError):
        dc.zy_decompose(np.array([[1, 1], [0, 1]]))


def test_axbxc_products_and_circuit():
    rng = np.random.default_rng(12)
    for u in [qc.gate_matrix("x"), qc.gate_matrix("z")] + [
        random_unitary(2, rng) for _ in range(20)
    ]:
        alpha, a, b, c = dc.axbxc_decompose(u)
        assert np.max(np.abs(a @ b @ c - np.eye(2))) < 1e-10
        x = qc.gate_matrix("x")
        rebuilt = np.exp(1j * alpha) * a @ x @ b @ x @ c
        assert np.max(np.abs(rebuilt - u)) < 1e-9
        circ = dc.axbxc_compile(u)
        assert np.max(np.abs(qc.circuit_unitary(circ) - controlled(u))) < 1e-9
    kinds = {ins.kind for ins in dc.axbxc_compile(qc.gate_matrix("h")).instructions}
    assert kinds <= {"unitary", "x", "p"}


def test_sqrt_gate():
    x = qc.gate_matrix("x")
    v = dc.sqrt_gate(x)
    assert np.max(np.abs(v - (1 + 1j) / 2 * (np.eye(2) - 1j * x))) < 1e-12
    assert np.max(np.abs(v @ v - x)) < 1e-12
    assert np.max(np.abs(dc.sqrt_gate(np.eye(2)) - np.eye(2))) < 1e-12
    assert np.max(np.abs(dc.sqrt_gate(qc.gate_matrix("z")) - qc.gate_matrix("s"))) < 1e-12
    rng = np.random.default_rng(13)
    for _ in range(20):
        u = random_unitary(2, rng)
        v = dc.sqrt_gate(u)
        assert np.max(np.abs(v @ v - u)) < 1e-10


def test_ccu_patterns():
    for name in ("x", "i", "z", "h", "t"):
        u = qc.gate_matrix(name)
        direct = np.eye(8, dtype=complex)
        direct[6:, 6:] = u
        got = qc.circuit_unitary(dc.ccu_compile(u))
        assert np.max(np.abs(got - direct)) < 1e-9, name


def test_ccu_toffoli_truth_table():
    circ = dc.ccu_compile(qc.gate_matrix("x"))
    for basis in range(8):
        out = qc.run(circ, basis)
        idx = int(np.argmax(np.abs(out)))
        c1, c2, t = (basis >> 2) & 1, (basis >> 1) & 1, basis & 1
        expected = (c1 << 2) | (c2 << 1) | (t ^ (c1 & c2))
        assert idx == expected and abs(out[idx]) > 1 - 1e-9


def test_multi_controlled_layout_and_action():
    circ = dc.multi_controlled_compile(qc.gate_matrix("x"), 4)
    assert circ.n_qubits == 8  # 4 controls + target + 3 ancillas at the top
    for basis in range(32):
        label = format(basis, "05b") + "000"
        out = qc.run(circ, label)
        idx = int(np.argmax(np.abs(out)))
        got = format(idx, "08b")
        flip = label[:4] == "1111"
        assert got[:4] == label[:4]
        assert got[4] == str(int(label[4]) ^ flip)
        assert got[5:] == "000"  # ancillas restored
        assert abs(out[idx]) > 1 - 1e-9


def test_multi_controlled_degenerate_and_ancilla_roundtrip():
    single = dc.multi_controlled_compile(qc.gate_matrix("h"), 1)
    direct = np.eye(4, dtype=complex)
    direct[2:, 2:] = qc.gate_matrix("h")
    assert np.max(np.abs(qc.circuit_unitary(single) - direct)) < 1e-10
    # superposition input: ancillas still end in |0> exactly
    circ = dc.multi_controlled_compile(qc.gate_matrix("t"), 3)
    prep = qc.Circuit(circ.n_qubits)
    for q in range(4):
        prep.h(q)
    state = qc.run(prep.extend(circ))
    from qalg.state import probabilities

    anc = probabilities(state, [4, 5])
    assert anc["00"] == pytest.approx(1.0, abs=1e-12)


def test_two_level_factors():
    rng = np.random.default_rng(14)
    for d in (2, 4, 8, 16):
        u = random_unitary(d, rng)
        factors = dc.two_level_decompose(u)
        assert len(factors) <= d * (d - 1) // 2
        prod = np.eye(d, dtype=complex)
        for f in factors:
            assert len(dc.two_level_indices(f)) <= 2
            prod = prod @ f
        assert np.max(np.abs(prod - u)) < 1e-9


def test_two_level_first_factor_matches_elimination_formula():
    rng = np.random.default_rng(15)
    u = random_unitary(4, rng)
    a, b = u[0, 0], u[1, 0]
    m = math.hypot(abs(a), abs(b))
    factors = dc.two_level_decompose(u)
    t1 = factors[0].conj().T  # the eliminating matrix itself
    assert t1[0, 0] == pytest.approx(np.conj(a) / m)
    assert t1[0, 1] == pytest.approx(np.conj(b) / m)
    assert t1[1, 0] == pytest.approx(b / m)
    assert t1[1, 1] == pytest.approx(-a / m)


def test_two_level_diagonal_gives_single_index_phases():
    diag = np.diag(np.exp(1j * np.array([0.3, -1.1, 0.0, 2.2])))
    factors = dc.two_level_decompose(diag)
    prod = np.eye(4, dtype=complex)
    for f in factors:
        prod = prod @ f
        assert len(dc.two_level_indices(f)) <= 2
    assert np.max(np.abs(prod - diag)) < 1e-12


def test_gray_path_flips_low_index_first():
    assert dc.gray_path(0b111, 0b000, 3) == [0b111, 0b011, 0b001, 0b000]
    assert dc.gray_path(0b101, 0b110, 3) == [0b101, 0b111, 0b110]


def test_gray_code_synthesis_cases():
    rng = np.random.default_rng(16)
    blk = random_unitary(2, rng)
    # the corners case |000> <-> |111>
    u = np.eye(8, dtype=complex)
    u[0, 0], u[0, 7], u[7, 0], u[7, 7] = blk.ravel()
    circ = dc.gray_code_synthesize(u, 0, 7, 3)
    assert np.max(np.abs(qc.circuit_unitary(circ) - u)) < 1e-9
    # intermediate basis states untouched
    for basis in range(1, 7):
        out = qc.run(circ, basis)
        assert abs(out[basis] - 1) < 1e-9
    # adjacent labels: one multi-controlled gate, no X stages
    u2 = np.eye(8, dtype=complex)
    u2[2, 2], u2[2, 3], u2[3, 2], u2[3, 3] = blk.ravel()
    circ2 = dc.gray_code_synthesize(u2, 2, 3, 3)
    assert len(circ2.instructions) == 1
    assert np.max(np.abs(qc.circuit_unitary(circ2) - u2)) < 1e-9
    with pytest.raises(ArgumentError):
        dc.gray_code_synthesize(np.eye(8), 3, 3, 3)
