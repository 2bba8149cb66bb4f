import math

import numpy as np
import pytest

from qalg import circuit as qc
from qalg import foundations as fd
from qalg import state as st
from qalg.errors import ArgumentError, ConditioningError, PromiseViolationError
from qalg.linalg import random_state
from qalg.oracles import MarkedSet, phase_oracle

SQ2 = 1 / math.sqrt(2)

PAPER_M = np.array(
    [
        [0.90, 0.01, 0.02, 0.01],
        [0.05, 0.98, 0.04, 0.03],
        [0.04, 0.002, 0.91, 0.04],
        [0.01, 0.008, 0.03, 0.92],
    ]
)


def test_bell_states():
    assert np.allclose(fd.bell_prepare(0, 0), [SQ2, 0, 0, SQ2])
    assert np.allclose(fd.bell_prepare(1, 1), [0, SQ2, -SQ2, 0])
    assert np.allclose(fd.bell_prepare(0, 1), [0, SQ2, SQ2, 0])
    assert np.allclose(fd.bell_prepare(1, 0), [SQ2, 0, 0, -SQ2])


def test_bell_states_orthonormal():
    states = [fd.bell_prepare(x, y) for x in (0, 1) for y in (0, 1)]
    gram = np.array([[st.inner(a, b) for b in states] for a in states])
    assert np.max(np.abs(gram - np.eye(4))) < 1e-12


def test_measure_in_basis():
    assert fd.measure_in_basis(fd.bell_prepare(0, 0), "bell")["00"] == pytest.approx(1.0)
    plus2 = np.full(4, 0.5, dtype=complex)
    assert fd.measure_in_basis(plus2, "hadamard")["00"] == pytest.approx(1.0)
    # mixture weights |a'|^2, |b'|^2
    a_p, b_p = 0.6, 0.8
    state = a_p * fd.bell_prepare(0, 0) + b_p * fd.bell_prepare(0, 1)
    dist = fd.measure_in_basis(state, "bell")
    assert dist["00"] == pytest.approx(a_p**2, abs=1e-12)
    assert dist["01"] == pytest.approx(b_p**2, abs=1e-12)
    with pytest.raises(ArgumentError):
        fd.measure_in_basis(random_state(8, np.random.default_rng(0)), "bell")


def test_teleport_zero_payload_all_branches():
    seen = set()
    for seed in range(40):
        bob, branch = fd.teleport(st.basis_state(0, 1), seed)
        seen.add(branch)
        assert st.fidelity(bob, st.basis_state(0, 1)) > 1 - 1e-10
    assert seen == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_teleport_branch_probabilities_exact():
    payload = random_state(2, np.random.default_rng(5))
    joint = st.kron(payload, fd.bell_prepare(0, 0))
    joint = qc.run(qc.Circuit(3).cx(0, 1).h(0), joint)
    probs = st.probabilities(joint, [0, 1])
    for p in probs.values():
        assert p == pytest.approx(0.25, abs=1e-10)


def test_teleport_pre_correction_state_is_z_phi():
    # branch (1, 0): Bob holds Z|phi> before his correction
    payload = random_state(2, np.random.default_rng(8))
    joint = st.kron(payload, fd.bell_prepare(0, 0))
    joint = qc.run(qc.Circuit(3).cx(0, 1).h(0), joint)
    collapsed, _ = st.project(joint, 0, 1)
    collapsed, _ = st.project(collapsed, 1, 0)
    bob = collapsed.reshape(4, 2)[2, :]
    z_phi = qc.gate_matrix("z") @ payload
    assert st.fidelity(bob / np.linalg.norm(bob), z_phi) > 1 - 1e-10


def test_teleport_seeded_random_payloads():
    rng = np.random.default_rng(99)
    worst = 1.0
    for k in range(1000):
        payload = random_state(2, rng)
        bob, _ = fd.teleport(payload, seed=k)
        worst = min(worst, st.fidelity(bob, payload))
    assert worst >= 1 - 1e-10


def _balanced_parity_oracle(n):
    return phase_oracle(MarkedSet(n, {x for x in range(1 << n) if bin(x).count("1") % 2}))


def test_deutsch_jozsa_verdicts():
    assert fd.deutsch_jozsa(phase_oracle(MarkedSet(3, set())), 3) == "constant"
    assert fd.deutsch_jozsa(phase_oracle(MarkedSet(3, set(range(8)))), 3) == "constant"
    assert fd.deutsch_jozsa(_balanced_parity_oracle(3), 3) == "balanced"


def test_deutsch_jozsa_constant_one_has_negative_amplitude():
    oracle = phase_oracle(MarkedSet(2, set(range(4))))
    circ = qc.Circuit(2).h(0).h(1).extend(oracle).h(0).h(1)
    out = qc.run(circ)
    assert out[0] == pytest.approx(-1.0)


def test_deutsch_jozsa_promise_violation():
    # f with a single marked input out of 8 is neither constant nor balanced
    with pytest.raises(PromiseViolationError):
        fd.deutsch_jozsa(phase_oracle(MarkedSet(3, {5})), 3)


def test_deutsch_jozsa_shot_mode():
    assert fd.deutsch_jozsa(phase_oracle(MarkedSet(3, set())), 3,
                            shots=200, seed=1) == "constant"
    assert fd.deutsch_jozsa(_balanced_parity_oracle(3), 3,
                            shots=200, seed=1) == "balanced"


def test_deutsch_jozsa_single_oracle_query():
    # the composed circuit contains the oracle's gates exactly once
    oracle = _balanced_parity_oracle(3)
    from qalg.circuit import Circuit

    circ = Circuit(3)
    for q in range(3):
        circ.h(q)
    circ.extend(oracle)
    for q in range(3):
        circ.h(q)
    non_h = [ins for ins in circ.instructions if ins.kind != "h"]
    oracle_non_h = [ins for ins in oracle.instructions if ins.kind != "h"]
    assert non_h == oracle_non_h


def test_bv_recovery():
    assert fd.bernstein_vazirani(fd.bv_oracle("101", 3), 3) == "101"
    assert fd.bernstein_vazirani(fd.bv_oracle("000", 3), 3) == "000"
    rng = np.random.default_rng(17)
    for _ in range(100):
        n = 8
        s = int(rng.integers(0, 1 << n))
        assert fd.bernstein_vazirani(fd.bv_oracle(s, n), n) == st.index_to_label(s, n)


def test_bv_oracle_matches_dot_product_table():
    # the s = 101 worked table
    expected = {0: 0, 1: 1, 2: 0, 3: 1, 4: 1, 5: 0, 6: 1, 7: 0}
    oracle = fd.bv_oracle("101", 3)
    u = qc.circuit_unitary(oracle)
    for x, fx in expected.items():
        assert u[x, x] == pytest.approx((-1.0) ** fx)


def test_gf2_nullspace():
    assert fd.gf2_nullspace(["001", "100", "101"], 3) == ["010"]
    assert fd.gf2_nullspace([], 3) == ["001", "010", "100"]
    # rank n-1 rows -> single vector
    rows = ["110", "011"]
    ns = fd.gf2_nullspace(rows, 3)
    assert ns == ["111"]
    # brute-force cross-check
    for p in range(8):
        in_null = all(bin(p & int(r, 2)).count("1") % 2 == 0 for r in rows)
        spanned = p in {0, int(ns[0], 2)}
        assert in_null == spanned


def test_gf2_rank():
    assert fd.gf2_rank([0b110, 0b011, 0b101], 3) == 2
    assert fd.gf2_rank([], 3) == 0
    assert fd.gf2_rank([0b100, 0b010, 0b001], 3) == 3


def test_simon_paper_table_and_one_to_one():
    assert fd.simon(fd.simon_oracle("010", 3), 3, seed=5) == "010"
    assert fd.simon(fd.simon_oracle("000", 3), 3, seed=5) == "000"


def test_simon_sampled_rows_orthogonal_to_p():
    n, p = 4, 0b1010
    oracle = fd.simon_oracle(p, n)
    circ = qc.Circuit(2 * n)
    for q in range(n):
        circ.h(q)
    circ.extend(oracle)
    for q in range(n):
        circ.h(q)
    probs = st.probabilities(qc.run(circ), list(range(n)))
    rng = np.random.default_rng(6)
    labels = sorted(probs)
    weights = np.array([probs[k] for k in labels])
    weights /= weights.sum()
    for _ in range(1000):
        x = int(labels[rng.choice(len(labels), p=weights)], 2)
        assert bin(x & p).count("1") % 2 == 0


def test_simon_seeded_recovery_and_shift_property():
    rng = np.random.default_rng(23)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        p = int(rng.integers(0, 1 << n))
        found = fd.simon(fd.simon_oracle(p, n), n, seed=int(rng.integers(0, 10**9)))
        assert found == st.index_to_label(p, n)
        # returned shift satisfies f(x) = f(x XOR p) on the defining table
        for x in range(1 << n):
            assert min(x, x ^ p) == min(x ^ p, (x ^ p) ^ p)


def test_mitigation_paper_example():
    noisy = fd.mitigation_predict(PAPER_M, [0.5, 0, 0, 0.5])
    assert np.allclose(noisy, [0.455, 0.04, 0.04, 0.465], atol=1e-12)
    corrected, raw = fd.mitigation_correct(PAPER_M, noisy)
    assert np.max(np.abs(corrected - [0.5, 0, 0, 0.5])) < 1e-10
    assert np.max(np.abs(raw - [0.5, 0, 0, 0.5])) < 1e-10


def test_mitigation_identity_and_columns():
    ident = np.eye(4)
    assert np.allclose(fd.mitigation_predict(ident, [0.1, 0.2, 0.3, 0.4]),
                       [0.1, 0.2, 0.3, 0.4])
    corrected, _ = fd.mitigation_correct(ident, np.array([0.1, 0.2, 0.3, 0.4]))
    assert np.allclose(corrected, [0.1, 0.2, 0.3, 0.4])
    for col in range(4):
        unit = np.zeros(4)
        unit[col] = 1.0
        assert np.allclose(fd.mitigation_predict(PAPER_M, unit), PAPER_M[:, col])


def test_mitigation_round_trip_simplex_interior():
    rng = np.random.default_rng(31)
    for _ in range(20):
        ideal = rng.dirichlet(np.ones(4))
        noisy = fd.mitigation_predict(PAPER_M, ideal)
        corrected, _ = fd.mitigation_correct(PAPER_M, noisy)
        assert np.max(np.abs(corrected - ideal)) < 1e-10


def test_mitigation_conditioning_error():
    bad = np.full((4, 4), 0.25)
    with pytest.raises(ConditioningError):
        fd.mitigation_correct(bad, np.array([0.25, 0.25, 0.25, 0.25]))


def test_mitigation_matrix_file(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text(
        "# paper response matrix\n"
        + "\n".join(" ".join(str(v) for v in row) for row in PAPER_M)
        + "\n"
    )
    loaded = fd.load_mitigation_matrix(path)
    assert np.allclose(loaded, PAPER_M)
