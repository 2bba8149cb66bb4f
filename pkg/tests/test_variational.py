import math

import numpy as np
import pytest

from qalg import circuit as qc
from qalg import state as st
from qalg import variational as vr
from qalg.errors import ValidationError
from qalg.linalg import hermitian_expm, random_unitary


def all_costs(qubo):
    return np.array(
        [qubo.cost([int(b) for b in format(x, f"0{qubo.n}b")]) for x in range(1 << qubo.n)]
    )


def test_paper_graph_cut_values():
    qubo = vr.maxcut_qubo(vr.paper_graph())
    assert qubo.cost([1, 0, 1, 0, 1]) == pytest.approx(10.0)
    assert qubo.cost([0, 0, 0, 0, 0]) == pytest.approx(0.0)
    costs = all_costs(qubo)
    assert costs.max() == pytest.approx(10.0)
    # cut with weight 10 uses 5 edges in the worked example
    x = [1, 0, 1, 0, 1]
    w = vr.paper_graph().w
    cut_edges = sum(
        1 for i in range(5) for j in range(i + 1, 5) if w[i, j] and x[i] != x[j]
    )
    assert cut_edges == 5


def test_maxcut_qubo_equals_cut_weight():
    g = vr.paper_graph()
    qubo = vr.maxcut_qubo(g)
    for x_int in range(32):
        x = [int(b) for b in format(x_int, "05b")]
        direct = sum(
            g.w[i, j] for i in range(5) for j in range(i + 1, 5) if x[i] != x[j]
        )
        assert qubo.cost(x) == pytest.approx(direct)


def test_cost_hamiltonian_diagonal_matches():
    qubo = vr.maxcut_qubo(vr.paper_graph())
    h_c, const = vr.qubo_cost_hamiltonian(qubo)
    diag = np.real(np.diagonal(h_c.matrix())) + const
    assert np.max(np.abs(diag - all_costs(qubo))) < 1e-10


def test_cost_hamiltonian_trivial_and_single_edge():
    empty = vr.Qubo(np.zeros((2, 2)), np.zeros(2))
    h_c, const = vr.qubo_cost_hamiltonian(empty)
    assert h_c.terms == [] and const == 0.0
    edge = vr.maxcut_qubo(vr.WeightedGraph.from_edges(2, [(0, 1, 1.0)]))
    h_c, const = vr.qubo_cost_hamiltonian(edge)
    diag = np.real(np.diagonal(h_c.matrix())) + const
    assert np.allclose(diag, [0, 1, 1, 0])


def test_cost_hamiltonian_exhaustive_n6():
    rng = np.random.default_rng(3)
    q = rng.standard_normal((6, 6))
    qubo = vr.Qubo(q, rng.standard_normal(6))
    h_c, const = vr.qubo_cost_hamiltonian(qubo)
    diag = np.real(np.diagonal(h_c.matrix())) + const
    assert np.max(np.abs(diag - all_costs(qubo))) < 1e-10


def test_qaoa_uniform_limits():
    qubo = vr.maxcut_qubo(vr.paper_graph())
    h_c, const = vr.qubo_cost_hamiltonian(qubo)
    mean_cost = all_costs(qubo).mean()
    assert vr.qaoa_expectation(h_c, const, vr.QaoaParams((0.0,), (0.0,))) == pytest.approx(
        mean_cost, abs=1e-10
    )
    # gamma = 0 with arbitrary beta keeps the uniform magnitude profile
    assert vr.qaoa_expectation(h_c, const, vr.QaoaParams((0.9,), (0.0,))) == pytest.approx(
        mean_cost, abs=1e-10
    )


def test_qaoa_periodicity_paper_graph():
    # integer-weight cut Hamiltonian: expectation is 2pi-periodic in gamma
    # and pi-periodic in beta
    qubo = vr.maxcut_qubo(vr.paper_graph())
    h_c, const = vr.qubo_cost_hamiltonian(qubo)
    base = vr.qaoa_expectation(h_c, const, vr.QaoaParams((0.37,), (0.53,)))
    shifted_g = vr.qaoa_expectation(
        h_c, const, vr.QaoaParams((0.37,), (0.53 + 2 * math.pi,))
    )
    shifted_b = vr.qaoa_expectation(
        h_c, const, vr.QaoaParams((0.37 + math.pi,), (0.53,))
    )
    assert shifted_g == pytest.approx(base, abs=1e-8)
    assert shifted_b == pytest.approx(base, abs=1e-8)


def test_qaoa_optimized_beats_threshold():
    qubo = vr.maxcut_qubo(vr.paper_graph())
    h_c, const = vr.qubo_cost_hamiltonian(qubo)
    _, best = vr.qaoa_optimize(h_c, const, p=2, budget=2000, seed=0)
    assert best >= 7.0


def test_optimizer_contracts():
    x, val = vr.optimize_derivative_free(lambda v: (v[0] - 1.0) ** 2, [0.0], 200)
    assert abs(x[0] - 1.0) <= 1e-2 and val < 1e-3
    x, val = vr.optimize_derivative_free(lambda v: 3.0, [0.4, -0.2], 50)
    assert np.allclose(x, [0.4, -0.2]) and val == 3.0

    def vqe(v):
        state = qc.run(qc.Circuit(1).ry(0, v[0]))
        return st.expectation(state, qc.gate_matrix("z")).real

    x, val = vr.optimize_derivative_free(vqe, [0.3], 300)
    assert val == pytest.approx(-1.0, abs=1e-2)
    assert abs(abs(x[0]) - math.pi) < 1e-1


def test_adiabatic_fixed_point_and_single_qubit():
    mixer = vr.default_mixer(2)
    out = vr.adiabatic_evolve(mixer, 5.0, 50, h_i=mixer)
    assert st.fidelity(out, np.full(4, 0.5)) == pytest.approx(1.0, abs=1e-10)
    out = vr.adiabatic_evolve(vr.PauliSum(1, [(-1.0, "Z")]), 20.0, 200)
    assert abs(out[0]) ** 2 >= 0.95


def test_adiabatic_fidelity_improves_with_total_time():
    h_f = vr.PauliSum(2, [(-1.0, "ZZ"), (0.4, "ZI"), (-0.6, "IZ")])
    vals, vecs = np.linalg.eigh(h_f.matrix())
    ground = vecs[:, 0]
    fids = []
    for total_t in (5.0, 15.0, 45.0):
        out = vr.adiabatic_evolve(h_f, total_t, int(total_t * 10))
        fids.append(st.fidelity(out, ground))
    assert fids[0] <= fids[1] + 1e-9 <= fids[2] + 2e-9
    assert fids[-1] > 0.9


def test_adiabatic_maxcut_ground_state():
    qubo = vr.maxcut_qubo(vr.paper_graph())
    h_c, const = vr.qubo_cost_hamiltonian(qubo)
    negated = vr.PauliSum(5, [(-c, s) for c, s in h_c.real_terms()])
    out = vr.adiabatic_evolve(negated, 30.0, 300)
    probs = np.abs(out) ** 2
    costs = all_costs(qubo)
    optimal = {x for x in range(32) if abs(costs[x] - 10.0) < 1e-9}
    assert sum(probs[x] for x in optimal) >= 0.5
    assert int(np.argmax(probs)) in optimal


def make_system(eigs, b_label=0):
    n_b = max(1, (len(eigs) - 1).bit_length())
    h = qc.gate_matrix("h")
    basis = h
    for _ in range(n_b - 1):
        basis = np.kron(basis, h)
    a = basis @ np.diag(eigs) @ basis
    return vr.LinearSystem(a, st.basis_state(b_label, n_b))


def test_linear_system_validation():
    with pytest.raises(ValidationError):
        vr.LinearSystem(np.diag([0.5, 1.5]), st.basis_state(0, 1))
    with pytest.raises(ValidationError):
        vr.LinearSystem(np.array([[0.5, 0.2], [0.1, 0.5]]), st.basis_state(0, 1))


def test_hhl_dyadic_two_by_two():
    sys_ = make_system([0.25, 0.75])
    x_hat, prob = vr.hhl(sys_, 2, 0.25)
    exact = sys_.solution()
    assert st.fidelity(x_hat, exact) >= 1 - 1e-6
    # solution proportional to (3, 1)/sqrt(10) in the eigenbasis
    h = qc.gate_matrix("h")
    in_eigenbasis = h @ x_hat
    expected = np.array([3, 1]) / math.sqrt(10)
    assert st.fidelity(in_eigenbasis, expected.astype(complex)) >= 1 - 1e-6


def test_hhl_scalar_matrix():
    sys_ = vr.LinearSystem(0.5 * np.eye(2), qc.run(qc.Circuit(1).ry(0, 1.1)))
    x_hat, _ = vr.hhl(sys_, 2)
    assert st.fidelity(x_hat, sys_.b) >= 1 - 1e-9


def test_hhl_non_dyadic():
    sys_ = make_system([0.3, 0.75])
    x_hat, _ = vr.hhl(sys_, 6)
    assert st.fidelity(x_hat, sys_.solution()) >= 0.9


def test_lambda_inverse_rotations():
    circ = vr.lambda_inverse_rotations(3)
    # leading-term check: value 1 (LSB set) rotates the ancilla by pi
    out = qc.run(circ, "0010")
    assert st.probabilities(out, [3])["1"] == pytest.approx(1.0, abs=1e-12)
    # all-zero clock: no rotation
    out = qc.run(circ, "0000")
    assert st.probabilities(out, [3])["0"] == pytest.approx(1.0)
    # one-hot sweep: smaller lambda -> larger rotation
    sines = []
    for k in range(3):
        v = 1 << k  # lambda = 2^k
        label = format(v, "03b") + "0"
        out = qc.run(circ, label)
        sines.append(st.probabilities(out, [3])["1"])
    assert sines[0] > sines[1] > sines[2]


def test_hadamard_test_values():
    assert vr.hadamard_test(qc.Circuit(1).i(0), qc.Circuit(1)) == pytest.approx(1.0)
    assert vr.hadamard_test(qc.Circuit(1).z(0), qc.Circuit(1).h(0)) == pytest.approx(
        0.0, abs=1e-12
    )
    t = 0.37
    assert vr.hadamard_test(qc.Circuit(1).rz(0, 2 * t), qc.Circuit(1)) == pytest.approx(
        math.cos(t)
    )


def test_hadamard_test_seeded_pairs():
    rng = np.random.default_rng(19)
    for _ in range(50):
        u = random_unitary(2, rng)
        prep_mat = random_unitary(2, rng)
        phi = prep_mat @ st.basis_state(0, 1)
        direct = float(np.vdot(phi, u @ phi).real)
        got = vr.hadamard_test(
            qc.Circuit(1).unitary((0,), u), qc.Circuit(1).unitary((0,), prep_mat)
        )
        assert got == pytest.approx(direct, abs=1e-10)


def test_vqls_cost():
    sys_ = make_system([0.25, 0.75])
    assert vr.vqls_cost(sys_.a, sys_.b, sys_.solution()) == pytest.approx(0.0, abs=1e-10)
    perp = st.basis_state(1, 1)
    assert vr.vqls_cost(np.eye(2), st.basis_state(0, 1), perp) == pytest.approx(1.0)


def test_vqls_sweep_has_minimum_at_solution():
    sys_ = make_system([0.25, 0.75])
    sol = sys_.solution()
    theta_star = 2 * math.atan2(sol[1].real, sol[0].real)
    thetas = np.linspace(theta_star - 0.5, theta_star + 0.5, 501)
    costs = [
        vr.vqls_cost(sys_.a, sys_.b, qc.run(qc.Circuit(1).ry(0, th))) for th in thetas
    ]
    assert abs(thetas[int(np.argmin(costs))] - theta_star) < 1e-3
