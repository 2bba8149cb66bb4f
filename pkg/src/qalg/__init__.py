"""Dense state-vector quantum simulator and algorithm suite.

Qubit 0 is the most significant bit of every basis index (left-to-right ket
order). Hot gate kernels run through numba when available; set
``QALG_BACKEND=numpy`` for the pure-numpy fallback and ``QALG_MAX_QUBITS``
to lower the 24-qubit register cap.
"""

from .backend import backend_name, max_qubits, set_backend
from .circuit import (
    Circuit,
    Instruction,
    circuit_unitary,
    format_circuit,
    gate_matrix,
    inverse,
    load_circuit,
    parse_circuit,
    run,
)
from .decompose import (
    ZYDecomposition,
    axbxc_compile,
    axbxc_decompose,
    ccu_compile,
    gray_code_synthesize,
    multi_controlled_compile,
    sqrt_gate,
    two_level_decompose,
    zy_decompose,
)
from .fermion import (
    ENCODINGS,
    FermionHamiltonian,
    LadderTerm,
    anticommutator_check,
    beta_inv,
    beta_matrix,
    encode_hamiltonian,
    encode_ladder,
    flip_set,
    ladder_apply,
    parity_set,
    pi_matrix,
    remainder_set,
    update_set,
)
from .foundations import (
    bell_prepare,
    bernstein_vazirani,
    bv_oracle,
    deutsch_jozsa,
    gf2_nullspace,
    gf2_rank,
    measure_in_basis,
    mitigation_correct,
    mitigation_predict,
    simon,
    simon_oracle,
    teleport,
)
from .fourier import (
    PhaseEstimate,
    controlled_power_from_circuit,
    controlled_power_from_matrix,
    ipe,
    iqft_circuit,
    qft_circuit,
    qft_gate_count,
    qpe,
    qpe_outcome_prob,
)
from .grover import (
    GroverPlan,
    amplitude_estimate,
    derandomized_search,
    diffuser,
    grover_operator,
    grover_search,
    quantum_count,
    search_by_hamiltonian,
)
from .hamsim import (
    PauliSum,
    SparseOracle,
    exp_pauli_circuit,
    format_pauli_sum,
    lcu_apply,
    lcu_circuit,
    lcu_taylor_expand,
    oblivious_aa,
    one_sparse_evolve,
    parse_pauli_sum,
    pauli_decompose,
    split_one_sparse,
    trotter1,
    trotter2,
)
from .oracles import (
    MarkedSet,
    TruthTable,
    bit_oracle,
    comparator,
    controlled_modexp,
    load_truth_table,
    modmul_circuit,
    phase_oracle,
)
from .period import (
    Convergent,
    RsaKeys,
    bezout,
    continued_fractions,
    discrete_log,
    gcd,
    mod_inverse,
    modexp,
    quantum_period,
    rsa,
    shor_factor,
)
from .state import (
    apply_gate,
    basis_state,
    equal_up_to_global_phase,
    expectation,
    fidelity,
    inner,
    kron,
    probabilities,
    project,
    sample,
    zero_state,
)
from .variational import (
    LinearSystem,
    QaoaParams,
    Qubo,
    WeightedGraph,
    adiabatic_evolve,
    hadamard_test,
    hhl,
    lambda_inverse_rotations,
    maxcut_qubo,
    optimize_derivative_free,
    paper_graph,
    qaoa_expectation,
    qaoa_optimize,
    qubo_cost_hamiltonian,
    vqls_cost,
)

__version__ = "0.1.0"
