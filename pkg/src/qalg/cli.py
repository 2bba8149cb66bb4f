"""Command-line front end: every algorithm as a subcommand with seeded
determinism and machine-readable output.

Identical invocations print byte-identical JSON: keys are sorted, floats are
rendered at 12 significant digits, and distributions are keyed by bitstrings
in ket order. ``--text`` switches to a human-readable view with ASCII
histograms. Exit codes: 0 success, 1 algorithm-level inconclusive result,
2 argument errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import circuit as qc
from . import fermion as fm
from . import foundations as fd
from . import fourier as fr
from . import grover as gr
from . import hamsim as hs
from . import oracles as orc
from . import period as pd
from . import state as st
from . import variational as vr
from .errors import (
    ArgumentError,
    InconclusiveError,
    NotInvertibleError,
    PromiseViolationError,
    QalgError,
)


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, (np.floating,)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, complex):
        return {"re": _round_floats(obj.real), "im": _round_floats(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _histogram(dist: dict, width: int = 40) -> str:
    lines = []
    top = max(dist.values()) if dist else 1.0
    for label in sorted(dist):
        value = dist[label]
        bar = "#" * int(round(width * value / top)) if top > 0 else ""
        lines.append(f"  {label}  {value:.6f}  {bar}")
    return "\n".join(lines)


def _emit(args, payload: dict) -> None:
    payload = _round_floats(payload)
    if args.text:
        print(f"[{payload['command']}]")
        for key, value in sorted(payload.get("inputs", {}).items()):
            print(f"  {key} = {value}")
        result = payload.get("result", {})
        for key in sorted(result):
            value = result[key]
            if isinstance(value, dict) and value and all(
                isinstance(v, (int, float)) for v in value.values()
            ):
                print(f"{key}:")
                print(_histogram(value))
            else:
                print(f"{key}: {value}")
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _parse_marked(text: str) -> list[str]:
    return [w.strip() for w in text.split(",") if w.strip()]


def _parse_pauli_arg(text: str, n: int | None = None) -> hs.PauliSum:
    return hs.parse_pauli_sum(text.replace(";", "\n").replace(",", "\n"), n)


def _payload(command: str, inputs: dict, result: dict) -> dict:
    return {"command": command, "inputs": inputs, "result": result}


# -- handlers -----------------------------------------------------------------

def _cmd_bell(args):
    state = fd.bell_prepare(args.x, args.y)
    dist = fd.measure_in_basis(state, args.basis)
    if args.shots:
        counts = st.sample(state, args.shots, args.seed)
        result = {"counts": counts, "distribution": dist}
    else:
        result = {"distribution": dist}
    result["amplitudes"] = {
        st.index_to_label(i, 2): complex(a) for i, a in enumerate(state)
    }
    return _payload("bell", {"x": args.x, "y": args.y, "basis": args.basis}, result)


def _cmd_teleport(args):
    payload_state = np.array(
        [math.cos(args.theta / 2), np.exp(1j * args.phi) * math.sin(args.theta / 2)],
        dtype=complex,
    )
    bob, (i, j) = fd.teleport(payload_state, args.seed)
    return _payload(
        "teleport",
        {"theta": args.theta, "phi": args.phi, "seed": args.seed},
        {
            "branch": f"{i}{j}",
            "fidelity": st.fidelity(bob, payload_state),
        },
    )


def _dj_oracle(args) -> tuple[qc.Circuit, dict]:
    n = args.n
    if args.marked:
        marked = orc.MarkedSet(n, set(_parse_marked(args.marked)))
        return orc.phase_oracle(marked), {"marked": sorted(_parse_marked(args.marked))}
    if args.f == "const0":
        marked = orc.MarkedSet(n, set())
    elif args.f == "const1":
        marked = orc.MarkedSet(n, set(range(1 << n)))
    else:  # parity
        marked = orc.MarkedSet(n, {x for x in range(1 << n) if bin(x).count("1") % 2})
    return orc.phase_oracle(marked), {"f": args.f}


def _cmd_dj(args):
    oracle, described = _dj_oracle(args)
    verdict = fd.deutsch_jozsa(oracle, args.n)
    return _payload("dj", {"n": args.n, **described}, {"verdict": verdict})


def _cmd_bv(args):
    n = len(args.s)
    oracle = fd.bv_oracle(args.s, n)
    return _payload("bv", {"s": args.s}, {"recovered": fd.bernstein_vazirani(oracle, n)})


def _cmd_simon(args):
    n = len(args.p)
    oracle = fd.simon_oracle(args.p, n)
    found = fd.simon(oracle, n, args.seed, args.max_runs)
    return _payload(
        "simon",
        {"p": args.p, "seed": args.seed},
        {"recovered": found, "one_to_one": found == "0" * n},
    )


def _cmd_qft(args):
    circ = fr.qft_circuit(args.n, not args.no_swaps)
    state = qc.run(circ, args.input if args.input else None)
    result = {"distribution": st.probabilities(state)}
    if args.n <= 6:
        result["amplitudes"] = {
            st.index_to_label(i, args.n): complex(a) for i, a in enumerate(state)
        }
    result["gate_count"] = fr.qft_gate_count(args.n)
    return _payload(
        "qft", {"n": args.n, "input": args.input or "0" * args.n,
                "with_final_swaps": not args.no_swaps}, result
    )


def _phase_factory(theta: float):
    return fr.controlled_power_from_matrix(qc.gate_matrix("p", (2 * math.pi * theta,)))


def _cmd_qpe(args):
    est = fr.qpe(_phase_factory(args.theta), st.basis_state(1, 1), args.c)
    return _payload(
        "qpe",
        {"theta": args.theta, "c": args.c},
        {
            "theta_hat": est.theta_hat,
            "raw_outcome": est.raw_outcome,
            "exact": est.exact,
            "distribution": est.distribution,
        },
    )


def _cmd_ipe(args):
    est = fr.ipe(_phase_factory(args.theta), st.basis_state(1, 1), args.m)
    return _payload(
        "ipe",
        {"theta": args.theta, "m": args.m},
        {"bits": est.raw_outcome, "theta_hat": est.theta_hat, "exact": est.exact},
    )


def _cmd_period(args):
    r = pd.quantum_period(args.a, args.N, args.t, args.seed)
    return _payload(
        "period",
        {"a": args.a, "N": args.N, "t": args.t, "seed": args.seed},
        {"r": r, "verified": pd.modexp(args.a, r, args.N) == 1},
    )


def _cmd_shor(args):
    p, q = pd.shor_factor(args.n, args.seed)
    return _payload("shor", {"n": args.n, "seed": args.seed},
                    {"factors": [p, q], "product": p * q})


def _cmd_dlog(args):
    s = pd.discrete_log(args.a, args.b, args.N, args.t, args.seed)
    return _payload(
        "dlog",
        {"a": args.a, "b": args.b, "N": args.N, "seed": args.seed},
        {"s": s, "verified": pd.modexp(args.a, s, args.N) == args.b % args.N},
    )


def _cmd_rsa(args):
    keys, cipher, decrypted = pd.rsa(args.p, args.q, args.e, args.m)
    return _payload(
        "rsa",
        {"p": args.p, "q": args.q, "e": args.e, "message": args.m},
        {
            "n": keys.n, "phi": keys.phi, "d": keys.d,
            "cipher": cipher, "decrypted": decrypted,
            "round_trip_ok": decrypted == args.m,
        },
    )


def _cmd_grover(args):
    marked = orc.MarkedSet(args.n, set(_parse_marked(args.marked)))
    dist, plan = gr.grover_search(marked, args.r)
    success = sum(dist[st.index_to_label(w, args.n)] for w in marked.marked)
    return _payload(
        "grover",
        {"n": args.n, "marked": sorted(_parse_marked(args.marked)), "r": plan.r},
        {
            "distribution": dist,
            "success_probability": success,
            "closed_form": plan.success_probability(),
            "alpha": plan.alpha,
        },
    )


def _cmd_count(args):
    marked = orc.MarkedSet(args.n, set(_parse_marked(args.marked)) if args.marked else set())
    mu_hat, est = gr.quantum_count(marked, args.c)
    return _payload(
        "count",
        {"n": args.n, "marked": sorted(_parse_marked(args.marked)) if args.marked else [],
         "c": args.c},
        {"mu_hat": mu_hat, "mu_true": len(marked), "theta_hat": est["theta_hat"]},
    )


def _cmd_aestimate(args):
    if args.ry_theta is not None:
        prep = qc.Circuit(1).ry(0, 2 * args.ry_theta)
        good = orc.MarkedSet(1, {1})
        inputs = {"ry_theta": args.ry_theta, "c": args.c}
        true_g = math.sin(args.ry_theta) ** 2
    else:
        if not args.marked:
            raise ArgumentError("aestimate needs --ry-theta or --n/--marked")
        good = orc.MarkedSet(args.n, set(_parse_marked(args.marked)))
        prep = qc.Circuit(args.n)
        for q in range(args.n):
            prep.h(q)
        inputs = {"n": args.n, "marked": sorted(_parse_marked(args.marked)), "c": args.c}
        true_g = len(good) / (1 << args.n)
    est = gr.amplitude_estimate(prep, good, args.c)
    return _payload(
        "aestimate", inputs,
        {"g_hat": est["g_hat"], "g_true": true_g, "theta_hat": est["theta_hat"]},
    )


def _cmd_trotter(args):
    h = _parse_pauli_arg(args.h)
    if h.n > 6:
        raise ArgumentError("trotter CLI check is limited to 6 qubits")
    from .linalg import hermitian_expm

    dense = hermitian_expm(h.matrix(), args.t)
    circ = hs.trotter2(h, args.t, args.r) if args.order == 2 else hs.trotter1(h, args.t, args.r)
    err = float(np.linalg.norm(qc.circuit_unitary(circ) - dense, ord=2))
    return _payload(
        "trotter",
        {"h": args.h, "t": args.t, "r": args.r, "order": args.order},
        {"operator_error": err, "gates": len(circ.instructions)},
    )


def _cmd_sparse1(args):
    rng = np.random.default_rng(args.seed)
    n = args.n
    dim = 1 << n
    items = list(range(dim))
    rng.shuffle(items)
    f_map = {}
    while items:
        x = items.pop()
        if items and rng.random() < 0.5:
            y = items.pop()
            f_map[x] = y
            f_map[y] = x
        else:
            f_map[x] = x
    values = {}
    for x in range(dim):
        pair = (min(x, f_map[x]), max(x, f_map[x]))
        if pair not in values:
            values[pair] = float(rng.standard_normal())
    oracle = hs.SparseOracle(
        n,
        lambda x: f_map[x],
        lambda x, y: values.get((min(x, y), max(x, y)), 0.0) if f_map[x] == y else 0.0,
    )
    from .linalg import hermitian_expm, random_state

    psi = random_state(dim, rng)
    exact = hermitian_expm(oracle.dense(), args.t) @ psi
    out = hs.one_sparse_evolve(oracle, args.t, psi, quantized=args.quantized)
    err = float(np.max(np.abs(out - exact)))
    return _payload(
        "sparse1",
        {"n": n, "t": args.t, "seed": args.seed, "quantized": args.quantized},
        {"max_deviation": err},
    )


def _cmd_lcu(args):
    h = _parse_pauli_arg(args.h)
    coeffs = []
    unitaries = []
    for coeff, letters in h.real_terms():
        circ = qc.Circuit(h.n)
        for q, ch in enumerate(letters):
            if ch != "I":
                circ.add(ch.lower(), (q,))
        if coeff < 0:
            circ.gphase(math.pi)
        coeffs.append(abs(coeff))
        unitaries.append(circ)
    initial = st.basis_state(args.input if args.input else 0, h.n)
    out, prob = hs.lcu_apply(coeffs, unitaries, initial)
    result = {
        "success_probability": prob,
        "post_selected": st.probabilities(out),
    }
    if args.aa_rounds:
        w, n_anc = hs.lcu_circuit(coeffs, unitaries)
        amp = hs.oblivious_aa(w, args.aa_rounds, n_anc)
        joint = qc.run(amp, st.kron(st.zero_state(n_anc), initial))
        tensor = joint.reshape(1 << n_anc, 1 << h.n)
        result["amplified_success"] = float(np.sum(np.abs(tensor[0, :]) ** 2))
    return _payload(
        "lcu", {"h": args.h, "input": args.input or 0, "aa_rounds": args.aa_rounds},
        result,
    )


def _cmd_qaoa(args):
    graph = vr.load_graph(args.graph) if args.graph else vr.paper_graph()
    qubo = vr.maxcut_qubo(graph)
    h_c, const = vr.qubo_cost_hamiltonian(qubo)
    params, best = vr.qaoa_optimize(h_c, const, args.p, args.budget, args.seed)
    costs = [
        qubo.cost([int(b) for b in st.index_to_label(x, qubo.n)])
        for x in range(1 << qubo.n)
    ]
    return _payload(
        "qaoa",
        {"p": args.p, "budget": args.budget, "seed": args.seed,
         "graph": args.graph or "paper"},
        {
            "qubo": {"Q": qubo.q.tolist(), "c": qubo.c.tolist()},
            "expectation": best,
            "optimum": max(costs),
            "betas": list(params.betas),
            "gammas": list(params.gammas),
        },
    )


def _cmd_adiabatic(args):
    h_f = _parse_pauli_arg(args.hf)
    state = vr.adiabatic_evolve(h_f, args.T, args.p)
    dist = st.probabilities(state)
    matrix = h_f.matrix()
    vals = np.linalg.eigvalsh(matrix)
    ground = float(vals[0] + h_f.constant.real)
    energy = float(st.expectation(state, matrix).real + h_f.constant.real)
    return _payload(
        "adiabatic",
        {"hf": args.hf, "T": args.T, "p": args.p},
        {
            "distribution": dist,
            "argmax": max(dist, key=dist.get),
            "energy": energy,
            "ground_energy": ground,
        },
    )


def _hhl_system(args) -> vr.LinearSystem:
    eigs = [float(x) for x in args.eigs.split(",")]
    n_b = max(1, (len(eigs) - 1).bit_length())
    if len(eigs) != (1 << n_b):
        raise ArgumentError("--eigs needs a power-of-two count of eigenvalues")
    diag = np.diag(eigs)
    if args.basis == "h":
        h1 = qc.gate_matrix("h")
        basis = h1
        for _ in range(n_b - 1):
            basis = np.kron(basis, h1)
        a = basis @ diag @ basis
    else:
        a = diag
    return vr.LinearSystem(a, st.basis_state(args.b_label, n_b))


def _cmd_hhl(args):
    sys_ = _hhl_system(args)
    x_hat, prob = vr.hhl(sys_, args.clock, args.c_const)
    exact = sys_.solution()
    return _payload(
        "hhl",
        {"eigs": args.eigs, "basis": args.basis, "b_label": args.b_label,
         "clock": args.clock, "c_const": args.c_const},
        {
            "fidelity": st.fidelity(x_hat, exact),
            "success_probability": prob,
            "solution": {st.index_to_label(i, st.n_qubits_of(x_hat)): complex(v)
                         for i, v in enumerate(x_hat)},
        },
    )


def _cmd_vqls(args):
    sys_ = _hhl_system(args)
    b = sys_.b

    def objective(vec):
        cand = qc.run(qc.Circuit(1).ry(0, float(vec[0])))
        return vr.vqls_cost(sys_.a, b, cand)

    best_vec, best_cost = vr.optimize_derivative_free(objective, [0.1], args.budget)
    cand = qc.run(qc.Circuit(1).ry(0, float(best_vec[0])))
    return _payload(
        "vqls",
        {"eigs": args.eigs, "basis": args.basis, "b_label": args.b_label,
         "budget": args.budget},
        {
            "cost": best_cost,
            "theta": float(best_vec[0]),
            "fidelity": st.fidelity(cand, sys_.solution()),
        },
    )


def _cmd_fermion_encode(args):
    factors = []
    for token in args.modes.split(","):
        token = token.strip()
        if token.endswith("^"):
            factors.append((int(token[:-1]), True))
        else:
            factors.append((int(token), False))
    term = fm.LadderTerm(1.0, tuple(factors))
    encoded = fm.encode_ladder(term, args.n, args.kind)
    terms = {s: complex(c) for c, s in encoded.terms}
    return _payload(
        "fermion-encode",
        {"modes": args.modes, "n": args.n, "kind": args.kind},
        {"terms": terms, "constant": complex(encoded.constant)},
    )


def _cmd_mitigate(args):
    m = fd.load_mitigation_matrix(args.m_file)
    probs = np.array([float(x) for x in args.probs.split(",")])
    if args.correct:
        corrected, raw = fd.mitigation_correct(m, probs)
        result = {"corrected": corrected.tolist(), "raw": raw.tolist()}
    else:
        result = {"noisy": fd.mitigation_predict(m, probs).tolist()}
    return _payload(
        "mitigate",
        {"m_file": args.m_file, "probs": probs.tolist(), "correct": args.correct},
        result,
    )


def _cmd_circuit_run(args):
    circ = qc.load_circuit(args.file, args.n)
    state = qc.run(circ, args.initial if args.initial else None)
    result = {"distribution": st.probabilities(state)}
    if args.shots:
        result["counts"] = st.sample(state, args.shots, args.seed)
    return _payload(
        "circuit-run",
        {"file": args.file, "initial": args.initial or "0" * circ.n_qubits,
         "shots": args.shots, "seed": args.seed},
        result,
    )


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qalg", description="state-vector quantum algorithm toolbox"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    common.add_argument("--shots", type=int, default=0,
                        help="also sample this many shots")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="text", action="store_false", default=False)
    mode.add_argument("--text", dest="text", action="store_true")
    subs = parser.add_subparsers(dest="command", required=True)

    def add_sub(name, **kwargs):
        return subs.add_parser(name, parents=[common], **kwargs)

    p = add_sub("bell", help="prepare and measure a Bell state")
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--y", type=int, default=0)
    p.add_argument("--basis", default="computational",
                   choices=("computational", "bell", "hadamard"))
    p.set_defaults(func=_cmd_bell)

    p = add_sub("teleport", help="teleport a Bloch-angle state")
    p.add_argument("--theta", type=float, default=1.0471975511965976)
    p.add_argument("--phi", type=float, default=0.5235987755982988)
    p.set_defaults(func=_cmd_teleport)

    p = add_sub("dj", help="Deutsch-Jozsa constant-vs-balanced")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", choices=("const0", "const1", "parity"), default="parity")
    p.add_argument("--marked", help="comma-separated f=1 bitstrings")
    p.set_defaults(func=_cmd_dj)

    p = add_sub("bv", help="Bernstein-Vazirani secret string")
    p.add_argument("--s", required=True)
    p.set_defaults(func=_cmd_bv)

    p = add_sub("simon", help="Simon hidden shift")
    p.add_argument("--p", required=True)
    p.add_argument("--max-runs", type=int, default=None)
    p.set_defaults(func=_cmd_simon)

    p = add_sub("qft", help="quantum Fourier transform of a basis state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input")
    p.add_argument("--no-swaps", action="store_true")
    p.set_defaults(func=_cmd_qft)

    p = add_sub("qpe", help="phase estimation of P(2 pi theta)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--c", type=int, default=4)
    p.set_defaults(func=_cmd_qpe)

    p = add_sub("ipe", help="iterative phase estimation")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--m", type=int, default=3)
    p.set_defaults(func=_cmd_ipe)

    p = add_sub("period", help="quantum order finding")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=_cmd_period)

    p = add_sub("shor", help="factor an odd composite")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_shor)

    p = add_sub("dlog", help="discrete logarithm")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=_cmd_dlog)

    p = add_sub("rsa", help="RSA key generation and round trip")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=_cmd_rsa)

    p = add_sub("grover", help="Grover search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", required=True)
    p.add_argument("--r", type=int, default=None)
    p.set_defaults(func=_cmd_grover)

    p = add_sub("count", help="quantum counting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", default="")
    p.add_argument("--c", type=int, default=5)
    p.set_defaults(func=_cmd_count)

    p = add_sub("aestimate", help="amplitude estimation")
    p.add_argument("--ry-theta", type=float, default=None)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--marked")
    p.add_argument("--c", type=int, default=4)
    p.set_defaults(func=_cmd_aestimate)

    p = add_sub("trotter", help="Trotter error against the dense exponential")
    p.add_argument("--h", required=True, help="PauliSum, e.g. '1 XI;1 ZZ'")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--r", type=int, default=8)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=_cmd_trotter)

    p = add_sub("sparse1", help="1-sparse Hamiltonian simulation check")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--t", type=float, default=0.7)
    p.add_argument("--quantized", action="store_true")
    p.set_defaults(func=_cmd_sparse1)

    p = add_sub("lcu", help="linear combination of unitaries")
    p.add_argument("--h", required=True)
    p.add_argument("--input", type=int, default=0)
    p.add_argument("--aa-rounds", type=int, default=0)
    p.set_defaults(func=_cmd_lcu)

    p = add_sub("qaoa", help="QAOA on a MaxCut instance")
    p.add_argument("--graph", help="edge-list file; defaults to the 5-node example")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--budget", type=int, default=2000)
    p.set_defaults(func=_cmd_qaoa)

    p = add_sub("adiabatic", help="adiabatic evolution to a target Hamiltonian")
    p.add_argument("--hf", required=True)
    p.add_argument("--T", type=float, default=20.0)
    p.add_argument("--p", type=int, default=200)
    p.set_defaults(func=_cmd_adiabatic)

    p = add_sub("hhl", help="linear-system solver")
    p.add_argument("--eigs", default="0.25,0.75")
    p.add_argument("--basis", choices=("h", "i"), default="h")
    p.add_argument("--b-label", type=int, default=0)
    p.add_argument("--clock", type=int, default=2)
    p.add_argument("--c-const", type=float, default=None)
    p.set_defaults(func=_cmd_hhl)

    p = add_sub("vqls", help="variational linear solver (1-qubit demo)")
    p.add_argument("--eigs", default="0.25,0.75")
    p.add_argument("--basis", choices=("h", "i"), default="h")
    p.add_argument("--b-label", type=int, default=0)
    p.add_argument("--budget", type=int, default=400)
    p.set_defaults(func=_cmd_vqls)

    p = add_sub("fermion-encode", help="map ladder operators to Pauli sums")
    p.add_argument("--modes", required=True, help="e.g. '1^,0' for a1+ a0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=fm.ENCODINGS, default="jordan_wigner")
    p.set_defaults(func=_cmd_fermion_encode)

    p = add_sub("mitigate", help="measurement-error mitigation")
    p.add_argument("--m-file", required=True)
    p.add_argument("--probs", required=True)
    p.add_argument("--correct", action="store_true")
    p.set_defaults(func=_cmd_mitigate)

    p = add_sub("circuit-run", help="run a circuit text file")
    p.add_argument("--file", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--initial")
    p.set_defaults(func=_cmd_circuit_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except (InconclusiveError, PromiseViolationError) as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__},
                         sort_keys=True))
        return 1
    except (ArgumentError, NotInvertibleError, QalgError, ValueError) as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__},
                         sort_keys=True), file=sys.stderr)
        return 2
    _emit(args, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
