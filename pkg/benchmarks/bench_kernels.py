#!/usr/bin/env python3
"""Side-by-side benchmark: numba JIT kernels vs the pure-numpy fallback.

Times a QFT circuit plus a layer of random two-qubit gates at several
register widths and validates that both backends produce the same state.

    python3 benchmarks/bench_kernels.py [--max-qubits 20] [--repeats 3]
"""

import argparse
import time

import numpy as np

from qalg import circuit as qc
from qalg.backend import set_backend
from qalg.fourier import qft_circuit
from qalg.linalg import random_unitary


def build_workload(n: int, rng) -> qc.Circuit:
    circ = qc.Circuit(n)
    circ.extend(qft_circuit(n))
    for q in range(0, n - 1, 2):
        circ.unitary((q, q + 1), random_unitary(4, rng))
    for q in range(n):
        circ.add("x", (q,), controls=(((q + 1) % n, 1),))
    return circ


def time_run(circ: qc.Circuit, repeats: int) -> tuple[float, np.ndarray]:
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = qc.run(circ)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-qubits", type=int, default=18)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    sizes = [n for n in (8, 12, 14, 16, 18, 20) if n <= args.max_qubits]

    # warm up the JIT so compilation is not counted
    set_backend("numba")
    qc.run(build_workload(4, np.random.default_rng(1)))

    print(f"{'n':>4} {'gates':>7} {'numpy (s)':>11} {'numba (s)':>11} "
          f"{'speedup':>8} {'max |diff|':>11}")
    print("-" * 58)
    for n in sizes:
        circ = build_workload(n, rng)
        set_backend("numpy")
        t_np, out_np = time_run(circ, args.repeats)
        set_backend("numba")
        t_nb, out_nb = time_run(circ, args.repeats)
        diff = float(np.max(np.abs(out_np - out_nb)))
        speedup = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{n:>4} {len(circ.instructions):>7} {t_np:>11.4f} {t_nb:>11.4f} "
              f"{speedup:>7.1f}x {diff:>11.2e}")
        assert diff < 1e-10, "backends disagree"
    set_backend("auto")


if __name__ == "__main__":
    main()
