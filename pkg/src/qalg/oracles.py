"""Black-box constructors: bit oracles from truth tables, phase oracles from
marked sets, an integer comparator, and modular-arithmetic gates.

Bit oracles use one mixed-polarity multi-controlled X per minterm (no logic
minimization), which keeps the emitted circuits self-inverse and easy to
audit. Modular multiplication compiles the permutation exactly; desk-scale
moduli only (N < 2^12).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit
from .decompose import gray_code_synthesize
from .errors import ArgumentError, NotInvertibleError, ValidationError
from .state import label_to_index


@dataclass
class TruthTable:
    """Total map from n_in-bit inputs to n_out-bit outputs."""

    n_in: int
    n_out: int
    rows: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        fixed = {}
        for key, val in self.rows.items():
            fixed[label_to_index(key, self.n_in)] = label_to_index(val, self.n_out)
        self.rows = fixed
        if len(self.rows) != (1 << self.n_in):
            raise ValidationError(
                f"truth table needs {1 << self.n_in} rows, got {len(self.rows)}"
            )

    @classmethod
    def from_function(cls, f, n_in: int, n_out: int) -> "TruthTable":
        return cls(n_in, n_out, {x: f(x) for x in range(1 << n_in)})

    def __call__(self, x: int) -> int:
        return self.rows[x]


def load_truth_table(path) -> TruthTable:
    """Text file of ``input output`` binary pairs, one per line, '#' comments."""
    rows: dict[str, str] = {}
    n_in = n_out = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ArgumentError(f"line {lineno}: expected 'input output'")
            if n_in is None:
                n_in, n_out = len(parts[0]), len(parts[1])
            rows[parts[0]] = parts[1]
    if n_in is None:
        raise ArgumentError("empty truth-table file")
    return TruthTable(n_in, n_out, rows)


@dataclass(frozen=True)
class MarkedSet:
    """Subset of n-bit basis labels."""

    n: int
    marked: frozenset[int]

    def __init__(self, n: int, marked):
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self, "marked", frozenset(label_to_index(w, n) for w in marked)
        )

    def __contains__(self, x: int) -> bool:
        return x in self.marked

    def __len__(self) -> int:
        return len(self.marked)


def _pattern_controls(x: int, n: int, skip=()):
    return tuple(
        (q, (x >> (n - 1 - q)) & 1) for q in range(n) if q not in skip
    )


def bit_oracle(table: TruthTable) -> Circuit:
    """|x>|b>  ->  |x>|b XOR f(x)> on n_in + n_out qubits (inputs first)."""
    n_in, n_out = table.n_in, table.n_out
    circ = Circuit(n_in + n_out)
    for x in range(1 << n_in):
        fx = table(x)
        for j in range(n_out):
            if (fx >> (n_out - 1 - j)) & 1:
                circ.add("x", (n_in + j,), controls=_pattern_controls(x, n_in))
    return circ


def phase_oracle(marked: MarkedSet) -> Circuit:
    """|x> -> (-1)^[x in marked] |x>, ancilla-free.

    Each marked label becomes one multi-controlled Z; a last-qubit 0 bit is
    handled by X conjugation so the emitted gates stay in the text-format
    catalog.
    """
    n = marked.n
    circ = Circuit(n)
    for w in sorted(marked.marked):
        if n == 1:
            if w == 1:
                circ.z(0)
            else:
                circ.x(0)
                circ.z(0)
                circ.x(0)
            continue
        controls = _pattern_controls(w, n, skip=(n - 1,))
        if w & 1:
            circ.add("z", (n - 1,), controls=controls)
        else:
            circ.x(n - 1)
            circ.add("z", (n - 1,), controls=controls)
            circ.x(n - 1)
    return circ


def phase_oracle_matrix(marked: MarkedSet) -> np.ndarray:
    """Reference diagonal: I - 2 sum_w |w><w|."""
    diag = np.ones(1 << marked.n, dtype=complex)
    for w in marked.marked:
        diag[w] = -1.0
    return np.diag(diag)


def comparator(n: int) -> Circuit:
    """COMP|x>|y>|0> = |x>|y>|x > y>: flag flips iff integer(x) > integer(y).

    Equal inputs leave the flag at 0 (grouped with x < y). Registers are
    ``x`` on qubits 0..n-1, ``y`` on n..2n-1, flag on 2n.
    """
    if n < 1:
        raise ArgumentError("comparator needs n >= 1")
    circ = Circuit(2 * n + 1)
    for x in range(1 << n):
        for y in range(1 << n):
            if x > y:
                controls = _pattern_controls(x, n) + tuple(
                    (n + q, (y >> (n - 1 - q)) & 1) for q in range(n)
                )
                circ.add("x", (2 * n,), controls=controls)
    return circ


def _perm_transpositions(perm: dict[int, int]) -> list[tuple[int, int]]:
    """Transpositions whose left-to-right application composes to perm."""
    seen = set()
    swaps: list[tuple[int, int]] = []
    for start in sorted(perm):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        cur = perm[start]
        while cur != start:
            cycle.append(cur)
            cur = perm[cur]
        seen.update(cycle)
        for node in cycle[1:]:
            swaps.append((cycle[0], node))
    return swaps


def permutation_circuit(perm: dict[int, int], n: int) -> Circuit:
    """Exact circuit for a basis permutation via two-level X factors."""
    circ = Circuit(n)
    x_block = np.array([[0, 1], [1, 0]], dtype=complex)
    for u, v in _perm_transpositions(perm):
        two_level = np.eye(1 << n, dtype=complex)
        two_level[u, u] = two_level[v, v] = 0.0
        two_level[u, v] = two_level[v, u] = 1.0
        circ.extend(gray_code_synthesize(two_level, u, v, n))
    return circ


def modmul_circuit(a: int, N: int, width: int) -> Circuit:
    """V|y> = |a*y mod N> for y < N; basis states y >= N are fixed.

    For a = 2 and N = 2^width - 1 the map is a cyclic bit shift and a swap
    ladder is emitted (the cheap special case); any other coprime pair is
    compiled exactly as a permutation.
    """
    if N < 2 or N > (1 << width) or N >= (1 << 12):
        raise ArgumentError(f"modulus {N} out of range for width {width}")
    a %= N
    if math.gcd(a, N) != 1:
        raise NotInvertibleError(f"gcd({a}, {N}) != 1; multiplication is not invertible")
    if a == 2 and N == (1 << width) - 1:
        circ = Circuit(width)
        for q in range(width - 1):
            circ.swap(q, q + 1)
        return circ
    perm = {y: (a * y) % N if y < N else y for y in range(1 << width)}
    return permutation_circuit(perm, width)


def controlled_modexp(a: int, N: int, t: int, width: int) -> Circuit:
    """|x>|y> -> |x>|a^x * y mod N> with t exponent qubits (0..t-1) and a
    width-qubit work register; stage k applies modmul(a^(2^k)) controlled by
    the exponent bit of weight 2^k."""
    if math.gcd(a, N) != 1:
        raise NotInvertibleError(f"gcd({a}, {N}) != 1")
    circ = Circuit(t + width)
    mapping = {q: t + q for q in range(width)}
    for k in range(t):
        ak = pow(a, 1 << k, N)
        stage = modmul_circuit(ak, N, width).remapped(mapping, t + width)
        circ.extend(stage.controlled(((t - 1 - k, 1),)))
    return circ
