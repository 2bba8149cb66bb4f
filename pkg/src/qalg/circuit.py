"""Gate catalog, circuit IR and circuit execution.

An :class:`Instruction` names a gate kind, its real parameters, target
qubits, and a list of ``(qubit, polarity)`` controls (polarity 1 = trigger
on ``|1>``, 0 = trigger on ``|0>``). A :class:`Circuit` is an ordered list
of instructions over a fixed register width; running it applies the
instructions left to right through :mod:`qalg.state`.

The ``gphase`` kind multiplies the (control-selected) state by
``exp(i*alpha)``; it has no targets and exists so reflections like
``2|0><0| - I`` compose exactly, including when the whole circuit is later
wrapped in extra controls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .backend import check_capacity
from .errors import ArgumentError, CapacityError
from .linalg import dagger, require_unitary
from . import state as st

SQ2 = 1.0 / math.sqrt(2.0)

_FIXED = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "h": np.array([[SQ2, SQ2], [SQ2, -SQ2]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "t": np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
    "swap": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}

_PARAMETRIC_ARITY = {"p": 1, "rx": 1, "ry": 1, "rz": 1, "gphase": 1}
_TARGET_COUNT = {"i": 1, "x": 1, "y": 1, "z": 1, "h": 1, "s": 1, "t": 1,
                 "p": 1, "rx": 1, "ry": 1, "rz": 1, "swap": 2, "gphase": 0}

GATE_KINDS = tuple(sorted(_TARGET_COUNT)) + ("unitary",)


def gate_matrix(kind: str, params=()) -> np.ndarray:
    """Catalog matrix for a gate kind.

    ``rz(eta) = diag(e^{-i eta/2}, e^{i eta/2})`` and ``p(alpha) =
    diag(1, e^{i alpha})``; rotations follow ``R_a(eta) = exp(-i eta A / 2)``.
    """
    kind = kind.lower()
    params = tuple(float(x) for x in params)
    want = _PARAMETRIC_ARITY.get(kind, 0)
    if len(params) != want:
        raise ArgumentError(f"gate {kind!r} takes {want} parameter(s), got {len(params)}")
    if kind in _FIXED:
        return _FIXED[kind].copy()
    if kind == "p":
        return np.array([[1, 0], [0, np.exp(1j * params[0])]], dtype=complex)
    if kind == "rx":
        c, s = math.cos(params[0] / 2), math.sin(params[0] / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind == "ry":
        c, s = math.cos(params[0] / 2), math.sin(params[0] / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind == "rz":
        return np.array(
            [[np.exp(-0.5j * params[0]), 0], [0, np.exp(0.5j * params[0])]], dtype=complex
        )
    if kind == "gphase":
        return np.array([[np.exp(1j * params[0])]], dtype=complex)
    raise ArgumentError(f"unknown gate kind {kind!r}")


@dataclass(frozen=True)
class Instruction:
    kind: str
    targets: tuple[int, ...] = ()
    controls: tuple[tuple[int, int], ...] = ()
    params: tuple[float, ...] = ()
    matrix: np.ndarray | None = None

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        object.__setattr__(
            self, "controls", tuple((int(q), int(v)) for q, v in self.controls)
        )
        object.__setattr__(self, "params", tuple(float(x) for x in self.params))
        if kind == "unitary":
            if self.matrix is None:
                raise ArgumentError("unitary instruction needs a matrix")
            m = require_unitary(self.matrix, what="custom gate")
            if len(self.targets) > 3:
                raise ArgumentError(
                    "custom unitaries are limited to 3 targets; decompose larger ones"
                )
            if m.shape[0] != 1 << len(self.targets):
                raise ArgumentError(
                    f"matrix dim {m.shape[0]} vs {len(self.targets)} targets"
                )
            object.__setattr__(self, "matrix", m)
        else:
            if self.matrix is not None:
                raise ArgumentError("only 'unitary' instructions carry a matrix")
            if kind not in _TARGET_COUNT:
                raise ArgumentError(f"unknown gate kind {kind!r}")
            if len(self.targets) != _TARGET_COUNT[kind]:
                raise ArgumentError(
                    f"gate {kind!r} wants {_TARGET_COUNT[kind]} targets, got {self.targets}"
                )
            gate_matrix(kind, self.params)  # arity check
        overlap = set(self.targets) & {q for q, _ in self.controls}
        if overlap:
            raise ArgumentError(f"qubits {sorted(overlap)} are both target and control")

    def operator(self) -> np.ndarray:
        return self.matrix if self.kind == "unitary" else gate_matrix(self.kind, self.params)

    def daggered(self) -> "Instruction":
        kind, params = self.kind, self.params
        if kind == "unitary":
            return replace(self, matrix=dagger(self.matrix))
        if kind == "s":
            return Instruction("p", self.targets, self.controls, (-math.pi / 2,))
        if kind == "t":
            return Instruction("p", self.targets, self.controls, (-math.pi / 4,))
        if kind in ("p", "rx", "ry", "rz", "gphase"):
            return replace(self, params=(-params[0],))
        return self  # x, y, z, h, i, swap are self-inverse

    def with_extra_controls(self, extra) -> "Instruction":
        return replace(self, controls=self.controls + tuple(extra))

    def remapped(self, mapping) -> "Instruction":
        return replace(
            self,
            targets=tuple(mapping[q] for q in self.targets),
            controls=tuple((mapping[q], v) for q, v in self.controls),
        )


@dataclass
class Circuit:
    """Ordered gate program over a fixed number of qubits."""

    n_qubits: int
    instructions: list[Instruction] = field(default_factory=list)

    def __post_init__(self):
        check_capacity(self.n_qubits)
        for ins in self.instructions:
            self._check(ins)

    def _check(self, ins: Instruction) -> None:
        for q in ins.targets + tuple(q for q, _ in ins.controls):
            if not 0 <= q < self.n_qubits:
                raise ArgumentError(
                    f"qubit {q} out of range for a {self.n_qubits}-qubit circuit"
                )

    def add(self, kind, targets=(), controls=(), params=(), matrix=None) -> "Circuit":
        if isinstance(targets, (int, np.integer)):
            targets = (int(targets),)
        if isinstance(params, (int, float)):
            params = (float(params),)
        ins = Instruction(kind, tuple(targets), tuple(controls), tuple(params), matrix)
        self._check(ins)
        self.instructions.append(ins)
        return self

    # -- fluent helpers (used heavily by the algorithm modules) ------------
    def i(self, q):
        return self.add("i", (q,))

    def x(self, q):
        return self.add("x", (q,))

    def y(self, q):
        return self.add("y", (q,))

    def z(self, q):
        return self.add("z", (q,))

    def h(self, q):
        return self.add("h", (q,))

    def s(self, q):
        return self.add("s", (q,))

    def t(self, q):
        return self.add("t", (q,))

    def p(self, q, alpha):
        return self.add("p", (q,), params=(alpha,))

    def rx(self, q, eta):
        return self.add("rx", (q,), params=(eta,))

    def ry(self, q, eta):
        return self.add("ry", (q,), params=(eta,))

    def rz(self, q, eta):
        return self.add("rz", (q,), params=(eta,))

    def swap(self, a, b):
        return self.add("swap", (a, b))

    def cx(self, c, t):
        return self.add("x", (t,), controls=((c, 1),))

    def cz(self, c, t):
        return self.add("z", (t,), controls=((c, 1),))

    def cp(self, c, t, alpha):
        return self.add("p", (t,), controls=((c, 1),), params=(alpha,))

    def ccx(self, c1, c2, t):
        return self.add("x", (t,), controls=((c1, 1), (c2, 1)))

    def mcx(self, controls, t):
        return self.add("x", (t,), controls=tuple(controls))

    def gphase(self, alpha, controls=()):
        return self.add("gphase", (), controls=tuple(controls), params=(alpha,))

    def unitary(self, targets, matrix, controls=()):
        return self.add("unitary", tuple(targets), controls=tuple(controls), matrix=matrix)

    def extend(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ArgumentError("extend requires equal register widths")
        self.instructions.extend(other.instructions)
        return self

    def controlled(self, extra_controls) -> "Circuit":
        """Same register: every instruction gains the given controls."""
        out = Circuit(self.n_qubits)
        extra = tuple(extra_controls)
        for ins in self.instructions:
            out.instructions.append(ins.with_extra_controls(extra))
        return out

    def remapped(self, mapping: dict[int, int], n_qubits: int) -> "Circuit":
        out = Circuit(n_qubits)
        for ins in self.instructions:
            out.instructions.append(ins.remapped(mapping))
            out._check(out.instructions[-1])
        return out

    def repeated(self, times: int) -> "Circuit":
        out = Circuit(self.n_qubits)
        for _ in range(times):
            out.instructions.extend(self.instructions)
        return out


def run(circuit: Circuit, initial=None) -> np.ndarray:
    """Execute the circuit on a state or basis label (default ``|0...0>``)."""
    n = circuit.n_qubits
    if initial is None:
        amps = st.zero_state(n)
    elif isinstance(initial, np.ndarray) and initial.dtype == np.complex128 and initial.size == (1 << n):
        amps = st.validate_state(initial).copy()
    elif isinstance(initial, (str, int, np.integer)) or (
        hasattr(initial, "__len__") and len(initial) == n and not isinstance(initial, np.ndarray)
    ):
        amps = st.basis_state(initial, n)
    else:
        amps = st.validate_state(initial).copy()
    for ins in circuit.instructions:
        if ins.kind == "i":
            continue
        if ins.kind == "gphase":
            st.apply_phase_inplace(amps, np.exp(1j * ins.params[0]), ins.controls)
        else:
            st.apply_gate_inplace(amps, ins.operator(), ins.targets, ins.controls, checked=True)
    return amps


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense matrix of the circuit, by running all basis states (n <= 10)."""
    n = circuit.n_qubits
    if n > 10:
        raise CapacityError("full-matrix composition is limited to 10 qubits")
    dim = 1 << n
    out = np.empty((dim, dim), dtype=np.complex128)
    for col in range(dim):
        out[:, col] = run(circuit, col)
    return out


def inverse(circuit: Circuit) -> Circuit:
    """Reverse the instruction order and conjugate every gate."""
    out = Circuit(circuit.n_qubits)
    for ins in reversed(circuit.instructions):
        out.instructions.append(ins.daggered())
    return out


# ---------------------------------------------------------------------------
# Text format: one instruction per line, lowercase mnemonic, controls as
# 'c'/'nc' prefixes, angles in radians appended last, '#' comments.
#   h 0 | rz 1 0.7853981634 | cx 0 1 | ccx 0 1 2 | ncx 0 1 | swap 2 3
# ---------------------------------------------------------------------------

_BASE_MNEMONICS = ("swap", "gphase", "rx", "ry", "rz", "i", "x", "y", "z", "h", "s", "t", "p")


def _split_mnemonic(word: str) -> tuple[list[int], str]:
    """Strip 'c'/'nc' prefixes; returns (polarities, base kind)."""
    pols: list[int] = []
    rest = word
    while True:
        for base in _BASE_MNEMONICS:
            if rest == base:
                return pols, base
        if rest.startswith("nc"):
            pols.append(0)
            rest = rest[2:]
        elif rest.startswith("c"):
            pols.append(1)
            rest = rest[1:]
        else:
            raise ArgumentError(f"unknown mnemonic {word!r}")


def parse_circuit(text: str, n_qubits: int | None = None) -> Circuit:
    """Parse the text format; infers the register width when not given."""
    parsed = []
    max_q = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        pols, base = _split_mnemonic(words[0])
        n_params = _PARAMETRIC_ARITY.get(base, 0)
        n_targets = _TARGET_COUNT[base]
        want = len(pols) + n_targets + n_params
        if len(words) - 1 != want:
            raise ArgumentError(
                f"line {lineno}: {words[0]!r} expects {want} operands, got {len(words) - 1}"
            )
        qubits = [int(w) for w in words[1 : 1 + len(pols) + n_targets]]
        params = tuple(float(w) for w in words[1 + len(pols) + n_targets :])
        controls = tuple(zip(qubits[: len(pols)], pols))
        targets = tuple(qubits[len(pols) :])
        parsed.append(Instruction(base, targets, controls, params))
        max_q = max([max_q, *qubits]) if qubits else max_q
    if n_qubits is None:
        n_qubits = max_q + 1 if max_q >= 0 else 1
    return Circuit(n_qubits, parsed)


def format_circuit(circuit: Circuit) -> str:
    """Emit the text format; floats use shortest round-trip repr, so a
    parse/format cycle is bit-exact."""
    lines = []
    for ins in circuit.instructions:
        if ins.kind == "unitary":
            raise ArgumentError(
                "custom unitary gates have no text form; compile them first"
            )
        word = "".join("c" if v else "nc" for _, v in ins.controls) + ins.kind
        fields = [word]
        fields += [str(q) for q, _ in ins.controls]
        fields += [str(q) for q in ins.targets]
        fields += [repr(x) for x in ins.params]
        lines.append(" ".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


def load_circuit(path, n_qubits: int | None = None) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_circuit(fh.read(), n_qubits)
