"""Kernel backend selection and capacity limits.

Two interchangeable gate-application backends exist:

* ``numba`` -- JIT-compiled loops (:mod:`qalg._kernels_numba`), the default
  when numba imports cleanly.
* ``numpy`` -- pure vectorized fallback (:mod:`qalg._kernels_numpy`).

The environment variable ``QALG_BACKEND`` (``numba``, ``numpy`` or ``auto``)
picks the backend at import time; :func:`set_backend` overrides it at runtime
(used by tests and the benchmark). Both backends satisfy the same contract:
in-place update of a complex128 amplitude array, deterministic output.

``QALG_MAX_QUBITS`` lowers (never raises) the 24-qubit register cap.
"""

from __future__ import annotations

import os

from .errors import ArgumentError, CapacityError

HARD_MAX_QUBITS = 24

_backend_name = None
_kernels = None


def _load(name: str):
    if name == "numpy":
        from . import _kernels_numpy as mod
        return "numpy", mod
    if name == "numba":
        from . import _kernels_numba as mod
        return "numba", mod
    if name == "auto":
        try:
            from . import _kernels_numba as mod
            return "numba", mod
        except ImportError:
            from . import _kernels_numpy as mod
            return "numpy", mod
    raise ArgumentError(f"unknown backend {name!r}; expected numba, numpy or auto")


def get_backend():
    """Return the active kernel module, loading it on first use."""
    global _backend_name, _kernels
    if _kernels is None:
        requested = os.environ.get("QALG_BACKEND", "auto").strip().lower()
        _backend_name, _kernels = _load(requested)
    return _kernels


def backend_name() -> str:
    get_backend()
    return _backend_name


def set_backend(name: str) -> str:
    """Force a backend by name; returns the name actually loaded."""
    global _backend_name, _kernels
    _backend_name, _kernels = _load(name.strip().lower())
    return _backend_name


def max_qubits() -> int:
    raw = os.environ.get("QALG_MAX_QUBITS")
    if raw is None:
        return HARD_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ArgumentError(f"QALG_MAX_QUBITS must be an integer, got {raw!r}") from exc
    return min(value, HARD_MAX_QUBITS)


def check_capacity(n_qubits: int) -> int:
    """Reject registers above the cap; returns n_qubits unchanged."""
    cap = max_qubits()
    if n_qubits < 1:
        raise ArgumentError(f"need at least one qubit, got {n_qubits}")
    if n_qubits > cap:
        raise CapacityError(f"{n_qubits} qubits exceeds the cap of {cap}")
    return n_qubits
