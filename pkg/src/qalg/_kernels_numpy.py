"""Pure-numpy gate kernels (fallback backend).

Index convention: qubit ``q`` of an ``n``-qubit register owns bit position
``n - 1 - q`` of the flat amplitude index (qubit 0 is the most significant
bit). Each kernel mutates ``amps`` in place.

Arguments shared by the kernels:

* ``offs``   -- int64 array of length ``2**k`` mapping a gate row/column index
  to its amplitude-index offset (target bits spread to their positions).
* ``cmask``/``cval`` -- control bit mask and the required bit values.
* ``tmask``  -- OR of all target bit positions.
"""

from __future__ import annotations

import numpy as np


def _bases(n_amps: int, tmask: int, cmask: int, cval: int) -> np.ndarray:
    idx = np.arange(n_amps, dtype=np.int64)
    sel = (idx & tmask) == 0
    if cmask:
        sel &= (idx & cmask) == cval
    return idx[sel]


def apply_dense(amps, gate, offs, tmask, cmask, cval):
    bases = _bases(amps.size, tmask, cmask, cval)
    if bases.size == 0:
        return
    cells = bases[:, None] + offs[None, :]
    amps[cells] = amps[cells] @ gate.T


def apply_diag(amps, phases, offs, tmask, cmask, cval):
    bases = _bases(amps.size, tmask, cmask, cval)
    if bases.size == 0:
        return
    if offs.size == 1:
        amps[bases] *= phases[0]
        return
    cells = bases[:, None] + offs[None, :]
    amps[cells] = amps[cells] * phases[None, :]
