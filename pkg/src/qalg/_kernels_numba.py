"""Numba-JIT gate kernels (default backend).

Same contract and argument layout as :mod:`qalg._kernels_numpy`; see there
for the index convention. Loops run sequentially so repeated runs are
bit-identical.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def apply_dense(amps, gate, offs, tmask, cmask, cval):
    m = offs.size
    scratch = np.empty(m, dtype=np.complex128)
    for i in range(amps.size):
        if (i & tmask) == 0 and (i & cmask) == cval:
            for j in range(m):
                scratch[j] = amps[i + offs[j]]
            for r in range(m):
                acc = 0.0 + 0.0j
                for c in range(m):
                    acc += gate[r, c] * scratch[c]
                amps[i + offs[r]] = acc


@njit(cache=True)
def apply_diag(amps, phases, offs, tmask, cmask, cval):
    m = offs.size
    for i in range(amps.size):
        if (i & tmask) == 0 and (i & cmask) == cval:
            for j in range(m):
                amps[i + offs[j]] = amps[i + offs[j]] * phases[j]
