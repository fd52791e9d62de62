"""NumPy fallback for the jet multiplication kernel.

`np.bincount` accumulates weights in input order; feeding it the strict
pairs followed by the diagonal terms reproduces the compiled kernel's
accumulation order exactly, so both backends are bitwise identical.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def mul_into(a, b, out, pi, pj, pk, di, dk, all_k):
    """Accumulate the truncated symmetric product of a, b into out.

    out must be zero-initialized; the index arrays come from
    `_jettables.JetTables` (strict pairs i < j, then diagonal slots).
    """
    weights = np.concatenate((a[pi] * b[pj] + a[pj] * b[pi], a[di] * b[di]))
    out += np.bincount(all_k, weights=weights, minlength=out.shape[0])
