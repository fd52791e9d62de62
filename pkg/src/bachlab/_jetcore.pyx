# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled jet multiplication kernel (NumPy fallback: `_jetcore_py`).

Both backends accumulate the product terms in the identical order
(strict pairs i < j with the symmetric two-term contribution, then the
diagonal slots), so their results agree bitwise; see `_kernels` for
selection.  The symmetric pair term also makes multiplication exactly
commutative in floating point.
"""

BACKEND_NAME = "c"


def mul_into(double[::1] a, double[::1] b, double[::1] out,
             int[::1] pi, int[::1] pj, int[::1] pk,
             int[::1] di, int[::1] dk, all_k=None):
    """Accumulate the truncated symmetric product of a, b into out."""
    cdef Py_ssize_t t
    cdef Py_ssize_t npairs = pi.shape[0]
    cdef Py_ssize_t ndiag = di.shape[0]
    for t in range(npairs):
        out[pk[t]] += a[pi[t]] * b[pj[t]] + a[pj[t]] * b[pi[t]]
    for t in range(ndiag):
        out[dk[t]] += a[di[t]] * b[di[t]]
