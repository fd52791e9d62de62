"""Pointwise curvature pipeline on truncated jets.

A `CurvatureFrame` holds every curvature quantity of a chart metric at
one point, computed by exact jet arithmetic with explicit order
bookkeeping.  Starting from metric jets of order 4 the pipeline loses
one order per derivative:

    g (4) -> Gamma (3) -> Riemann, Ricci, scalar, Schouten, Weyl (2)
          -> grad S, cov Ricci, Cotton (1)
          -> Hess S, Lap S, Lap Ricci, cov Cotton, Bach (0).

Conventions (fixed throughout the package):

    R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
              + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
    Ric_jk  = R^i_ijk          (round unit 2-sphere has Ric = +g)
    R_lijk  = g_lm R^m_ijk     (antisymmetric in (i,j) and in (l,k))
    P       = (Ric - S g / (2(n-1))) / (n-2)
    W_lijk  = R_lijk - (P_li g_jk - P_lj g_ik + g_li P_jk - g_lj P_ik)
    C_kij   = cov_k P_ij - cov_i P_kj
    B_ij    = g^{km} cov_m C_kij + P^{ab} W_baij      (n = 4)

Quantities one derivative beyond the jet budget (div B, grad Lap S) are
assembled by fourth-order finite differences over pipeline values; see
`bach_divergence` and `grad_lap_scalar`.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from . import exprs
from .charts import Chart, Manifold
from .jets import Jet

BASE_ORDER = 4


class CurvatureError(ValueError):
    """Requested quantity is undefined for this dimension or order."""


def trunc(t, order: int):
    """Truncate a jet or an object-array of jets to the given order."""
    if isinstance(t, Jet):
        return t if t.order == order else t.truncated(order)
    out = np.empty(t.shape, dtype=object)
    for idx in np.ndindex(t.shape):
        j = t[idx]
        out[idx] = j if j.order == order else j.truncated(order)
    return out


def values(t) -> np.ndarray | float:
    """Zeroth-order values of a jet or an object-array of jets."""
    if isinstance(t, Jet):
        return t.value
    out = np.empty(t.shape, dtype=float)
    for idx in np.ndindex(t.shape):
        out[idx] = t[idx].value
    return out


def _jet_matmul(A, B):
    n, m = A.shape[0], B.shape[1]
    k = A.shape[1]
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            acc = A[i, 0] * B[0, j]
            for l in range(1, k):
                acc = acc + A[i, l] * B[l, j]
            out[i, j] = acc
    return out


class CurvatureFrame:
    """Curvature of a chart metric at one interior point."""

    def __init__(self, chart: Chart, point: Sequence[float],
                 order: int = BASE_ORDER):
        self.chart = chart
        self.point = tuple(float(x) for x in point)
        if len(self.point) != chart.dim:
            raise CurvatureError(
                f"point has {len(self.point)} coordinates, chart "
                f"{chart.name!r} has {chart.dim}")
        self.n = chart.dim
        self.order = order

    # -- level 4: metric ----------------------------------------------
    @cached_property
    def g(self):
        n = self.n
        raw = self.chart.metric_jets(self.point, order=self.order)
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = raw[i][j]
        return out

    @cached_property
    def ginv(self):
        """Inverse metric jets via Newton iteration X <- X(2I - GX)."""
        n = self.n
        g0 = values(self.g)
        try:
            x0 = np.linalg.inv(g0)
        except np.linalg.LinAlgError:
            raise CurvatureError(
                f"metric of {self.chart.name!r} is singular at "
                f"{self.point}") from None
        X = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                X[i, j] = Jet.constant(x0[i, j], n, self.order)
        two_i = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                two_i[i, j] = Jet.constant(2.0 if i == j else 0.0, n,
                                           self.order)
        for _ in range(3):  # order of accuracy: 0 -> 1 -> 3 -> 7 >= 4
            X = _jet_matmul(X, two_i - _jet_matmul(self.g, X))
        return X

    # -- level 3: connection --------------------------------------------
    @cached_property
    def gamma(self):
        """Christoffel symbols, gamma[k, i, j] = Gamma^k_ij, order 3."""
        n = self.n
        dg = np.empty((n, n, n), dtype=object)  # dg[l, i, j] = d_l g_ij
        for l in range(n):
            for i in range(n):
                for j in range(i, n):
                    d = self.g[i, j].derivative(l)
                    dg[l, i, j] = d
                    dg[l, j, i] = d
        gi = trunc(self.ginv, self.order - 1)
        out = np.empty((n, n, n), dtype=object)
        for k in range(n):
            for i in range(n):
                for j in range(i, n):
                    acc = None
                    for l in range(n):
                        term = gi[k, l] * (dg[i, l, j] + dg[j, l, i]
                                           - dg[l, i, j])
                        acc = term if acc is None else acc + term
                    half = acc * 0.5
                    out[k, i, j] = half
                    out[k, j, i] = half
        return out

    # -- level 2: curvature ---------------------------------------------
    @cached_property
    def riemann_up(self):
        """riemann_up[l, i, j, k] = R^l_ijk, order 2."""
        n = self.n
        r = self.order - 2
        dgam = np.empty((n, n, n, n), dtype=object)
        for a in range(n):
            for k in range(n):
                for i in range(n):
                    for j in range(i, n):
                        d = self.gamma[k, i, j].derivative(a)
                        dgam[a, k, i, j] = d
                        dgam[a, k, j, i] = d
        gam = trunc(self.gamma, r)
        zero = Jet.constant(0.0, n, r)
        out = np.empty((n, n, n, n), dtype=object)
        for l in range(n):
            for i in range(n):
                out[l, i, i, :] = zero
                for j in range(i + 1, n):
                    for k in range(n):
                        acc = dgam[i, l, j, k] - dgam[j, l, i, k]
                        for m in range(n):
                            acc = acc + gam[l, i, m] * gam[m, j, k]
                            acc = acc - gam[l, j, m] * gam[m, i, k]
                        out[l, i, j, k] = acc
                        out[l, j, i, k] = -acc
        return out

    @cached_property
    def riemann_lo(self):
        """riemann_lo[l, i, j, k] = g_lm R^m_ijk, order 2."""
        n = self.n
        g2 = trunc(self.g, self.order - 2)
        out = np.empty((n, n, n, n), dtype=object)
        for l in range(n):
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        acc = g2[l, 0] * self.riemann_up[0, i, j, k]
                        for m in range(1, n):
                            acc = acc + g2[l, m] * self.riemann_up[m, i, j, k]
                        out[l, i, j, k] = acc
        return out

    @cached_property
    def ricci(self):
        """ricci[j, k] = R^i_ijk, order 2."""
        n = self.n
        out = np.empty((n, n), dtype=object)
        for j in range(n):
            for k in range(n):
                acc = self.riemann_up[0, 0, j, k]
                for i in range(1, n):
                    acc = acc + self.riemann_up[i, i, j, k]
                out[j, k] = acc
        return out

    @cached_property
    def ginv2(self):
        return trunc(self.ginv, self.order - 2)

    @cached_property
    def scalar(self) -> Jet:
        """Scalar curvature, order 2."""
        n = self.n
        acc = None
        for j in range(n):
            for k in range(n):
                term = self.ginv2[j, k] * self.ricci[j, k]
                acc = term if acc is None else acc + term
        return acc

    @cached_property
    def ricci_mixed(self):
        """ricci_mixed[i, j] = g^{ia} Ric_aj, order 2."""
        return _jet_matmul(self.ginv2, self.ricci)

    @cached_property
    def ricci_sq(self):
        """(Ric^2)_ij = Ric_ia g^{ab} Ric_bj, order 2."""
        return _jet_matmul(self.ricci, self.ricci_mixed)

    @cached_property
    def ricci_norm2(self) -> Jet:
        """|Ric|^2 = Ric_ij Ric^{ij}, order 2."""
        n = self.n
        acc = None
        for i in range(n):
            for j in range(n):
                term = self.ricci_mixed[i, j] * self.ricci_mixed[j, i]
                acc = term if acc is None else acc + term
        return acc

    @cached_property
    def einstein_residual(self):
        """Trace-free Ricci: Ric - (S/n) g, order 2."""
        n = self.n
        g2 = trunc(self.g, self.order - 2)
        s_over_n = self.scalar * (1.0 / n)
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = self.ricci[i, j] - s_over_n * g2[i, j]
        return out

    @cached_property
    def schouten(self):
        """P = (Ric - S g / (2(n-1))) / (n-2), order 2; needs n >= 3."""
        n = self.n
        if n < 3:
            raise CurvatureError(
                "the Schouten tensor is undefined for n < 3")
        g2 = trunc(self.g, self.order - 2)
        s_term = self.scalar * (1.0 / (2 * (n - 1)))
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = (self.ricci[i, j] - s_term * g2[i, j]) \
                    * (1.0 / (n - 2))
        return out

    @cached_property
    def weyl_lo(self):
        """W_lijk = R_lijk - (P ? g)_lijk (Kulkarni-Nomizu), order 2."""
        n = self.n
        P = self.schouten
        g2 = trunc(self.g, self.order - 2)
        out = np.empty((n, n, n, n), dtype=object)
        for l in range(n):
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        kn = (P[l, i] * g2[j, k] - P[l, j] * g2[i, k]
                              + g2[l, i] * P[j, k] - g2[l, j] * P[i, k])
                        out[l, i, j, k] = self.riemann_lo[l, i, j, k] - kn
        return out

    # -- covariant derivatives -------------------------------------------
    def cov_deriv(self, T):
        """Covariant derivative of an all-lower tensor of jets.

        Input: object array of rank r, every entry at one order m >= 1.
        Output: rank r + 1 at order m - 1, out[a, i1..ir] = (cov_a T)_i...
        """
        T = np.asarray(T, dtype=object)
        m = T.flat[0].order
        n = self.n
        gam = trunc(self.gamma, m - 1)
        Tm = trunc(T, m - 1)
        out = np.empty((n,) + T.shape, dtype=object)
        for a in range(n):
            for idx in np.ndindex(T.shape):
                acc = T[idx].derivative(a)
                for s in range(T.ndim):
                    i_s = idx[s]
                    for mm in range(n):
                        midx = idx[:s] + (mm,) + idx[s + 1:]
                        acc = acc - gam[mm, a, i_s] * Tm[midx]
                out[(a,) + idx] = acc
        return out

    @cached_property
    def cov_ricci(self):
        """cov_ricci[a, i, j] = (cov_a Ric)_ij, order 1."""
        return self.cov_deriv(self.ricci)

    @cached_property
    def cov_schouten(self):
        return self.cov_deriv(self.schouten)

    @cached_property
    def cotton(self):
        """cotton[k, i, j] = cov_k P_ij - cov_i P_kj, order 1."""
        n = self.n
        cp = self.cov_schouten
        out = np.empty((n, n, n), dtype=object)
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    out[k, i, j] = cp[k, i, j] - cp[i, k, j]
        return out

    @cached_property
    def lap_ricci(self):
        """Rough Laplacian g^{ab} cov_a cov_b Ric, order 0."""
        n = self.n
        cc = self.cov_deriv(self.cov_ricci)  # cc[b, a, i, j], order 0
        gi = trunc(self.ginv, 0)
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                acc = None
                for a in range(n):
                    for b in range(n):
                        term = gi[a, b] * cc[a, b, i, j]
                        acc = term if acc is None else acc + term
                out[i, j] = acc
        return out

    # -- scalar-curvature derivatives -------------------------------------
    @cached_property
    def grad_scalar_lo(self):
        """d S (lower index), order 1."""
        n = self.n
        out = np.empty(n, dtype=object)
        for i in range(n):
            out[i] = self.scalar.derivative(i)
        return out

    @cached_property
    def grad_scalar_up(self):
        """grad S (upper index), order 1."""
        n = self.n
        gi = trunc(self.ginv, self.order - 3)
        out = np.empty(n, dtype=object)
        for i in range(n):
            acc = gi[i, 0] * self.grad_scalar_lo[0]
            for j in range(1, n):
                acc = acc + gi[i, j] * self.grad_scalar_lo[j]
            out[i] = acc
        return out

    @cached_property
    def hess_scalar(self):
        """Hessian of S, order 0."""
        return self.hessian(self.scalar)

    @cached_property
    def lap_scalar(self) -> Jet:
        """Laplacian of S, order 0."""
        n = self.n
        gi = trunc(self.ginv, 0)
        acc = None
        for i in range(n):
            for j in range(n):
                term = gi[i, j] * self.hess_scalar[i, j]
                acc = term if acc is None else acc + term
        return acc

    # -- Bach -----------------------------------------------------------
    @cached_property
    def bach(self):
        """B_ij = g^{km} cov_m C_kij + P^{ab} W_baij, order 0; n = 4."""
        n = self.n
        if n != 4:
            raise CurvatureError(
                f"the Bach tensor is implemented for n = 4, got n = {n}")
        cov_c = self.cov_deriv(self.cotton)  # cov_c[m, k, i, j], order 0
        gi0 = trunc(self.ginv, 0)
        p0 = trunc(self.schouten, 0)
        w0 = trunc(self.weyl_lo, 0)
        p_up = _jet_matmul(_jet_matmul(gi0, p0), gi0)  # P^{ab}
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                acc = None
                for k in range(n):
                    for m in range(n):
                        term = gi0[k, m] * cov_c[m, k, i, j]
                        acc = term if acc is None else acc + term
                for a in range(n):
                    for b in range(n):
                        acc = acc + p_up[a, b] * w0[b, a, i, j]
                out[i, j] = acc
        return out

    # -- generic operators ------------------------------------------------
    def scalar_jet(self, text_or_expr, order: int | None = None) -> Jet:
        e = (self.chart.parse_field(text_or_expr)
             if isinstance(text_or_expr, str) else text_or_expr)
        return exprs.eval_jet(e, self.point, self.chart.coords,
                              self.chart.params,
                              order if order is not None else self.order)

    def vector_jets(self, components, order: int | None = None):
        """Upper-index vector field from per-coordinate expressions."""
        if len(components) != self.n:
            raise CurvatureError(
                f"vector field needs {self.n} components")
        out = np.empty(self.n, dtype=object)
        for i, c in enumerate(components):
            out[i] = self.scalar_jet(c, order)
        return out

    def gradient_vector(self, h: Jet):
        """grad h (upper index), order of h minus 1."""
        n = self.n
        gi = trunc(self.ginv, h.order - 1)
        dh = [h.derivative(i) for i in range(n)]
        out = np.empty(n, dtype=object)
        for i in range(n):
            acc = gi[i, 0] * dh[0]
            for j in range(1, n):
                acc = acc + gi[i, j] * dh[j]
            out[i] = acc
        return out

    def hessian(self, h: Jet):
        """(Hess h)_ij = d_i d_j h - Gamma^k_ij d_k h."""
        n = self.n
        if h.order < 2:
            raise CurvatureError("hessian needs a jet of order >= 2")
        dh = [h.derivative(i) for i in range(n)]
        gam = trunc(self.gamma, h.order - 2)
        dh2 = [d.truncated(h.order - 2) for d in dh]
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(i, n):
                acc = dh[i].derivative(j)
                for k in range(n):
                    acc = acc - gam[k, i, j] * dh2[k]
                out[i, j] = acc
                out[j, i] = acc
        return out

    def laplacian(self, h: Jet) -> Jet:
        n = self.n
        hs = self.hessian(h)
        gi = trunc(self.ginv, h.order - 2)
        acc = None
        for i in range(n):
            for j in range(n):
                term = gi[i, j] * hs[i, j]
                acc = term if acc is None else acc + term
        return acc

    def g_at(self, order: int):
        """The metric component jets truncated to the given order."""
        return trunc(self.g, order)

    def lie_metric(self, X):
        """(L_X g)_ij for an upper vector field X, one order below X."""
        n = self.n
        m = X[0].order - 1
        g1 = trunc(self.g, m)
        dg = np.empty((n, n, n), dtype=object)
        for l in range(n):
            for i in range(n):
                for j in range(i, n):
                    d = self.g[i, j].truncated(m + 1).derivative(l) \
                        if self.g[i, j].order > m else None
                    if d is None:
                        raise CurvatureError("metric order exhausted")
                    dg[l, i, j] = d
                    dg[l, j, i] = d
        Xm = trunc(X, m)
        dX = np.empty((n, n), dtype=object)  # dX[i, k] = d_i X^k
        for i in range(n):
            for k in range(n):
                dX[i, k] = X[k].derivative(i) if X[k].order == m + 1 \
                    else X[k].truncated(m + 1).derivative(i)
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(i, n):
                acc = None
                for k in range(n):
                    term = Xm[k] * dg[k, i, j] + g1[k, j] * dX[i, k] \
                        + g1[i, k] * dX[j, k]
                    acc = term if acc is None else acc + term
                out[i, j] = acc
                out[j, i] = acc
        return out

    def divergence_vector(self, X) -> Jet:
        """div X = d_i X^i + Gamma^i_im X^m, one order below X."""
        n = self.n
        m = X[0].order - 1
        gam = trunc(self.gamma, m)
        Xm = trunc(X, m)
        acc = None
        for i in range(n):
            term = X[i].derivative(i) if X[i].order == m + 1 \
                else X[i].truncated(m + 1).derivative(i)
            acc = term if acc is None else acc + term
        for i in range(n):
            for mm in range(n):
                acc = acc + gam[i, i, mm] * Xm[mm]
        return acc

    def divergence_oneform(self, al) -> Jet:
        """div of a lower-index field: g^{ij} cov_i al_j."""
        n = self.n
        cov = self.cov_deriv(al)
        gi = trunc(self.ginv, cov.flat[0].order)
        acc = None
        for i in range(n):
            for j in range(n):
                term = gi[i, j] * cov[i, j]
                acc = term if acc is None else acc + term
        return acc

    def divergence_sym2(self, T):
        """(div T)_j = g^{ik} cov_i T_kj, one order below T."""
        n = self.n
        cov = self.cov_deriv(T)
        gi = trunc(self.ginv, cov.flat[0].order)
        out = np.empty(n, dtype=object)
        for j in range(n):
            acc = None
            for i in range(n):
                for k in range(n):
                    term = gi[i, k] * cov[i, k, j]
                    acc = term if acc is None else acc + term
            out[j] = acc
        return out

    def trace(self, T) -> Jet:
        """g^{ij} T_ij at the order of T."""
        n = self.n
        m = T.flat[0].order
        gi = trunc(self.ginv, m)
        acc = None
        for i in range(n):
            for j in range(n):
                term = gi[i, j] * T[i, j]
                acc = term if acc is None else acc + term
        return acc

    def trace_free(self, T):
        """T - (tr T / n) g at the order of T."""
        n = self.n
        m = T.flat[0].order
        gm = trunc(self.g, m)
        tr_over_n = self.trace(T) * (1.0 / n)
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = T[i, j] - tr_over_n * gm[i, j]
        return out

    def mixed(self, T):
        """Raise the first index: T^i_j = g^{ia} T_aj."""
        m = T.flat[0].order
        return _jet_matmul(trunc(self.ginv, m), T)

    def inner_sym2(self, T, U) -> Jet:
        """<T, U>_g = g^{ia} g^{jb} T_ij U_ab at the common order."""
        n = self.n
        m = min(T.flat[0].order, U.flat[0].order)
        Tm = self.mixed(trunc(T, m))
        Um = self.mixed(trunc(U, m))
        acc = None
        for i in range(n):
            for j in range(n):
                term = Tm[i, j] * Um[j, i]
                acc = term if acc is None else acc + term
        return acc

    def norm2_sym2(self, T) -> Jet:
        return self.inner_sym2(T, T)

    def contract_vector_sym2(self, X, T):
        """(i_X T)_j = X^i T_ij at the common order."""
        n = self.n
        m = min(X[0].order, T.flat[0].order)
        Xm = trunc(X, m)
        Tm = trunc(T, m)
        out = np.empty(n, dtype=object)
        for j in range(n):
            acc = Xm[0] * Tm[0, j]
            for i in range(1, n):
                acc = acc + Xm[i] * Tm[i, j]
            out[j] = acc
        return out

    def pair_oneform_vector(self, al, X) -> Jet:
        """al_j X^j at the common order."""
        n = self.n
        m = min(al.flat[0].order if hasattr(al, "flat") else al[0].order,
                X[0].order)
        acc = None
        for j in range(n):
            a = al[j] if al[j].order == m else al[j].truncated(m)
            x = X[j] if X[j].order == m else X[j].truncated(m)
            term = a * x
            acc = term if acc is None else acc + term
        return acc


def frame_at(obj: Chart | Manifold, point: Sequence[float]
             ) -> CurvatureFrame:
    chart = obj.chart if isinstance(obj, Manifold) else obj
    return CurvatureFrame(chart, point)


def pipeline_pack(frame: CurvatureFrame, deep: bool = True
                  ) -> dict[str, np.ndarray | float]:
    """Pipeline values keyed like `fdcheck.FDGeometry.pack` for comparison."""
    out = {
        "gamma": values(frame.gamma),
        "riemann_lo": values(frame.riemann_lo),
        "ricci": values(frame.ricci),
        "scalar": frame.scalar.value,
        "ric2": values(frame.ricci_sq),
        "ric_norm2": frame.ricci_norm2.value,
    }
    if frame.n >= 3:
        out["schouten"] = values(frame.schouten)
        out["cotton"] = values(frame.cotton)
        out["weyl"] = values(frame.weyl_lo)
    if deep:
        out["grad_scalar_lo"] = values(frame.grad_scalar_lo)
        out["hess_scalar"] = values(frame.hess_scalar)
        out["lap_scalar"] = frame.lap_scalar.value
        out["cov_ricci"] = values(frame.cov_ricci)
        out["lap_ricci"] = values(frame.lap_ricci)
        if frame.n == 4:
            out["bach"] = values(frame.bach)
    return out


# ----------------------------------------------------------------------
# finite differences over pipeline values (one order beyond the jets)
# ----------------------------------------------------------------------
FD_STEP = 1e-2


def _fd_stencil(fun, point, axis: int, h: float):
    """Fourth-order first derivative of a pipeline value along one axis."""
    p = np.asarray(point, dtype=float)

    def at(s):
        q = p.copy()
        q[axis] += s
        return np.asarray(fun(q))

    return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h)


def bach_divergence(chart: Chart, point, h: float = FD_STEP) -> np.ndarray:
    """(div B)_j = g^{ik} (d_i B_kj - Gamma^m_ik B_mj - Gamma^m_ij B_km).

    The partials of B come from a fourth-order stencil over the jet
    pipeline; the connection terms use the exact center frame.
    """
    n = chart.dim
    fr = CurvatureFrame(chart, point)
    b0 = values(fr.bach)
    gam0 = values(fr.gamma)
    gi0 = values(fr.ginv)
    db = np.empty((n, n, n))  # db[a, i, j] = d_a B_ij
    for a in range(n):
        db[a] = _fd_stencil(lambda q: values(CurvatureFrame(chart, q).bach),
                            point, a, h)
    cov = np.empty((n, n, n))
    for a in range(n):
        cov[a] = db[a] - np.einsum("mk,mj->kj", gam0[:, a, :], b0) \
            - np.einsum("mj,km->kj", gam0[:, a, :], b0)
    return np.einsum("ik,ikj->j", gi0, cov)


def grad_lap_scalar(chart: Chart, point, h: float = FD_STEP) -> np.ndarray:
    """d(Lap S) (lower index) by a fourth-order stencil over the pipeline."""
    n = chart.dim
    out = np.empty(n)
    for a in range(n):
        out[a] = _fd_stencil(
            lambda q: CurvatureFrame(chart, q).lap_scalar.value,
            point, a, h)
    return out
