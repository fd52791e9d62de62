"""Dev-time fit of the closed-form product Bach coefficients.

Fits the ansatz for B on R x N^3 and K^2 x L^2 against the general jet
pipeline over random conformal factor metrics, prints the coefficients
(as fractions) and the fit residual.  The frozen rationals live in
bachlab/products.py; rerun this script to re-derive them.
"""
import math
from fractions import Fraction

import numpy as np

from bachlab import charts
from bachlab.curvature import CurvatureFrame, frame_at, values


def line_family_rows():
    """Rows for B_tt and B|_N on R x N^3 for several N and points."""
    factors = [
        charts.conformal(charts.berger_sphere(1.3), "0.2*sin(be)*cos(al)"),
        charts.conformal(charts.round_sphere(3), "0.25*cos(ch) + 0.1*sin(th)"),
        charts.conformal(charts.flat_torus((6.0, 7.0, 5.0)),
                         "0.3*sin(t0) + 0.2*cos(t1 + t2)"),
        charts.berger_sphere(0.8),
    ]
    rows_tt, vals_tt = [], []
    rows_n, vals_n = [], []
    for N in factors:
        man = charts.product([charts.line(), N])
        pts = charts.sample_points(N, 6, margin=0.15)
        for q in pts:
            p4 = np.concatenate(([0.0], q))
            fr = frame_at(man, p4)
            B = values(fr.bach)
            frn = CurvatureFrame(N, q)
            lapS = frn.lap_scalar.value
            ric_n2 = frn.ricci_norm2.value
            S = frn.scalar.value
            rows_tt.append([lapS, ric_n2, S * S])
            vals_tt.append(B[0, 0])
            # N-block rows: one scalar equation per tensor entry
            lapric = values(frn.lap_ricci)
            hessS = values(frn.hess_scalar)
            ric2 = values(frn.ricci_sq)
            ric = values(frn.ricci)
            g = values(frn.g)
            for i in range(3):
                for j in range(i, 3):
                    rows_n.append([
                        lapric[i, j], hessS[i, j], ric2[i, j],
                        S * ric[i, j], lapS * g[i, j], ric_n2 * g[i, j],
                        S * S * g[i, j]])
                    vals_n.append(B[1 + i, 1 + j])
            # mixed block must vanish
            assert np.abs(B[0, 1:]).max() < 1e-9, "mixed block not zero"
    return (np.array(rows_tt), np.array(vals_tt),
            np.array(rows_n), np.array(vals_n))


def surface_family_rows():
    """Rows for B|_K on K^2 x L^2."""
    pairs = [
        (charts.conformal_round_sphere("0.3*cos(th)"),
         charts.conformal(charts.flat_torus((6.0, 7.0)),
                          "0.25*sin(t0)*cos(t1)")),
        (charts.conformal(charts.flat_torus((5.0, 8.0)),
                          "0.3*cos(t0) + 0.15*sin(t1)"),
         charts.conformal_round_sphere("0.2*sin(th)*cos(ph)")),
        (charts.conformal(charts.hyperbolic_2(), "0.1*x*y"),
         charts.conformal_round_sphere("0.25*cos(th)")),
    ]
    rows, vals = [], []
    for K, L in pairs:
        man = charts.product([K, L])
        ptsK = charts.sample_points(K, 5, margin=0.2)
        ptsL = charts.sample_points(L, 5, margin=0.2)
        for qK, qL in zip(ptsK, ptsL):
            p4 = np.concatenate([qK, qL])
            fr = frame_at(man, p4)
            B = values(fr.bach)
            fk = CurvatureFrame(K, qK)
            fl = CurvatureFrame(L, qL)
            SK, SL = fk.scalar.value, fl.scalar.value
            lapSK, lapSL = fk.lap_scalar.value, fl.lap_scalar.value
            hessSK = values(fk.hess_scalar)
            gK = values(fk.g)
            for i in range(2):
                for j in range(i, 2):
                    rows.append([
                        hessSK[i, j], lapSK * gK[i, j], lapSL * gK[i, j],
                        SK * SK * gK[i, j], SL * SL * gK[i, j],
                        SK * SL * gK[i, j]])
                    vals.append(B[i, j])
            assert np.abs(B[:2, 2:]).max() < 1e-9, "mixed block not zero"
    return np.array(rows), np.array(vals)


def report(name, A, b, labels):
    coef, res, rank, sv = np.linalg.lstsq(A, b, rcond=None)
    resid = np.abs(A @ coef - b).max()
    print(f"--- {name} (rows {A.shape[0]}, rank {rank}, "
          f"cond {sv[0]/sv[-1]:.2e}) max resid {resid:.3e}")
    for lab, c in zip(labels, coef):
        fr = Fraction(c).limit_denominator(1000)
        print(f"  {lab:14s} {c:+.12f}  ~ {fr}")
    return coef


rtt, vtt, rn, vn = line_family_rows()
report("line x N3, tt block", rtt, vtt, ["lapS", "|Ric|^2", "S^2"])
report("line x N3, N block", rn, vn,
       ["lapRic", "hessS", "Ric^2", "S*Ric", "lapS*g", "|Ric|^2*g", "S^2*g"])
rk, vk = surface_family_rows()
report("K2 x L2, K block", rk, vk,
       ["hessS_K", "lapS_K*g", "lapS_L*g", "S_K^2*g", "S_L^2*g", "S_KS_L*g"])
