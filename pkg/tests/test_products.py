"""Closed-form product Bach components vs the general pipeline."""

import numpy as np
import pytest

from bachlab import charts, products
from bachlab.curvature import CurvatureFrame, frame_at, values
from bachlab.products import (FactorCurvature, ProductFormulaError,
                              bach_line_cross_3, bach_surface_product,
                              circle_product_lambda, einstein_residual_norm2,
                              line_product_lambda,
                              line_product_trace_residual,
                              line_soliton_obstruction, surface_c_invariant)


def fc_at(chart, pt=None, role="factor"):
    return FactorCurvature.at(chart, chart.center() if pt is None else pt,
                              role)


# ----------------------------------------------------------------------
# line x N^3 family
# ----------------------------------------------------------------------
def test_line_cross_round_sphere3_vanishes():
    comp = bach_line_cross_3(fc_at(charts.round_sphere(3), [1.0, 1.2, 0.8]))
    assert abs(comp["B_tt"]) <= 1e-12
    assert np.abs(comp["B_YZ"]).max() <= 1e-11


def test_line_cross_flat_vanishes():
    comp = bach_line_cross_3(fc_at(charts.flat_torus((2.0, 3.0, 4.0))))
    assert comp["B_tt"] == 0.0
    assert np.abs(comp["B_YZ"]).max() == 0.0


def test_line_cross_formula_is_trace_free_on_synthetic_data():
    # arbitrary N-data subject only to the trace relations that hold for
    # genuine curvature: tr Hess S = Lap S, tr LapRic = Lap S, tr Ric = S
    rng = np.random.default_rng(7)
    for _ in range(10):
        a = rng.normal(size=(3, 3))
        g = a @ a.T + 3 * np.eye(3)
        gi = np.linalg.inv(g)
        ric = np.copy(rng.normal(size=(3, 3)))
        ric = (ric + ric.T) / 2
        hess = rng.normal(size=(3, 3))
        hess = (hess + hess.T) / 2
        lapric = rng.normal(size=(3, 3))
        lapric = (lapric + lapric.T) / 2
        lap_s = float(np.einsum("ij,ij->", gi, hess))
        # enforce tr_g LapRic = Lap S
        lapric += (lap_s - np.einsum("ij,ij->", gi, lapric)) / 3.0 * g
        s = float(np.einsum("ij,ij->", gi, ric))
        ric_mixed = gi @ ric
        fc = FactorCurvature(
            role="synthetic", dim=3, point=(0, 0, 0), g=g, ricci=ric,
            scalar=s, hess_scalar=hess, lap_scalar=lap_s, lap_ricci=lapric,
            ricci_sq=ric @ ric_mixed,
            ricci_norm2=float(np.trace(ric_mixed @ ric_mixed)))
        comp = bach_line_cross_3(fc)
        total_trace = comp["B_tt"] + np.einsum("ij,ij->", gi, comp["B_YZ"])
        assert abs(total_trace) <= 1e-10 * (1 + abs(comp["B_tt"]))


def test_line_cross_matches_pipeline_on_berger():
    err = products.line_cross_check(charts.berger_sphere(1.5), count=3)
    assert err <= 1e-8


def test_line_cross_matches_pipeline_on_inhomogeneous_factors():
    factors = [
        charts.conformal(charts.berger_sphere(1.2), "0.2*sin(be)*cos(al)"),
        charts.conformal(charts.round_sphere(3), "0.2*cos(ch)"),
        charts.conformal(charts.flat_torus((6.0, 7.0, 5.0)),
                         "0.3*sin(t0) + 0.2*cos(t1 + t2)"),
    ]
    for n in factors:
        assert products.line_cross_check(n, count=3) <= 1e-8, n.name


def test_line_cross_rejects_wrong_dimension():
    with pytest.raises(ProductFormulaError, match="3-dimensional"):
        bach_line_cross_3(fc_at(charts.round_sphere(2)))


# ----------------------------------------------------------------------
# K^2 x L^2 family
# ----------------------------------------------------------------------
def test_surface_product_sphere_times_flat():
    # S^2(1) x R^2: B = +(1/6) g_K on the sphere, -(1/6) g_L on the plane
    fck = fc_at(charts.round_sphere(2), [1.1, 0.7])
    fcl = fc_at(charts.euclidean(2))
    comp = bach_surface_product(fck, fcl)
    assert np.abs(comp["B_K"] - fck.g / 6.0).max() <= 1e-12
    assert np.abs(comp["B_L"] + fcl.g / 6.0).max() <= 1e-12


def test_surface_product_einstein_cancellations():
    # equal spheres and sphere x hyperbolic (S_K^2 = S_L^2) are Bach-flat
    fck = fc_at(charts.round_sphere(2), [1.1, 0.7])
    fcl = fc_at(charts.round_sphere(2), [0.6, 2.0])
    comp = bach_surface_product(fck, fcl)
    assert np.abs(comp["B_K"]).max() <= 1e-12
    assert np.abs(comp["B_L"]).max() <= 1e-12
    fch = fc_at(charts.hyperbolic_2(1.0), [0.2, 1.4])
    comp = bach_surface_product(fck, fch)
    assert np.abs(comp["B_K"]).max() <= 1e-12
    assert np.abs(comp["B_L"]).max() <= 1e-12


def test_surface_product_full_trace_vanishes_on_random_factors():
    fck = fc_at(charts.conformal_round_sphere("0.3*cos(th)"), [1.0, 0.5])
    fcl = fc_at(charts.conformal(charts.flat_torus((6.0, 7.0)),
                                 "0.25*sin(t0)*cos(t1)"), [2.0, 3.0])
    comp = bach_surface_product(fck, fcl)
    tr = (np.einsum("ij,ij->", np.linalg.inv(fck.g), comp["B_K"])
          + np.einsum("ij,ij->", np.linalg.inv(fcl.g), comp["B_L"]))
    assert abs(tr) <= 1e-12


def test_surface_product_matches_pipeline():
    pairs = [
        (charts.conformal_round_sphere("0.3*cos(th)"),
         charts.conformal(charts.flat_torus((6.0, 7.0)),
                          "0.25*sin(t0)*cos(t1)")),
        (charts.conformal(charts.hyperbolic_2(), "0.1*x*y"),
         charts.round_sphere(2, 1.3)),
    ]
    for k, l in pairs:
        assert products.surface_cross_check(k, l, count=3) <= 1e-8


def test_surface_product_rejects_wrong_dimensions():
    with pytest.raises(ProductFormulaError, match="2-dimensional"):
        bach_surface_product(fc_at(charts.round_sphere(3)),
                             fc_at(charts.round_sphere(2)))


# ----------------------------------------------------------------------
# lambda sign laws and the obstruction tensor
# ----------------------------------------------------------------------
def test_lambda_zero_on_constant_curvature():
    fc = fc_at(charts.round_sphere(3), [1.0, 1.2, 0.8])
    assert abs(circle_product_lambda(fc)) <= 1e-12
    assert abs(line_product_lambda(fc)) <= 1e-12
    assert einstein_residual_norm2(fc) <= 1e-12
    flat = fc_at(charts.flat_torus((2.0, 3.0, 4.0)))
    assert circle_product_lambda(flat) == 0.0


def test_lambda_signs_on_berger_family():
    for a in (0.7, 1.2, 1.5, 2.0):
        fc = fc_at(charts.berger_sphere(a), [0.7, 1.1, 0.4])
        lam_c = circle_product_lambda(fc)
        lam_l = line_product_lambda(fc)
        e = (32.0 / 3.0) * (a * a - 1) ** 2
        assert abs(lam_c - e / 8.0) <= 1e-10
        assert abs(lam_l + e / 24.0) <= 1e-10
        if a != 1.0:
            assert lam_c > 0 and lam_l < 0
            assert einstein_residual_norm2(fc) > 1e-3


def test_trace_identity_residual_is_algebraically_zero():
    fc = fc_at(charts.berger_sphere(1.7), [0.7, 1.1, 0.4])
    assert abs(line_product_trace_residual(fc)) <= 1e-12


def test_product_lambda_report_and_constancy_gate():
    rep = products.product_lambda_report(charts.berger_sphere(1.5), "circle")
    assert rep["lambda"] > 0
    assert rep["scalar_spread"] <= 1e-10
    bumpy = charts.conformal(charts.round_sphere(3), "0.2*cos(ch)")
    with pytest.raises(ProductFormulaError, match="constant"):
        products.product_lambda_report(bumpy, "line")
    with pytest.raises(ProductFormulaError, match="family"):
        products.product_lambda_report(charts.berger_sphere(1.5), "torus")


def test_obstruction_zero_on_constant_curvature():
    assert np.abs(line_soliton_obstruction(
        fc_at(charts.round_sphere(3), [1.0, 1.2, 0.8]))).max() <= 1e-11
    assert np.abs(line_soliton_obstruction(
        fc_at(charts.flat_torus((2.0, 3.0, 4.0))))).max() == 0.0


def test_obstruction_berger_golden_norm():
    # frozen regression value for the squashed sphere a = 1.5
    fc = fc_at(charts.berger_sphere(1.5), [0.7, 1.1, 0.4])
    r = line_soliton_obstruction(fc)
    m = np.linalg.inv(fc.g) @ r
    norm = float(np.sqrt(np.trace(m @ m)))
    assert abs(norm - 21.7732421580727) <= 1e-9
    assert abs(np.trace(m)) <= 1e-12  # the obstruction is trace-free
    # homogeneity: same value elsewhere on the group
    fc2 = fc_at(charts.berger_sphere(1.5), [2.0, 2.0, 3.0])
    r2 = line_soliton_obstruction(fc2)
    m2 = np.linalg.inv(fc2.g) @ r2
    assert abs(float(np.sqrt(np.trace(m2 @ m2))) - norm) <= 1e-9


# ----------------------------------------------------------------------
# surface c-invariant
# ----------------------------------------------------------------------
def test_c_invariant_round_sphere():
    assert abs(surface_c_invariant(
        fc_at(charts.round_sphere(2), [1.1, 0.7])) - 4.0 / 3.0) <= 1e-11
    assert surface_c_invariant(fc_at(charts.euclidean(2))) == 0.0


def test_c_invariant_conformal_sphere_spread_golden():
    rep = products.surface_c_report(
        charts.conformal_round_sphere("0.2*cos(th)"))
    assert abs(rep["spread"] - 1.0518446276695) <= 1e-8
    rep_round = products.surface_c_report(charts.round_sphere(2), count=8)
    assert rep_round["spread"] <= 1e-11


def test_c_invariant_rejects_wrong_dimension():
    with pytest.raises(ProductFormulaError, match="surface"):
        surface_c_invariant(fc_at(charts.round_sphere(3)))


def test_manifold_factor_data():
    man = charts.get_example("r2_x_s2")
    fcs = products.manifold_factor_data(man, [0.1, -0.2, 1.2, 0.7])
    assert [fc.dim for fc in fcs] == [2, 2]
    assert abs(fcs[1].scalar - 2.0) <= 1e-12
    assert fcs[0].scalar == 0.0
