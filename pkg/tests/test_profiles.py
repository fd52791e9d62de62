"""Tests for the rotationally symmetric profile ODE explorer."""

import numpy as np
import pytest

from bachlab import profiles
from bachlab.profiles import (ProfileError, ProfileState, integrate_profile,
                              rhs, scan, scan_from_config, series_start,
                              table_to_csv)


# ----------------------------------------------------------------------
# vector field
# ----------------------------------------------------------------------
def test_rhs_flat_solution():
    # rho = t, S = 0, c = 0 solves the system exactly
    for t in (0.3, 1.0, 2.5):
        d = rhs((t, 1.0, 0.0, 0.0), 0.0)
        assert d == (1.0, -0.0, 0.0, 0.0)


def test_rhs_round_spheres():
    # r = 1: rho = sin t, S = 2, c = 4/3
    for t in (0.4, 1.1, 2.0):
        d = rhs((np.sin(t), np.cos(t), 2.0, 0.0), 4.0 / 3.0)
        assert abs(d[1] + np.sin(t)) <= 1e-15
        assert d[3] == 0.0
    # r = 2: rho = 2 sin(t/2), S = 1/2, c = 1/12
    for t in (0.6, 2.0):
        d = rhs((2.0 * np.sin(t / 2), np.cos(t / 2), 0.5, 0.0), 1.0 / 12.0)
        assert abs(d[1] + 0.5 * np.sin(t / 2)) <= 1e-15
        assert abs(d[3]) <= 1e-16


def test_rhs_accepts_state_and_rejects_collapse():
    state = ProfileState(t=1.0, rho=0.5, rho_p=0.8, s=1.0, s_p=0.2)
    d = rhs(state, 0.7)
    assert d[0] == 0.8
    assert abs(d[1] + 0.25) <= 1e-15
    assert abs(d[3] - (0.7 - 1.0 / 3.0 - 1.6 * 0.2)) <= 1e-15
    with pytest.raises(ProfileError, match="positive"):
        rhs((0.0, 1.0, 0.0, 0.0), 0.0)
    with pytest.raises(ProfileError, match="positive"):
        rhs((-0.2, 1.0, 0.0, 0.0), 0.0)


def test_series_start_formulas():
    s0, c, eps = 1.7, 0.4, 1e-4
    st = series_start(s0, c, eps)
    s2 = (c - s0 * s0 / 3.0) / 4.0
    assert st.t == eps
    assert st.rho == eps - (s0 / 12.0) * eps ** 3
    assert st.rho_p == 1.0 - (s0 / 4.0) * eps ** 2
    assert st.s == s0 + s2 * eps ** 2
    assert st.s_p == 2.0 * s2 * eps
    with pytest.raises(ProfileError, match="eps"):
        series_start(1.0, 1.0, 0.0)


def test_series_start_is_consistent_with_the_system():
    # the launch point must not depend on where the series is cut over
    a = integrate_profile(2.0, 4.0 / 3.0, eps=1e-6)
    b = integrate_profile(2.0, 4.0 / 3.0, eps=2e-6)
    assert abs(a.outcome.t_close - b.outcome.t_close) <= 1e-8


# ----------------------------------------------------------------------
# single trajectories
# ----------------------------------------------------------------------
def test_round_sphere_closes_at_pi():
    run = integrate_profile(2.0, 4.0 / 3.0)
    out = run.outcome
    assert out.classification == "Closed"
    assert abs(out.t_close - np.pi) <= 1e-6
    assert max(abs(out.s_min - 2.0), abs(out.s_max - 2.0)) <= 1e-6
    mask = (run.t >= 1e-6) & (run.t <= np.pi - 1e-6)
    assert np.abs(run.rho[mask] - np.sin(run.t[mask])).max() <= 1e-7


def test_radius_two_sphere_closes_at_two_pi():
    out = integrate_profile(0.5, 1.0 / 12.0).outcome
    assert out.classification == "Closed"
    assert abs(out.t_close - 2.0 * np.pi) <= 1e-6
    assert out.s_range <= 1e-6


def test_flat_profile_stays_open():
    run = integrate_profile(0.0, 0.0, t_max=25.0)
    out = run.outcome
    assert out.classification == "CompleteOpen"
    assert out.s_min == 0.0 and out.s_max == 0.0
    assert abs(run.rho[-1] - run.t[-1]) <= 1e-9


def test_hyperbolic_profile_tracks_sinh():
    run = integrate_profile(-2.0, 4.0 / 3.0, t_max=10.0)
    assert run.outcome.classification == "CompleteOpen"
    assert run.outcome.s_range <= 1e-8
    rel = np.abs(run.rho[1:] / np.sinh(run.t[1:]) - 1.0).max()
    assert rel <= 1e-8


def test_curvature_blowup_class():
    out = integrate_profile(-4.0, -2.0).outcome
    assert out.classification == "CurvatureBlowUp"
    assert out.s_min <= -1e6 + 1.0
    assert out.t_close is None


def test_conical_pinch_reported_as_blowup():
    # rho collapses but the cap is not smooth: rho' far from -1 and the
    # singular damping term drives S' to huge values
    run = integrate_profile(3.0, 1.0)
    assert run.outcome.classification == "CurvatureBlowUp"
    assert run.rho[-1] <= 2e-6
    assert abs(run.rho_p[-1] + 1.0) > 1e-4


def test_closure_time_stable_under_tolerance_halving():
    for s0, c, t_ref in ((2.0, 4.0 / 3.0, np.pi),
                         (0.5, 1.0 / 12.0, 2.0 * np.pi)):
        t1 = integrate_profile(s0, c, rtol=1e-10).outcome.t_close
        t2 = integrate_profile(s0, c, rtol=5e-11).outcome.t_close
        assert abs(t1 - t2) <= 1e-8
        assert abs(t1 - t_ref) <= 1e-6


# ----------------------------------------------------------------------
# grid scan
# ----------------------------------------------------------------------
def test_scan_small_grid_golden_classes():
    res = scan(np.linspace(-4.0, 4.0, 5), np.linspace(-2.0, 2.0, 5))
    assert len(res["rows"]) == 25
    classes = sorted(r["class"] for r in res["rows"])
    assert classes.count("CurvatureBlowUp") == 24
    assert classes.count("CompleteOpen") == 1
    assert res["closed_count"] == 0
    assert res["corroborates"] is True


def test_scan_grid_with_round_cell():
    res = scan([2.0], [4.0 / 3.0, -1.0])
    assert len(res["rows"]) == 2
    closed = [r for r in res["rows"] if r["class"] == "Closed"]
    assert len(closed) == 1
    row = closed[0]
    assert row["S0"] == 2.0 and row["c"] == 4.0 / 3.0
    assert abs(row["t_close"] - np.pi) <= 1e-6
    assert row["S_max"] - row["S_min"] <= 1e-5
    assert res["closed_count"] == 1
    assert res["corroborates"] is True


def test_scan_empty_grid():
    res = scan([], [0.0])
    assert res["rows"] == []
    assert res["closed_count"] == 0
    assert res["corroborates"] is True


def test_scan_rows_carry_all_columns():
    res = scan([0.0], [0.0], t_max=5.0)
    row = res["rows"][0]
    assert set(row) == {"S0", "c", "class", "t_close", "S_min", "S_max"}
    assert row["t_close"] is None


def test_default_grid_shape():
    assert len(profiles.DEFAULT_S0_GRID) == 41
    assert profiles.DEFAULT_S0_GRID[0] == -4.0
    assert profiles.DEFAULT_S0_GRID[-1] == 4.0
    assert len(profiles.DEFAULT_C_GRID) == 41
    assert profiles.DEFAULT_C_GRID[0] == -2.0
    assert profiles.DEFAULT_C_GRID[-1] == 2.0


# ----------------------------------------------------------------------
# configuration and output
# ----------------------------------------------------------------------
def test_scan_from_config_forms():
    res = scan_from_config({
        "s0": {"lo": 2.0, "hi": 2.0, "count": 1},
        "c": [4.0 / 3.0],
    })
    assert res["rows"][0]["class"] == "Closed"
    res2 = scan_from_config({"s0": [0.0], "c": [0.0], "t_max": 4.0})
    assert res2["rows"][0]["class"] == "CompleteOpen"


def test_scan_from_config_validation():
    with pytest.raises(ProfileError, match="must be an object"):
        scan_from_config([1, 2])
    with pytest.raises(ProfileError, match="unknown scan fields"):
        scan_from_config({"grid": []})
    with pytest.raises(ProfileError, match="unknown s0 grid"):
        scan_from_config({"s0": {"lo": 0.0, "hi": 1.0, "n": 3}, "c": [0.0]})
    with pytest.raises(ProfileError, match="lo, hi and count"):
        scan_from_config({"s0": {"lo": 0.0, "hi": 1.0}, "c": [0.0]})
    with pytest.raises(ProfileError, match=">= 1"):
        scan_from_config({"s0": {"lo": 0.0, "hi": 1.0, "count": 0},
                          "c": [0.0]})


def test_csv_output_and_determinism():
    res = scan([2.0, 0.0], [4.0 / 3.0], t_max=8.0)
    text = table_to_csv(res["rows"])
    lines = text.strip().split("\n")
    assert lines[0] == "S0,c,class,t_close,S_min,S_max"
    assert len(lines) == 3
    assert lines[1].startswith("2.0,") and ",Closed," in lines[1]
    # non-closed cells leave the closing-time column empty
    assert ",CurvatureBlowUp,," in lines[2]
    res2 = scan([2.0, 0.0], [4.0 / 3.0], t_max=8.0)
    assert table_to_csv(res2["rows"]) == text
