#!/usr/bin/env python3
"""Benchmark the compiled jet-multiplication kernel against the fallback.

Times two workloads under each available backend:

* ``product``  -- repeated truncated products of dense degree-4 jets in
  4 variables (the hot loop of every curvature computation);
* ``pipeline`` -- a full deep curvature pack (through the fourth-order
  conformal gradient tensor) on a 4-dimensional product chart.

The backends share one accumulation order, so swapping them changes
timings only; results stay bitwise identical.  Run after an editable
install:

    python3 scripts/bench_jets.py [--rounds N] [--repeat K]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from bachlab import _jetcore_py, charts
import bachlab.jets as jets_mod
from bachlab.curvature import CurvatureFrame, pipeline_pack
from bachlab.jets import variables

try:
    from bachlab import _jetcore
except ImportError:  # pragma: no cover - source-only install
    _jetcore = None

BACKENDS = {"numpy": _jetcore_py}
if _jetcore is not None:
    BACKENDS["compiled"] = _jetcore


def _best_time(fn, repeat: int) -> float:
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def product_workload(rounds: int):
    x, y, z, w = variables([0.3, -0.2, 0.7, 0.1], order=4)
    a = (1.0 + x * y - z).sin() + (w * x).exp()
    b = (x + 2.0 * y * z).cos() * (1.0 + w * w)

    def run():
        acc = a
        for _ in range(rounds):
            acc = acc * b
            acc = acc + a * a
        return acc

    return run


def pipeline_workload(chart):
    point = [0.4, -0.3, 1.1, 0.6]

    def run():
        return pipeline_pack(CurvatureFrame(chart, point), deep=True)

    return run


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rounds", type=int, default=200,
                        help="jet products per timed call (default 200)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="timed calls per measurement; the minimum "
                        "is reported (default 5)")
    args = parser.parse_args()

    chart = charts.product_chart(
        [charts.euclidean(2), charts.round_sphere(2)])
    rows = []
    for name, impl in BACKENDS.items():
        jets_mod.mul_into = impl.mul_into
        prod = _best_time(product_workload(args.rounds), args.repeat)
        pipe = _best_time(pipeline_workload(chart), args.repeat)
        rows.append((name, prod, pipe))
    jets_mod.mul_into = BACKENDS[rows[-1][0]].mul_into

    print(f"{'backend':10s} {'product (ms)':>14s} {'pipeline (ms)':>14s}")
    for name, prod, pipe in rows:
        print(f"{name:10s} {1e3 * prod:14.2f} {1e3 * pipe:14.2f}")
    if len(rows) == 2:
        base = {name: (prod, pipe) for name, prod, pipe in rows}
        speed_prod = base["numpy"][0] / base["compiled"][0]
        speed_pipe = base["numpy"][1] / base["compiled"][1]
        print(f"\ncompiled speedup: {speed_prod:.1f}x on products, "
              f"{speed_pipe:.1f}x on the pipeline")
    else:
        print("\ncompiled extension not built; only the fallback was timed")

    # parity spot check: identical bits from both backends
    x, y, z, w = variables([0.12, 0.3, -0.4, 0.2], order=4)
    probe = ((1.0 + x * y).exp() * (z - w).sin())
    jets_mod.mul_into = _jetcore_py.mul_into
    ref = ((1.0 + x * y).exp() * (z - w).sin())
    same = np.array_equal(probe.coeffs, ref.coeffs)
    print(f"backend parity (bitwise): {'ok' if same else 'MISMATCH'}")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
