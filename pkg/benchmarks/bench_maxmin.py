"""Time the compiled and pure-Python max-min search kernels side by side.

    python benchmarks/bench_maxmin.py [--trials 200] [--seed 0]

Workloads: random quantized 4x12 matrices at N=25, matrices restricted to
three MCS levels (many near-ties, deeper search), the canonical strait sweep,
and 12 users with identical rates.
"""

import argparse
import time

import numpy as np

from sealte import _maxmin_py
from sealte.channel import PathLossModel
from sealte.linkadapt import reachable_throughputs
from sealte.metrics import scenario_throughputs
from sealte.scenario import build_bosphorus

try:
    from sealte import _maxmin_ext
except ImportError:
    _maxmin_ext = None


def workloads(trials, seed):
    rng = np.random.default_rng(seed)
    levels = reachable_throughputs(build_bosphorus(1))

    def draw(values, shape):
        while True:
            t = rng.choice(values, size=shape)
            t[rng.random(shape) < 0.2] = 0
            if np.all(t.max(axis=0) > 0):
                return t.tolist()

    yield "random 4x12 N=25", [(draw(levels, (4, 12)), 25) for _ in range(trials)]
    yield "3-level 4x12 N=25", [(draw(levels[:3], (4, 12)), 25) for _ in range(trials)]
    sweep = []
    for m in (4, 6, 8, 10, 12):
        s = build_bosphorus(m)
        sweep.append((scenario_throughputs(s, PathLossModel()).values.tolist(), s.num_rbs))
    yield "strait sweep 4..12", sweep
    yield "uniform 4x12 N=25", [([[50400] * 12 for _ in range(4)], 25)]


def time_kernel(kernel, cases):
    start = time.perf_counter()
    phis = []
    for rows, n in cases:
        serving = [int(i) for i in np.argmax(np.array(rows), axis=0)]
        tau = max(_maxmin_py.association_phi(rows, n, [0] * len(rows[0]), serving), 0)
        phis.append(kernel.search(rows, n, [0] * len(rows[0]), tau)[1])
    return time.perf_counter() - start, phis


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'workload':<22}{'cases':>6}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, cases in workloads(args.trials, args.seed):
        t_py, phi_py = time_kernel(_maxmin_py, cases)
        if _maxmin_ext is None:
            print(f"{name:<22}{len(cases):>6}{t_py:>11.4f}{'n/a':>11}{'':>9}")
            continue
        t_c, phi_c = time_kernel(_maxmin_ext, cases)
        assert phi_py == phi_c, f"{name}: kernels disagree"
        print(f"{name:<22}{len(cases):>6}{t_py:>11.4f}{t_c:>11.4f}{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
