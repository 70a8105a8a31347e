"""Compiled scatter kernel vs the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times ``apply_sparse`` on random states shaped like the ones pipeline
evaluation produces, then a full pipeline (the doubled product of the
Sweedler algebra over F_5) under each implementation.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hopf_forge import _fallback

try:
    from hopf_forge import _kernels
except ImportError:
    _kernels = None


def random_case(rng, batch, a, a_out, R, p, density=0.3):
    dense = rng.integers(0, p, size=(a_out, a)) * (rng.random((a_out, a)) < density)
    rows, cols = np.nonzero(dense)
    order = np.lexsort((rows, cols))
    rows, cols = rows[order], cols[order]
    indptr = np.zeros(a + 1, dtype=np.int64)
    np.add.at(indptr, cols + 1, 1)
    indptr = np.cumsum(indptr)
    vals = dense[rows, cols].astype(np.int64)
    state = rng.integers(0, p, size=(batch, a, R), dtype=np.int64)
    return state, a_out, indptr, rows.astype(np.int64), vals, p


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


PIPELINE = (
    "import time; from hopf_forge.instances import load; from hopf_forge.calculus import pipeline_eval; "
    "T = load('sweedler_f5').tau_bimonad(); N = T.notation(); t0 = time.perf_counter(); "
    "pipeline_eval(N('δδ', 'HτH', 'mm')); pipeline_eval(N('HτH', 'τHH', 'HHτ', 'HτH')); "
    "print(time.perf_counter() - t0)"
)


def pipeline_time(pure: bool) -> float:
    env = dict(os.environ, HOPF_FORGE_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", PIPELINE], capture_output=True, text=True, env=env, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    shapes = [
        ("d=2, 64 batches", (64, 4, 2, 16, 2)),
        ("d=4, 256 batches", (256, 16, 4, 16, 5)),
        ("d=4, wide tail", (16, 16, 16, 256, 5)),
        ("p=65521", (64, 16, 16, 64, 65521)),
    ]
    print(f"{'case':<20}{'python (ms)':>14}{'compiled (ms)':>16}{'speedup':>10}")
    for name, shape in shapes:
        case = random_case(rng, *shape)
        slow = best_of(_fallback.apply_sparse, case, args.repeat)
        if _kernels is None:
            print(f"{name:<20}{slow * 1e3:>14.3f}{'n/a':>16}{'':>10}")
            continue
        fast = best_of(_kernels.apply_sparse, case, args.repeat)
        assert np.array_equal(_fallback.apply_sparse(*case), _kernels.apply_sparse(*case))
        print(f"{name:<20}{slow * 1e3:>14.3f}{fast * 1e3:>16.3f}{slow / fast:>9.1f}x")
    slow = pipeline_time(True)
    line = f"{'doubled Sweedler':<20}{slow * 1e3:>14.1f}"
    if _kernels is not None:
        fast = pipeline_time(False)
        line += f"{fast * 1e3:>16.1f}{slow / fast:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
