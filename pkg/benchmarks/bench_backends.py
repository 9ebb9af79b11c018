"""Time the numba and numpy kernel backends against each other.

Each backend runs in its own interpreter because the choice is fixed at
import time. Usage::

    python3 benchmarks/bench_backends.py [--repeats 5] [--degree 12]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
import tribez
from tribez.core import RationalPatch, theta_size
from tribez.dualbernstein import E_table
from tribez.quadrature import integral_collection

m, repeats = int(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(0)
K = theta_size(6)
src = RationalPatch(6, rng.normal(size=(K, 3)), rng.uniform(0.5, 2.0, K))
alpha = (-0.5, -0.5, -0.5)

def best(fn):
    fn()  # warm-up, includes JIT compilation
    t = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        t = min(t, time.perf_counter() - t0)
    return t

out = {
    "backend": tribez.BACKEND,
    "E_table": best(lambda: E_table(m, alpha, (0, 0, 0))),
    "integral_collection": best(lambda: integral_collection(src.weights, 6, m, (0, 0, 0), alpha)),
    "approximate_patch": best(lambda: tribez.approximate_patch(src, m, alpha=alpha)),
}
print(json.dumps(out))
"""


def run(backend, degree, repeats):
    env = dict(os.environ, TRIBEZ_BACKEND=backend)
    env.pop("NUMBA_DISABLE_JIT", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(degree), str(repeats)],
        env=env, capture_output=True, text=True,
    )
    if proc.returncode:
        sys.exit(f"{backend} run failed:\n{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--degree", type=int, default=12, help="target degree m (source degree is 6)")
    args = ap.parse_args()

    results = {b: run(b, args.degree, args.repeats) for b in ("numpy", "numba")}
    if results["numba"]["backend"] != "numba":
        print("numba is not installed; only the numpy backend was timed", file=sys.stderr)
    print(f"{'task':<22}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for task in ("E_table", "integral_collection", "approximate_patch"):
        a, b = results["numpy"][task], results["numba"][task]
        print(f"{task:<22}{a:>12.5f}{b:>12.5f}{a / b:>10.2f}")


if __name__ == "__main__":
    main()
