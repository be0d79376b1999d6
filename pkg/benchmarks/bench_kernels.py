"""Time the compiled and pure-Python kernels side by side.

    python3 benchmarks/bench_kernels.py [--m 20] [--samples 1000000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from schur_autocorr import kernels


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=20)
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    names = ["python"] + (["cython"] if kernels.compiled_available() else [])
    rng = np.random.default_rng(0)
    theta = rng.random(args.samples) * 2 * np.pi
    rep = np.eye(3, dtype=complex)
    x = np.array([0.2, -0.3, 0.4])

    rows = []
    for name in names:
        mod = kernels.backend_module(name)
        k = _best(lambda: mod.kostka_strip_dp((args.m,) * 3, args.m), args.repeat)
        d = _best(lambda: mod.det_product_sums(rep, x, theta), args.repeat)
        rows.append((name, k, d))

    print(f"{'backend':<8} {'kostka m=' + str(args.m):>14} {'det ' + str(args.samples):>14}")
    for name, k, d in rows:
        print(f"{name:<8} {k:>13.3f}s {d:>13.3f}s")
    if len(rows) == 2:
        (_, kp, dp), (_, kc, dc) = rows
        print(f"speedup  {kp / kc:>13.2f}x {dp / dc:>13.2f}x")
    else:
        print("compiled kernels not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
