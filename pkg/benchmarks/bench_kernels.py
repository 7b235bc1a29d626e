"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Reports the median time per call for interpolation, root finding, the
Berlekamp-Welch solve and a covering sweep, on a prime and an extension field.
"""
import argparse
import statistics
import time

import numpy as np

from rscover import grs_code, kernels
from rscover.cover import grs_cover
from rscover.decoder import DecodeConfig, clear_cache, gs_parameters, tau_gs
from rscover.gf import GF


def timeit(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return statistics.median(out)


def cases(rng):
    for q, n, k in ((7, 6, 5), (31, 30, 10), (16, 15, 5)):
        F = GF(q)
        xs = list(range(1, n + 1))
        ys = rng.integers(0, q, n).tolist()
        tau = tau_gs(n, k)
        try:
            s, D = gs_parameters(n, k, tau, max_multiplicity=4)
        except ValueError:
            tau -= 1
            s, D = gs_parameters(n, k, tau, max_multiplicity=4)
        yield f"interpolate q={q} n={n} k={k} s={s}", F, lambda b, F=F, xs=xs, ys=ys, s=s, k=k, D=D: \
            kernels.gs_interpolate(xs, ys, s, k, D, F, b)
        Q = kernels.gs_interpolate(xs, ys, s, k, D, F, "python")
        yield f"roots q={q} k={k}", F, lambda b, Q=Q, k=k, F=F: kernels.rr_roots(Q, k, F, b)
        A = rng.integers(0, q, (n, n + 1))
        yield f"nullspace {n}x{n + 1} q={q}", F, lambda b, A=A, F=F: kernels.nullspace_vector(A, F, b)


def cover_sweep(backend, trials=50):
    code = grs_code(7, 6, 3)
    rng = np.random.default_rng(0)
    cfg = DecodeConfig(backend=backend)
    clear_cache()
    for _ in range(trials):
        grs_cover(code, rng.integers(0, 7, 6).tolist(), "list", cfg)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'kernel':42s}" + "".join(f"{b:>14s}" for b in backends) + "   speedup")
    rng = np.random.default_rng(1)
    rows = list(cases(rng)) + [("grs_cover list [6,3]_7 x50", None, lambda b: cover_sweep(b))]
    for name, _, fn in rows:
        ts = [timeit(lambda: fn(b), args.repeat) for b in backends]
        sp = f"{ts[0] / ts[-1]:8.1f}x" if len(ts) > 1 else ""
        print(f"{name:42s}" + "".join(f"{t * 1e3:12.3f}ms" for t in ts) + "  " + sp)


if __name__ == "__main__":
    main()
