"""Compare the numba and numpy GF(p) elimination kernels.

    python3 benchmarks/bench_modrank.py [--sizes 50 100 200] [--repeat 3]
"""

import argparse
import time

import numpy as np

from sl2cat.linalg.kernels import HAVE_NUMBA, rank_mod_p, rref_mod_p

P = 32003


def bench(fn, mat, use_numba, repeat):
    fn(mat.copy(), P, use_numba=use_numba)  # warm-up (jit compile)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(mat.copy(), P, use_numba=use_numba)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"numba available: {HAVE_NUMBA}")
    print(f"{'size':>6} {'kernel':>6} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in args.sizes:
        # rank-deficient on purpose: product of n x n/2 and n/2 x n
        half = max(1, n // 2)
        mat = (rng.integers(0, P, (n, half)) @ rng.integers(0, P, (half, n))) % P
        mat = mat.astype(np.int64)
        r_np = rank_mod_p(mat.copy(), P, use_numba=False)
        r_nb = rank_mod_p(mat.copy(), P, use_numba=True)
        assert r_np == r_nb, (r_np, r_nb)
        for name, fn in (("rank", rank_mod_p), ("rref", rref_mod_p)):
            t_np = bench(fn, mat, False, args.repeat)
            t_nb = bench(fn, mat, True, args.repeat)
            print(f"{n:>6} {name:>6} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
