#!/usr/bin/env python3
"""Time the numba and numpy kernels on the same encoded inputs.

    python benchmarks/bench_kernels.py [--p 3] [--d 2] [--gamma 2] [--digits 2] [--repeat 3]

The Gram scan runs over every wavelet in the window; the float oracle runs
over a batch of random function pairs.  Both backends must return identical
integer histograms, which is checked before any timing is reported.
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from padic_wavelets import _kernels
from padic_wavelets.functions import _encode_for_oracle
from padic_wavelets.gram import _encode, as_root_monomial
from padic_wavelets.sampling import random_function
from padic_wavelets.wavelet import enumerate_indices, make_wavelet


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_gram(p, d, gamma, digits, repeat):
    idx = enumerate_indices(p, d, range(-gamma, gamma + 1), digits)
    fs = [make_wavelet(i) for i in idx]
    monos = [as_root_monomial(f) for f in fs]
    M = max(m.M for m in monos)
    *arrays, W = _encode(fs, monos, M)

    def call(kernel):
        return lambda: kernel(*arrays, W, p, M)

    _kernels.gram_pairs_numba(*arrays, W, p, M)  # compile outside the timing
    tn, (pn, vn) = best_of(call(_kernels.gram_pairs_numba), repeat)
    tp, (pp, vp) = best_of(call(_kernels.gram_pairs_numpy), repeat)
    order_n = np.lexsort(pn.T[::-1])
    order_p = np.lexsort(pp.T[::-1])
    same = np.array_equal(pn[order_n], pp[order_p]) and np.array_equal(vn[order_n], vp[order_p])
    n = len(fs)
    print(f"gram  p={p} d={d} wavelets={n} pairs={n * (n + 1) // 2}")
    print(f"  numba {tn * 1e3:9.1f} ms   numpy {tp * 1e3:9.1f} ms   ratio {tp / tn:6.2f}   agree={same}")


def bench_oracle(p, d, pairs, repeat):
    rng = random.Random(7)
    jobs = []
    for _ in range(pairs):
        f, g = random_function(rng, p, d), random_function(rng, p, d)
        S = max(f.scale, g.scale)
        r = max(f.support_exponent(), g.support_exponent(), -S)
        W = p ** (S + r)
        fc, fv, fm = _encode_for_oracle(f, r, W)
        gc, gv, gm = _encode_for_oracle(g, r, W)
        jobs.append((fc, fv, fm, gc, gv, gm, d, W))
    _kernels.oracle_inner_numba(*jobs[0])

    def run(k):
        return lambda: [k(*j) for j in jobs]

    tn, a = best_of(run(_kernels.oracle_inner_numba), repeat)
    tp, b = best_of(run(_kernels.oracle_inner_numpy), repeat)
    err = max(abs(x - y) for x, y in zip(a, b))
    print(f"oracle p={p} d={d} pairs={pairs}")
    print(f"  numba {tn * 1e3:9.1f} ms   numpy {tp * 1e3:9.1f} ms   ratio {tp / tn:6.2f}   max|diff|={err:.2e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--gamma", type=int, default=2)
    ap.add_argument("--digits", type=int, default=2)
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    if not _kernels.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    bench_gram(a.p, a.d, a.gamma, a.digits, a.repeat)
    bench_oracle(a.p, a.d, a.pairs, a.repeat)


if __name__ == "__main__":
    main()
