"""Compare the compiled and pure-Python polynomial kernels.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import random
import timeit

from algindep import _kernels_py

try:
    from algindep import _kernels
except ImportError:  # extension not built
    _kernels = None


def random_terms(rng, nvars, nterms, max_deg, coeff_bits):
    out = {}
    while len(out) < nterms:
        e = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(nvars)] += 1
        c = rng.getrandbits(coeff_bits) - (1 << (coeff_bits - 1))
        if c:
            out[tuple(e)] = c
    return out


def workloads(rng):
    small_a = random_terms(rng, 3, 12, 4, 16)
    small_b = random_terms(rng, 3, 12, 4, 16)
    big_a = random_terms(rng, 4, 80, 8, 64)
    big_b = random_terms(rng, 4, 80, 8, 64)
    pt_num, pt_den = [3, -7, 11, 5], [2, 3, 5, 7]
    return {
        "mul 12x12 terms": lambda k: k.mul_terms(small_a, small_b),
        "mul 80x80 terms": lambda k: k.mul_terms(big_a, big_b),
        "add 80+80 terms": lambda k: k.add_terms(big_a, 3, big_b, -2),
        "diff 80 terms": lambda k: k.diff_terms(big_a, 1),
        "eval 80 terms": lambda k: k.eval_terms(big_a, pt_num, pt_den),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels are not built; only the pure-Python timings are shown")
    rng = random.Random(args.seed)
    print(f"{'workload':<18} {'python (us)':>12} {'cython (us)':>12} {'speedup':>8}")
    for name, fn in workloads(rng).items():
        if _kernels is not None:
            assert fn(_kernels) == fn(_kernels_py), name
        number = 200
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=number, repeat=args.repeat)) / number * 1e6
        if _kernels is None:
            print(f"{name:<18} {py:12.1f} {'-':>12} {'-':>8}")
            continue
        cy = min(timeit.repeat(lambda: fn(_kernels), number=number, repeat=args.repeat)) / number * 1e6
        print(f"{name:<18} {py:12.1f} {cy:12.1f} {py / cy:7.2f}x")


if __name__ == "__main__":
    main()
