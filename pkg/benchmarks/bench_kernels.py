"""Time the numba and pure-numpy kernels on the same workloads.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--quick]
"""

import argparse
import time

import numpy as np

from seqfam.families import Orientation, QuadraticFamilyParams, SequenceFamily, build_quadratic_family
from seqfam.measures import cross_correlation, family_complexity
from seqfam.measures._backend import numba_available
from seqfam.ntcore import find_quadratic_nonresidue


def quadratic(p):
    b = find_quadratic_nonresidue(p).value
    return build_quadratic_family(QuadraticFamilyParams(p, b, Orientation.BY_OUTER_N))


def random_family(seed, f, n):
    rng = np.random.default_rng(seed)
    return SequenceFamily.from_matrix(rng.choice(np.array([-1, 1], dtype=np.int8), size=(f, n)), label=f"random {f}x{n}")


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if numba_available() else [])
    workloads = []
    for p, ell in ([(31, 3), (43, 3)] if args.quick else [(31, 3), (31, 4), (43, 3), (43, 4)]):
        fam = quadratic(p)
        workloads.append((f"phi_{ell} quadratic p={p}", lambda be, fam=fam, ell=ell: cross_correlation(fam, ell, backend=be).value))
    for f, n in [(16, 24), (32, 20)]:
        fam = random_family(f * n, f, n)
        workloads.append((f"phi_3 random {f}x{n}", lambda be, fam=fam: cross_correlation(fam, 3, backend=be).value))
        workloads.append((f"C random {f}x{n}", lambda be, fam=fam: family_complexity(fam, backend=be).value))

    if "numba" in backends:
        # compile outside the timed region
        cross_correlation(quadratic(11), 2, backend="numba")
        family_complexity(quadratic(11), backend="numba")

    print(f"{'workload':<28}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}  value")
    for name, fn in workloads:
        results = {be: best_of(lambda: fn(be), args.repeat) for be in backends}
        values = {v for _, v in results.values()}
        assert len(values) == 1, f"backends disagree on {name}: {results}"
        row = f"{name:<28}" + "".join(f"{results[b][0]:>11.3f}s" for b in backends)
        speed = f"{results['numpy'][0] / results['numba'][0]:>9.1f}x" if "numba" in results else f"{'-':>10}"
        print(row + speed + f"  {values.pop()}")


if __name__ == "__main__":
    main()
