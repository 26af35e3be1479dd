"""Times the compiled kernels against the numpy fallback on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from qcylab import kernels
from qcylab.integrals import sample_sphere
from qcylab.quaternion import build_structure
from qcylab.verification import curvature_samples, random_even_exponents


def _contraction_case(n: int):
    # R_{abcd} R_{efcd} (I1)_{ae} (I1)_{bf} with integer entries
    Q = build_structure(n)
    Ri, _ = curvature_samples(n, 1, 0)[0].integer_form()
    I1 = np.asarray(Q.I[0], dtype=object)
    factors = [Ri, Ri, I1, I1]
    slots = [[0, 1, 2, 3], [4, 5, 2, 3], [0, 4], [1, 5]]
    return factors, slots, 6


def _moment_case(n: int, samples: int, vectors: int):
    pts = np.ascontiguousarray(sample_sphere(n, samples, 1), dtype=np.float64)
    exps = np.ascontiguousarray(random_even_exponents(n, vectors, seed=n), dtype=np.int64)
    return pts, exps


def _time(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.BACKEND != "compiled":
        print("compiled backend unavailable; only the fallback timings are shown")

    rows = []
    for n in (1, 2):
        factors, slots, nvars = _contraction_case(n)
        py = _time(lambda: kernels.contract_python(factors, slots, nvars), args.repeat)
        comp = _time(lambda: kernels.contract_compiled(factors, slots, nvars), args.repeat)
        same = kernels.contract_python(factors, slots, nvars) == kernels.contract_compiled(factors, slots, nvars)
        rows.append((f"contract n={n}", py, comp, same))

        pts, exps = _moment_case(n, 200_000, 50)
        py = _time(lambda: kernels.monomial_moments_python(pts, exps), args.repeat)
        comp = _time(lambda: kernels.monomial_moments(pts, exps), args.repeat)
        a, b = kernels.monomial_moments_python(pts, exps), kernels.monomial_moments(pts, exps)
        same = np.allclose(a[0], b[0], rtol=1e-12, atol=0) and np.allclose(a[1], b[1], rtol=1e-12, atol=0)
        rows.append((f"monomial_moments n={n} (2e5 x 50)", py, comp, same))

    print(f"{'kernel':<36}{'numpy s':>10}{'compiled s':>12}{'speedup':>9}  agree")
    for name, py, comp, same in rows:
        print(f"{name:<36}{py:>10.4f}{comp:>12.4f}{py / comp:>8.1f}x  {same}")


if __name__ == "__main__":
    main()
