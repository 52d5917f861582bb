"""Compare the compiled and pure-Python dispatch kernels on one full year.

Usage: python benchmarks/bench_dispatch.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from hybrid_sizing import kernels


def _inputs(seed=0):
    rng = np.random.default_rng(seed)
    hours = np.arange(8760)
    solar = np.clip(np.sin(2 * np.pi * (hours % 24 - 6) / 24), 0, None) * 4000.0
    wind = rng.weibull(2.0, 8760) * 600.0
    load = np.where((hours % 24 >= 6) & (hours % 24 < 22), 750.0, 375.0)
    return solar + wind, load


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    gen, load = _inputs()
    call = (gen, load, 54_000.0, 1.0, 0.4, 1.0, 0.85, 0.95, 5.5e-5)
    results = {}
    backends = [("python", kernels.dispatch_year_python)]
    if kernels.dispatch_year_compiled is not None:
        backends.append(("cython", kernels.dispatch_year_compiled))
    else:
        print("compiled kernel not available; timing the fallback only")

    for name, fn in backends:
        number = 3 if name == "python" else 200
        best = min(timeit.repeat(lambda: fn(*call), number=number, repeat=args.repeat)) / number
        results[name] = best
        print(f"{name:>7}: {best * 1e3:9.3f} ms per simulated year")

    if len(results) == 2:
        same = all(a.tobytes() == b.tobytes() for a, b in
                   zip(kernels.dispatch_year_python(*call), kernels.dispatch_year_compiled(*call)))
        print(f"speedup: {results['python'] / results['cython']:.1f}x; outputs bit-identical: {same}")


if __name__ == "__main__":
    main()
