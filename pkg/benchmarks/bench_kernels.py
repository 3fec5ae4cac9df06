"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from sigmau import _kernels_py, kernels


def cases(rng: np.random.Generator):
    xs, ys = rng.normal(size=720), rng.normal(size=720)
    mod = rng.uniform(1, 1000, 4000)
    arg = rng.uniform(0, 2 * np.pi, 4000)
    re, im = mod * np.cos(arg), mod * np.sin(arg)
    yield "min_enclosing_circle (720 pts)", "min_enclosing_circle", (xs, ys)
    yield "log_abs_product (4000 zeros)", "log_abs_product", (re, im, 30.5, 12.25)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = [("python", _kernels_py)]
    if kernels.compiled_backend is not None:
        backends.append(("cython", kernels.compiled_backend))
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':34s} " + " ".join(f"{name:>12s}" for name, _ in backends) + "   speedup")
    for label, fn, call_args in cases(rng):
        times = []
        for _, mod in backends:
            f = getattr(mod, fn)
            times.append(min(timeit.repeat(lambda: f(*call_args), number=1, repeat=args.repeat)))
        cols = " ".join(f"{t * 1e3:10.3f}ms" for t in times)
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
        print(f"{label:34s} {cols} {speed}")


if __name__ == "__main__":
    main()
