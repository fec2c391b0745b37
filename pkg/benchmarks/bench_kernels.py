"""Compare the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from gencliff.linalg import HAVE_NUMBA, count_walks, rank_mod_p


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    rng = np.random.default_rng(0)

    cases = []
    for size, p in ((60, 2), (150, 5), (300, 2147483647)):
        mat = rng.integers(0, p, size=(size, size + 20))
        cases.append((f"rank_mod_p {size}x{size + 20} p={p}",
                      {b: (lambda b=b, mat=mat, p=p: rank_mod_p(mat, p, backend=b)) for b in backends}))
    for states, letters, length in ((200, 2, 60), (5000, 4, 30)):
        delta = rng.integers(-1, states, size=(states, letters))
        cases.append((f"count_walks states={states} letters={letters} len={length}",
                      {b: (lambda b=b, delta=delta, n=length: count_walks(delta, n, backend=b)) for b in backends}))

    print(f"{'kernel':<48}" + "".join(f"{b:>12}" for b in backends))
    for name, fns in cases:
        for fn in fns.values():
            fn()  # warm-up, includes jit compilation
        results = {b: _best(fn, args.repeat) for b, fn in fns.items()}
        assert len({str(fn()) for fn in fns.values()}) == 1, name
        print(f"{name:<48}" + "".join(f"{results[b] * 1e3:>10.2f}ms" for b in backends))
    if not HAVE_NUMBA:
        print("numba unavailable or disabled; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
