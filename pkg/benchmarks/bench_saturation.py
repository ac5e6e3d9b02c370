"""Compare the numba worklist kernel with the numpy matrix fallback.

Both backends compute the full closure of the same normalized rules, so the
numbers measure the kernels alone.

    python benchmarks/bench_saturation.py [--sizes 100 200 400 800] [--repeat 5]
"""
import argparse
import time

from dlcontrast._accel import HAVE_NUMBA
from dlcontrast.generators import synthetic_ontology
from dlcontrast.reasoner import normalize, saturate


def timed(backend, axioms, repeat):
    rules = normalize(axioms)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        saturate(rules, backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    warm = synthetic_ontology(25, seed=0).axioms
    for b in backends:
        timed(b, warm, 1)  # compile outside the measurement
    print(f"{'axioms':>7} " + " ".join(f"{b + ' ms':>10}" for b in backends))
    for n in args.sizes:
        axioms = synthetic_ontology(n, seed=n).axioms
        cells = [f"{1000 * timed(b, axioms, args.repeat):10.2f}" for b in backends]
        print(f"{len(axioms):>7} " + " ".join(cells))


if __name__ == "__main__":
    main()
