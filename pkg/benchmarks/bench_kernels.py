"""Time the compiled chain kernel against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--steps N] [--repeat R]

Both backends consume the same random draws, so the script also checks
that they end in the same state.
"""
import argparse
import time

from emergent import kernels
from emergent.montecarlo import ChainConfig, run_chain
from emergent.solids import CoupledSolids

SYSTEMS = [CoupledSolids(3, 3, 6), CoupledSolids(150, 150, 300), CoupledSolids(1500, 1500, 3000)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python fallback is available")
    config = ChainConfig(args.steps, 0, 12345, 10)
    print(f"{'system':>20} {'backend':>8} {'seconds':>9} {'Msteps/s':>9} {'speedup':>8}")
    for sys_ in SYSTEMS:
        label = f"({sys_.n_a},{sys_.n_b},{sys_.q_total})"
        results = {}
        for name in backends:
            t, res = best_of(lambda: run_chain(sys_, "all-in-B", config, backend=name), args.repeat)
            results[name] = (t, res)
        base = results["python"][0]
        for name, (t, _) in results.items():
            print(f"{label:>20} {name:>8} {t:9.3f} {args.steps / t / 1e6:9.2f} {base / t:7.1f}x")
        traces = [res.trace.tobytes() for _, res in results.values()]
        assert all(tr == traces[0] for tr in traces), "backends disagree"


if __name__ == "__main__":
    main()
