"""Time the numba and pure-numpy kernels side by side.

    python benchmarks/bench_kernels.py [--repeat N]

Both walk implementations consume the same counter-based stream, so their
outputs are compared for exact equality before timing.
"""

import argparse
import time

import numpy as np

from stabrec import kernels
from stabrec.protocol import probability_sequence
from stabrec.recovery import all_kraus, probe_inputs


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--trials", type=int, default=200_000)
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    cases = {
        "walk k=3 z=0": np.array(probability_sequence(0.5, 0.0, 2)),
        "walk k=20 z=0": np.array(probability_sequence(0.5, 0.0, 19)),
        "walk k=10 z^2=0.5": np.array(probability_sequence(0.5, np.sqrt(0.5), 9)),
    }
    kraus, _ = all_kraus()
    phis, psi = probe_inputs()
    rhos = np.stack([np.kron(p, psi) for p in phis])

    # warm-up compiles (or loads the on-disk cache)
    kernels.walk_numba(np.uint64(0), 10, cases["walk k=3 z=0"])
    kernels.sandwich_numba(kraus[:2], rhos)

    print(f"{'kernel':<22}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, q in cases.items():
        a = kernels.walk_numpy(1, args.trials, q)
        b = kernels.walk_numba(np.uint64(1), args.trials, q)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
        t_np = best_of(lambda: kernels.walk_numpy(1, args.trials, q), args.repeat)
        t_nb = best_of(lambda: kernels.walk_numba(np.uint64(1), args.trials, q), args.repeat)
        print(f"{name:<22}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}")

    diff = np.max(np.abs(kernels.sandwich_numpy(kraus, rhos) - kernels.sandwich_numba(kraus, rhos)))
    t_np = best_of(lambda: kernels.sandwich_numpy(kraus, rhos), args.repeat)
    t_nb = best_of(lambda: kernels.sandwich_numba(kraus, rhos), args.repeat)
    print(f"{'sandwich 23040x6':<22}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}")
    print(f"max |numpy - numba| on sandwich: {diff:.1e}")


if __name__ == "__main__":
    main()
