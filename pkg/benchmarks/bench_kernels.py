"""Compare the numba kernels with their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on the same inputs under both backends; outputs are checked
equal before timings are printed. The first numba call (compilation) is
excluded.
"""

import argparse
import time

import numpy as np

from domdual import _kernels as K
from domdual.corpus import _candidate_perms, poset_levels
from domdual.fixtures import antichain, chain
from domdual.lattice import certify_lattice
from domdual.domain import upper_set_lattice


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    rel = rng.random((60, 60)) < 0.05
    rel = np.triu(rel, 1)
    yield "closure 60x60", K.closure_numba, K.closure_numpy, (rel,)

    A = antichain(16)
    yield "upper sets, 16-antichain", K.upper_sets_numba, K.upper_sets_numpy, \
        (np.array(A.up_masks, dtype=np.int64),)

    L = upper_set_lattice(antichain(4)).lattice  # the 16-element boolean lattice
    args = (np.array(L.poset.up_masks, dtype=np.int64), L.meet_table.astype(np.int64),
            L.join_table.astype(np.int64), L.top, L.bottom)
    yield "prime filters, 2^4", K.prime_filters_numba, K.prime_filters_numpy, args

    C = certify_lattice(chain(20))
    args = (np.array(C.poset.up_masks, dtype=np.int64), C.meet_table.astype(np.int64),
            C.join_table.astype(np.int64), C.top, C.bottom)
    yield "prime filters, 20-chain", K.prime_filters_numba, K.prime_filters_numpy, args

    P = antichain(8)
    perms = _candidate_perms(P)
    yield f"min code, 8-antichain ({len(perms)} perms)", K.min_code_numba, K.min_code_numpy, \
        (np.ascontiguousarray(P.leq), perms)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    print(f"{'kernel':<38} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, fast, slow, inputs in cases():
        fast(*inputs)  # compile
        tf, a = _time(fast, inputs, args.repeat)
        ts, b = _time(slow, inputs, args.repeat)
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) \
            else np.array_equal(a, b)
        assert same, f"backends disagree on {name}"
        print(f"{name:<38} {tf * 1e3:>8.2f}ms {ts * 1e3:>8.2f}ms {ts / tf:>7.1f}x")
    t = time.perf_counter()
    poset_levels(6)
    print(f"poset census to size 6 with backend {K.BACKEND}: {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
