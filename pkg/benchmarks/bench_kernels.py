"""Compare the compiled and pure-Python GF(2) kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times the three hot paths (RREF of random row sets, orbit BFS on the
4-subspaces of F_2^8 under the bundled Singer normalizer, and one Λ slice)
on every importable backend and checks that the results agree.
"""

from __future__ import annotations

import argparse
import random
import time

from qtd import kernels
from qtd.io import bundled, load_group
from qtd.subspace import enumerate_subspaces


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    rng = random.Random(1)
    v = 8
    row_sets = [[rng.randrange(1 << v) for _ in range(4)] for _ in range(20000)]

    G = load_group(bundled("singer_normalizer_v8_q2.grp"))
    tables = [list(g.table) for g in G.generators]
    keys = sorted(kernels.pack_rows(S.rows, v) for S in enumerate_subspaces(v, 4, 2))

    cls = [0] + [x % 5 for x in range(1, 1 << v)]

    backends = kernels.backends()
    print(f"active backend: {kernels.BACKEND}; available: {', '.join(backends)}")
    results = {}
    for name, mod in backends.items():
        t_rref, r1 = best_of(lambda: [mod.rref_rows(r, v) for r in row_sets], args.repeat)
        t_orb, r2 = best_of(lambda: list(mod.orbit_ids(keys, tables, v, 4)), 1)
        t_lam, r3 = best_of(lambda: list(mod.lambda_counts(1, cls, 5)), args.repeat)
        results[name] = (r1, r2, r3)
        print(f"{name:>7}: rref x{len(row_sets)} {t_rref:8.3f}s | "
              f"orbits on {len(keys)} 4-spaces {t_orb:8.3f}s | lambda slice {t_lam:8.4f}s")
    ref = results["python"]
    for name, res in results.items():
        assert res == ref, f"{name} disagrees with the pure-Python kernels"
    print("all backends agree")


if __name__ == "__main__":
    main()
