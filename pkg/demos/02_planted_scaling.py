"""
Planted instances and the search bounds
=======================================

Planted instances hide a feasible colouring, so the solver must say SAT.
We watch how operations per path and leaf counts compare with n and the
root mass as n grows.
"""

import time

import numpy as np

from compatcol.generate import derive_seed, planted_3cc
from compatcol.solver import solve

sizes = [10, 25, 50, 100, 150]
rows = []
for n in sizes:
    ops, leaves, mass, times = [], [], [], []
    for k in range(10):
        inst, hidden = planted_3cc(n, derive_seed(n, k))
        t0 = time.perf_counter()
        res = solve(inst)
        times.append(time.perf_counter() - t0)
        assert res.sat and res.stats.clean
        ops.append(res.stats.max_ops_per_path / n)
        leaves.append(res.stats.max_root_leaves)
        mass.append(res.stats.root_mass)
    rows.append((n, np.mean(ops), np.max(leaves), np.median(mass), 1000 * np.mean(times)))

print(f"{'n':>5} {'ops/n':>7} {'leaves':>7} {'root mass':>10} {'ms':>8}")
for n, o, l, m, t in rows:
    print(f"{n:5d} {o:7.2f} {l:7d} {m:10.0f} {t:8.1f}")

# ops per path stays below 3n; leaves stay far below the root mass
