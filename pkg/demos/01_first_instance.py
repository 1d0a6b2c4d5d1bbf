"""
Solving a small compatible colouring instance
=============================================

Build an instance by hand, solve it, and look at the search counters.
"""

import numpy as np

from compatcol import Colour, EdgeColouring, feasible_3cc, solve
from compatcol.oracle import brute_force_3cc

R, G, B = Colour

# a triangle with two red sides and one blue side
inst = EdgeColouring.from_edges(3, {(0, 1): R, (1, 2): R, (0, 2): B})
print(inst.matrix)

res = solve(inst)
print("verdict:", "SAT" if res.sat else "UNSAT")
print("colouring:", "".join(c.letter for c in res.colouring))
assert feasible_3cc(inst, res.colouring)

# the brute-force oracle agrees, though it may pick another colouring
print("oracle:", "".join(c.letter for c in brute_force_3cc(inst)))

# counters gathered along the way
for key, value in res.stats.to_dict().items():
    print(f"  {key:22s} {value}")

# how often each vertex takes each colour across all feasible colourings
table = np.zeros((inst.n, 3), dtype=int)
for phi in np.ndindex(3, 3, 3):
    if feasible_3cc(inst, [Colour(c) for c in phi]):
        for v, c in enumerate(phi):
            table[v, c] += 1
print(table)
