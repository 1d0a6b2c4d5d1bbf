"""
From a Stubborn instance to a compatible colouring
==================================================

Reduce a list partition instance with gadgets, solve the colouring
instance, and read the partition back.
"""

import json

from compatcol import StubbornInstance, feasible_stubborn
from compatcol.gadgets import map_back_stubborn, reduce_stubborn
from compatcol.oracle import brute_force_stubborn
from compatcol.solver import solve

# a path 0-1-2-3; vertex 3 must sit in the clique part
inst = StubbornInstance(
    4,
    frozenset({(0, 1), (1, 2), (2, 3)}),
    (frozenset({1, 3}), frozenset({1, 2, 3}), frozenset({2, 3}), frozenset({4})),
)

reduced, rmap = reduce_stubborn(inst)
print(f"{inst.n} original vertices, {reduced.n} after reduction")
for g in rmap.gadgets:
    print(" ", g.kind, g.colour.letter, g.vertices, g.anchor_edge or "")

res = solve(reduced)
parts = map_back_stubborn(rmap, inst, res.colouring, reduced)
print("parts:", parts)
assert feasible_stubborn(inst, parts)
print("oracle:", brute_force_stubborn(inst))

# the reduction map is plain JSON
print(json.dumps(rmap.to_json()["colour_value_map"]))
