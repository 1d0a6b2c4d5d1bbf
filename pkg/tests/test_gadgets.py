import itertools
import json

import numpy as np
import pytest

from compatcol.gadgets import (
    TYPE_ONE,
    TYPE_TWO,
    GadgetRecord,
    ReductionMap,
    add_type_one_gadget,
    add_type_two_gadget,
    map_back_stubborn,
    reduce_list_3cc,
    reduce_stubborn,
    solve_list_3cc,
    solve_stubborn,
)
from compatcol.generate import derive_seed, random_stubborn, uniform_3cc
from compatcol.instance import (
    ALL_COLOURS,
    Colour,
    ContractError,
    EdgeColouring,
    StubbornInstance,
    feasible_3cc,
    feasible_list_3cc,
    feasible_stubborn,
)
from compatcol.oracle import brute_force_3cc, brute_force_stubborn
from compatcol.solver import solve
from conftest import from_letters

R, G, B = Colour


def feasible_table(inst: EdgeColouring) -> tuple[np.ndarray, np.ndarray]:
    """All 3**n assignments and a mask of the feasible ones."""
    n = inst.n
    a = np.array(list(itertools.product(range(3), repeat=n)), dtype=np.int8).reshape(-1, n)
    ok = np.ones(len(a), dtype=bool)
    for u, v in itertools.combinations(range(n), 2):
        c = inst.matrix[u, v]
        ok &= ~((a[:, u] == c) & (a[:, v] == c))
    return a, ok


def restrictions(inst: EdgeColouring, k: int) -> set[tuple]:
    a, ok = feasible_table(inst)
    return {tuple(row[:k]) for row in a[ok]}


@pytest.mark.parametrize("x", list(Colour))
def test_type_one_internal_property(x):
    inst, rec = add_type_one_gadget(EdgeColouring.constant(0, R), x)
    assert rec.vertices == (0, 1, 2, 3) and rec.roles == (x.succ, Colour(3 - x - x.succ))
    a, ok = feasible_table(inst)
    assert len(a) == 81
    assert all((row == x).any() for row in a[ok])
    assert ok[np.flatnonzero((a == x).all(axis=1))[0]]


@pytest.mark.parametrize("x", list(Colour))
def test_type_one_wiring(x):
    base = from_letters(3, "RGB")
    inst, rec = add_type_one_gadget(base, x, {1})
    y, z = rec.roles
    v1, v2, v3, v4 = rec.vertices
    assert inst.colour(v1, v2) == inst.colour(v3, v4) == y
    for a, b in ((v1, v3), (v1, v4), (v2, v3), (v2, v4)):
        assert inst.colour(a, b) == z
    for v in rec.vertices:
        assert inst.colour(v, 1) == x and inst.colour(v, 0) == inst.colour(v, 2) == y


def test_type_one_empty_set_preserves_feasibility():
    for k in range(30):
        base = uniform_3cc(4, derive_seed(11, k))
        for x in Colour:
            inst, _ = add_type_one_gadget(base, x)
            assert restrictions(inst, 4) == restrictions(base, 4)


def test_type_one_lemma_on_random_bases():
    rng = np.random.default_rng(5)
    for k in range(40):
        base = uniform_3cc(4, derive_seed(12, k))
        x = Colour(int(rng.integers(3)))
        S = {v for v in range(4) if rng.random() < 0.5}
        inst, _ = add_type_one_gadget(base, x, S)
        expected = {phi for phi in restrictions(base, 4) if all(phi[v] != x for v in S)}
        assert restrictions(inst, 4) == expected


def test_all_three_type_one_gadgets_on_one_vertex_unsat():
    inst = EdgeColouring.constant(1, R)
    gadgets = []
    for x in Colour:
        inst, rec = add_type_one_gadget(inst, x, {0}, gadgets)
        gadgets.append(rec)
    assert inst.n == 13
    assert brute_force_3cc(inst) is None


def _composite(base, u, w, x):
    y = x.succ
    inst, anchor = add_type_one_gadget(base, y)
    inst, rec = add_type_two_gadget(inst, u, w, x, [anchor])
    return inst, anchor, rec


def test_type_two_wiring():
    base = from_letters(3, "RRR")
    inst, anchor, rec = _composite(base, 0, 2, G)
    v0, v1 = rec.vertices
    assert rec.anchor_edge == (0, 2) and rec.roles == (B, R)
    assert inst.colour(0, v0) == inst.colour(2, v1) == G
    assert inst.colour(0, v1) == inst.colour(2, v0) == B
    assert inst.colour(v0, v1) == R
    assert all(inst.colour(v, a) == B for v in rec.vertices for a in anchor.vertices)
    assert inst.colour(1, v0) == inst.colour(1, v1) == B


def test_type_two_exhaustive_on_three_vertex_bases():
    # every base colouring on three vertices, every gadget colour, every pair
    for letters in itertools.product("RGB", repeat=3):
        base = from_letters(3, "".join(letters))
        base_ok = restrictions(base, 3)
        for x in Colour:
            for u, w in itertools.combinations(range(3), 2):
                inst, _, _ = _composite(base, u, w, x)
                assert inst.n == 9
                expected = {phi for phi in base_ok if not (phi[u] == phi[w] == x)}
                assert restrictions(inst, 3) == expected, (letters, x, u, w)


def test_type_two_forced_endpoints_unsat():
    # u and w forced to G by type one R- and B-gadgets, then a type two G-gadget
    base = from_letters(2, "R")
    inst, gadgets = base, []
    for x in (R, B):
        inst, rec = add_type_one_gadget(inst, x, {0, 1}, gadgets)
        gadgets.append(rec)
    forced = brute_force_3cc(inst)
    assert forced is not None and forced[:2] == (G, G)
    assert restrictions(inst, 2) == {(G, G)}
    inst, _ = add_type_two_gadget(inst, 0, 1, G, gadgets)
    assert inst.n == 12
    assert brute_force_3cc(inst) is None


def test_type_two_with_lists_already_blocking():
    base = from_letters(2, "R")
    inst, rec = add_type_one_gadget(base, G, {0, 1})
    anchor_inst, anchor = add_type_one_gadget(inst, B, (), [rec])
    out, _ = add_type_two_gadget(anchor_inst, 0, 1, G, [rec, anchor])
    assert brute_force_3cc(out) is not None


def test_type_two_needs_anchor():
    with pytest.raises(ContractError):
        add_type_two_gadget(from_letters(2, "R"), 0, 1, G, [])
    inst, anchor = add_type_one_gadget(from_letters(2, "R"), B)
    with pytest.raises(ContractError):
        add_type_two_gadget(inst, 0, 0, G, [anchor])


def test_reduce_list_full_lists_equivalent():
    for k in range(20):
        base = uniform_3cc(4, derive_seed(13, k))
        reduced, rmap = reduce_list_3cc(base, [ALL_COLOURS] * 4)
        assert reduced.n == 16 and rmap.reduced_n == 16
        assert solve(reduced, verify=True).sat == (brute_force_3cc(base) is not None)
    base = from_letters(2, "G")
    reduced, _ = reduce_list_3cc(base, [ALL_COLOURS] * 2)
    assert restrictions(reduced, 2) == restrictions(base, 2)


def test_reduce_list_empty_list_unsat():
    base = from_letters(2, "R")
    reduced, _ = reduce_list_3cc(base, [frozenset(), ALL_COLOURS])
    assert brute_force_3cc(reduced) is None


def test_reduce_list_random_agrees_with_list_oracle():
    rng = np.random.default_rng(9)
    subsets = [frozenset(c for c in Colour if mask >> c & 1) for mask in range(8)]
    for k in range(60):
        n = int(rng.integers(1, 6))
        base = uniform_3cc(n, derive_seed(14, k))
        lists = [subsets[int(rng.integers(1, 8))] for _ in range(n)]
        truth = brute_force_3cc(base, lists)
        reduced, rmap = reduce_list_3cc(base, lists)
        res = solve_list_3cc(base, lists)
        assert res.sat == (truth is not None)
        if res.sat:
            assert feasible_list_3cc(base, lists, res.colouring)
        if reduced.n <= 14:
            assert (brute_force_3cc(reduced) is None) == (truth is None)


def test_stubborn_single_vertex_four():
    inst = StubbornInstance(1, frozenset(), (frozenset({4}),))
    reduced, rmap = reduce_stubborn(inst)
    assert reduced.n == 13
    phi = brute_force_3cc(reduced)
    assert phi is not None and phi[0] == B
    assert map_back_stubborn(rmap, inst, phi, reduced) == (4,)
    assert solve_stubborn(inst).colouring == (4,)


def test_stubborn_edge_with_ones_unsat():
    inst = StubbornInstance(2, frozenset({(0, 1)}), (frozenset({1}), frozenset({1})))
    reduced, rmap = reduce_stubborn(inst)
    assert reduced.n == 2 + 12 + 2
    assert brute_force_stubborn(inst) is None
    assert not solve(reduced, verify=True).sat
    assert not solve_stubborn(inst).sat


def test_stubborn_empty_graph():
    inst = StubbornInstance(4)
    res = solve_stubborn(inst)
    assert res.sat and feasible_stubborn(inst, res.colouring)
    assert brute_force_stubborn(inst) == (1, 1, 1, 1)


def test_stubborn_reduction_shape():
    inst = StubbornInstance(
        4, frozenset({(0, 1), (1, 2), (2, 3)}),
        (frozenset({1, 3}), frozenset({1, 2}), frozenset({3}), frozenset({4})),
    )
    reduced, rmap = reduce_stubborn(inst)
    kinds = [(g.kind, g.colour) for g in rmap.gadgets]
    assert kinds[:3] == [(TYPE_ONE, R), (TYPE_ONE, G), (TYPE_ONE, B)]
    twos = [g for g in rmap.gadgets if g.kind == TYPE_TWO]
    # no edge has 3 in both endpoint lists, so every edge gets a type two gadget
    assert [g.anchor_edge for g in twos] == [(0, 1), (1, 2), (2, 3)]
    assert reduced.n == inst.n + 12 + 2 * len(twos) == rmap.reduced_n
    assert rmap.vertex_index == (0, 1, 2, 3)
    for u, v in itertools.combinations(range(4), 2):
        assert reduced.colour(u, v) == (R if inst.has_edge(u, v) else B)
    vertex_sets = [set(g.vertices) for g in rmap.gadgets]
    assert sum(map(len, vertex_sets)) == len(set().union(*vertex_sets))


def test_reduction_map_json_round_trip():
    inst = random_stubborn(5, 0.6, 3)
    _, rmap = reduce_stubborn(inst)
    d = json.loads(rmap.dumps())
    assert set(d) == {"original_n", "gadgets", "colour_value_map"}
    assert d["colour_value_map"] == {"R": [2], "G": [1, 3], "B": [4]}
    assert ReductionMap.from_json(d) == rmap


@pytest.mark.parametrize(
    "lists, colour, expected",
    [
        ({4}, B, 4),
        ({1, 3}, G, 3),
        ({1}, G, 1),
        ({2}, R, 2),
    ],
)
def test_map_back_values(lists, colour, expected):
    inst = StubbornInstance(1, frozenset(), (frozenset(lists),))
    rmap = ReductionMap(1, ())
    assert map_back_stubborn(rmap, inst, (colour,)) == (expected,)


def test_map_back_rejects_bad_colouring():
    inst = StubbornInstance(1, frozenset(), (frozenset({2}),))
    with pytest.raises(ContractError):
        map_back_stubborn(ReductionMap(1, ()), inst, (B,))
    reduced, rmap = reduce_stubborn(inst)
    with pytest.raises(ContractError):
        map_back_stubborn(rmap, inst, (R,) * reduced.n, reduced)


def test_stubborn_random_against_oracle():
    for n in range(1, 6):
        for k in range(25):
            inst = random_stubborn(n, 0.5, derive_seed(100 + n, k))
            res = solve_stubborn(inst, verify=k < 5)
            assert res.sat == (brute_force_stubborn(inst) is not None)
            if res.sat:
                assert feasible_stubborn(inst, res.colouring)
            assert res.stats.clean


def test_gadget_record_json():
    rec = GadgetRecord(TYPE_TWO, G, (7, 8), (0, 1))
    assert rec.to_json() == {"kind": "type_two", "colour": "G", "vertices": [7, 8], "anchor_edge": [0, 1]}
    assert feasible_3cc(from_letters(2, "R"), (G, R))
