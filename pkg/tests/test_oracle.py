import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compatcol.instance import ALL_COLOURS, Colour, ContractError, EdgeColouring, StubbornInstance
from compatcol.oracle import MAX_3CC, MAX_STUBBORN, brute_force_3cc, brute_force_stubborn
from conftest import edge_colourings, from_letters

R, G, B = Colour


def test_single_red_edge_first_colouring():
    assert brute_force_3cc(from_letters(2, "R")) == (R, G)


def test_empty_and_trivial():
    assert brute_force_3cc(EdgeColouring.constant(0, R)) == ()
    assert brute_force_3cc(EdgeColouring.constant(1, G)) == (R,)
    assert brute_force_stubborn(StubbornInstance(0)) == ()


def test_lists_respected():
    inst = from_letters(2, "R")
    assert brute_force_3cc(inst, [frozenset({B}), ALL_COLOURS]) == (B, R)
    assert brute_force_3cc(inst, [frozenset(), ALL_COLOURS]) is None
    assert brute_force_3cc(inst, [frozenset({R}), frozenset({R})]) is None


def test_lexicographic_first():
    # all edges R: any colouring avoiding two R vertices works; first is (R, G, G)
    assert brute_force_3cc(from_letters(3, "RRR")) == (R, G, G)


@pytest.mark.parametrize(
    "edges, lists, expected",
    [
        ((), ({4},), (4,)),
        (((0, 1),), ({1}, {1}), None),
        (((0, 1),), ({1, 3}, {1, 3}), (3, 3)),
        ((), ({4}, {4}), None),  # non-adjacent pair inside part 4
        (((0, 1),), ({2}, {2}), None),
        (((0, 1), (1, 2), (0, 2)), ({4}, {4}, {4}), (4, 4, 4)),
    ],
)
def test_stubborn_examples(edges, lists, expected):
    inst = StubbornInstance(len(lists), frozenset(edges), tuple(frozenset(l) for l in lists))
    assert brute_force_stubborn(inst) == expected


def test_size_refusals():
    with pytest.raises(ContractError):
        brute_force_3cc(EdgeColouring.constant(MAX_3CC + 1, R))
    with pytest.raises(ContractError):
        brute_force_stubborn(StubbornInstance(MAX_STUBBORN + 1))


def _slow_3cc(inst):
    for phi in itertools.product(Colour, repeat=inst.n):
        if all(not (phi[u] == phi[v] == inst.colour(u, v)) for u, v in itertools.combinations(range(inst.n), 2)):
            return phi
    return None


@settings(max_examples=80, deadline=None)
@given(edge_colourings(max_n=6))
def test_matches_plain_loop(inst):
    assert brute_force_3cc(inst) == _slow_3cc(inst)


@settings(max_examples=60, deadline=None)
@given(edge_colourings(max_n=7), st.randoms(use_true_random=False))
def test_relabel_invariance(inst, rnd):
    perm = list(range(inst.n))
    rnd.shuffle(perm)
    assert (brute_force_3cc(inst) is None) == (brute_force_3cc(inst.permuted(perm)) is None)
