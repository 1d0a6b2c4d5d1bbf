"""Polynomial-time 3-compatible colouring, the stubborn problem, and oracles."""

from .gadgets import (
    ReductionMap,
    add_type_one_gadget,
    add_type_two_gadget,
    map_back_stubborn,
    reduce_list_3cc,
    reduce_stubborn,
    solve_list_3cc,
    solve_stubborn,
)
from .instance import (
    Colour,
    ContractError,
    EdgeColouring,
    ParseError,
    StubbornInstance,
    feasible_3cc,
    feasible_stubborn,
    parse_3cc,
    parse_stubborn,
    serialize_3cc,
    serialize_stubborn,
)
from .oracle import brute_force_3cc, brute_force_stubborn
from .solver import Verdict, solve, solve_with_witness
from .twocolour import classify, oracle_classify

__all__ = [
    "Colour", "ContractError", "EdgeColouring", "ParseError", "ReductionMap",
    "StubbornInstance", "Verdict", "add_type_one_gadget", "add_type_two_gadget",
    "brute_force_3cc", "brute_force_stubborn", "classify", "feasible_3cc",
    "feasible_stubborn", "map_back_stubborn", "oracle_classify", "parse_3cc",
    "parse_stubborn", "reduce_list_3cc", "reduce_stubborn", "serialize_3cc",
    "serialize_stubborn", "solve", "solve_list_3cc", "solve_stubborn",
    "solve_with_witness",
]
