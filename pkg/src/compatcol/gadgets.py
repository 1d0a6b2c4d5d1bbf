"""Gadget constructions and the reductions built on them.

A type one ``X``-gadget is four fresh vertices whose internal edges force at
least one of them to take ``X``; joining it by ``X``-edges to a set ``S``
forbids colour ``X`` on ``S``.  A type two ``X``-gadget on a vertex pair
``uw`` is two fresh vertices that cannot both avoid ``X``-conflicts with
``u`` and ``w`` when both endpoints take ``X``.  Type one gadgets give the
list version of 3CC; both kinds together give the stubborn problem.

Inside a gadget the role colours are ``Y = X.succ`` and ``Z`` the remaining
colour.  Edges not fixed by a gadget's own definition follow one rule:

* type one ``X`` to type one ``X'``: the colour outside ``{X, X'}``
  (``X.succ`` when ``X == X'``);
* anything to a type two vertex: that gadget's ``Y``;
* type one ``X`` to any other vertex not in its ``S``: ``X.succ``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .instance import (
    ALL_COLOURS,
    Colour,
    ContractError,
    EdgeColouring,
    StubbornInstance,
    feasible_3cc,
    feasible_stubborn,
    third_colour,
)
from .solver import StatsCounter, solve

TYPE_ONE, TYPE_TWO = "type_one", "type_two"

# stubborn value <-> colour
STUBBORN_COLOURS = {Colour.R: (2,), Colour.G: (1, 3), Colour.B: (4,)}


@dataclass(frozen=True)
class GadgetRecord:
    kind: str
    colour: Colour
    vertices: tuple[int, ...]
    anchor_edge: tuple[int, int] | None = None

    @property
    def roles(self) -> tuple[Colour, Colour]:
        y = self.colour.succ
        return y, third_colour(self.colour, y)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "colour": self.colour.name, "vertices": list(self.vertices)}
        if self.anchor_edge is not None:
            d["anchor_edge"] = list(self.anchor_edge)
        return d


@dataclass(frozen=True)
class ReductionMap:
    original_n: int
    gadgets: tuple[GadgetRecord, ...] = ()
    colour_value_map: dict | None = field(default=None, compare=False)

    @property
    def vertex_index(self) -> tuple[int, ...]:
        return tuple(range(self.original_n))

    @property
    def reduced_n(self) -> int:
        return self.original_n + sum(len(g.vertices) for g in self.gadgets)

    def restrict(self, phi: Sequence) -> tuple:
        return tuple(phi[v] for v in self.vertex_index)

    def to_json(self) -> dict:
        d = {"original_n": self.original_n, "gadgets": [g.to_json() for g in self.gadgets]}
        if self.colour_value_map is not None:
            d["colour_value_map"] = self.colour_value_map
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "ReductionMap":
        gadgets = tuple(
            GadgetRecord(
                g["kind"], Colour[g["colour"]], tuple(g["vertices"]),
                tuple(g["anchor_edge"]) if "anchor_edge" in g else None,
            )
            for g in d["gadgets"]
        )
        return cls(d["original_n"], gadgets, d.get("colour_value_map"))


def _owner(gadgets: Iterable[GadgetRecord]) -> dict[int, GadgetRecord]:
    return {v: g for g in gadgets for v in g.vertices}


def _grow(inst: EdgeColouring, extra: int) -> np.ndarray:
    n = inst.n
    m = np.full((n + extra, n + extra), -1, dtype=np.int8)
    m[:n, :n] = inst.matrix
    return m


def add_type_one_gadget(inst: EdgeColouring, colour: Colour, S: Iterable[int] = (),
                        gadgets: Sequence[GadgetRecord] = ()) -> tuple[EdgeColouring, GadgetRecord]:
    """Append four vertices that forbid ``colour`` on every vertex of ``S``.

    ``gadgets`` lists gadgets already present in ``inst`` so that edges into
    them follow the default-colour rule.
    """
    x = Colour(colour)
    y, z = x.succ, third_colour(x, x.succ)
    S = set(S)
    n = inst.n
    if not S <= set(range(n)):
        raise ContractError("S must consist of existing vertices")
    owner = _owner(gadgets)
    m = _grow(inst, 4)
    new = list(range(n, n + 4))
    v1, v2, v3, v4 = new
    for a, b, c in ((v1, v2, y), (v3, v4, y), (v1, v3, z), (v1, v4, z), (v2, v3, z), (v2, v4, z)):
        m[a, b] = m[b, a] = c
    for w in range(n):
        if w in S:
            c = x
        elif w in owner and owner[w].kind == TYPE_ONE:
            other = owner[w].colour
            c = third_colour(x, other) if other != x else y
        elif w in owner:
            c = owner[w].roles[0]
        else:
            c = y
        m[new, w] = m[w, new] = c
    return EdgeColouring(m), GadgetRecord(TYPE_ONE, x, tuple(new))


def add_type_two_gadget(inst: EdgeColouring, u: int, w: int, colour: Colour,
                        gadgets: Sequence[GadgetRecord]) -> tuple[EdgeColouring, GadgetRecord]:
    """Append two vertices ruling out ``phi(u) == phi(w) == colour``.

    Needs a type one gadget of colour ``colour.succ`` among ``gadgets``.
    """
    x = Colour(colour)
    y, z = x.succ, third_colour(x, x.succ)
    if u == w:
        raise ContractError("type two gadget needs two distinct endpoints")
    n = inst.n
    if not (0 <= u < n and 0 <= w < n):
        raise ContractError("endpoints must be existing vertices")
    if not any(g.kind == TYPE_ONE and g.colour == y for g in gadgets):
        raise ContractError(f"type two {x.name}-gadget needs a type one {y.name}-gadget anchor")
    m = _grow(inst, 2)
    v0, v1 = n, n + 1
    m[:n, v0] = m[v0, :n] = y
    m[:n, v1] = m[v1, :n] = y
    for a, b, c in ((u, v0, x), (w, v1, x), (u, v1, y), (w, v0, y), (v0, v1, z)):
        m[a, b] = m[b, a] = c
    edge = (u, w) if u < w else (w, u)
    return EdgeColouring(m), GadgetRecord(TYPE_TWO, x, (v0, v1), edge)


def reduce_list_3cc(inst: EdgeColouring, lists: Sequence[frozenset]) -> tuple[EdgeColouring, ReductionMap]:
    """Plain 3CC instance equivalent to ``inst`` with per-vertex colour lists."""
    if len(lists) != inst.n:
        raise ContractError("one colour list per vertex required")
    gadgets: list[GadgetRecord] = []
    out = inst
    for c in Colour:
        S = [v for v in range(inst.n) if c not in lists[v]]
        out, rec = add_type_one_gadget(out, c, S, gadgets)
        gadgets.append(rec)
    return out, ReductionMap(inst.n, tuple(gadgets))


def _value_map() -> dict:
    return {c.name: list(vals) for c, vals in STUBBORN_COLOURS.items()}


def reduce_stubborn(inst: StubbornInstance) -> tuple[EdgeColouring, ReductionMap]:
    n = inst.n
    m = np.full((n, n), int(Colour.B), dtype=np.int8)
    for u, v in inst.edges:
        m[u, v] = m[v, u] = int(Colour.R)
    out = EdgeColouring(m)
    forbid = {
        Colour.R: [v for v in range(n) if 2 not in inst.lists[v]],
        Colour.G: [v for v in range(n) if not {1, 3} & inst.lists[v]],
        Colour.B: [v for v in range(n) if 4 not in inst.lists[v]],
    }
    gadgets: list[GadgetRecord] = []
    for c in Colour:
        out, rec = add_type_one_gadget(out, c, forbid[c], gadgets)
        gadgets.append(rec)
    for u, v in sorted(inst.edges):
        if 3 not in inst.lists[u] & inst.lists[v]:
            out, rec = add_type_two_gadget(out, u, v, Colour.G, gadgets)
            gadgets.append(rec)
    return out, ReductionMap(n, tuple(gadgets), _value_map())


def map_back_stubborn(rmap: ReductionMap, inst: StubbornInstance, phi: Sequence,
                      reduced: EdgeColouring | None = None) -> tuple[int, ...]:
    """Translate a colouring of the reduced instance into stubborn values."""
    if reduced is not None and not feasible_3cc(reduced, phi):
        raise ContractError("colouring is not feasible for the reduced instance")
    out = []
    for v in rmap.vertex_index:
        c = Colour(phi[v])
        if c == Colour.R:
            out.append(2)
        elif c == Colour.B:
            out.append(4)
        else:
            out.append(3 if 3 in inst.lists[v] else 1)
    result = tuple(out)
    if not feasible_stubborn(inst, result):
        raise ContractError("mapped colouring violates the stubborn constraints")
    return result


@dataclass(frozen=True)
class StubbornVerdict:
    sat: bool
    colouring: tuple | None
    stats: StatsCounter = field(compare=False)
    wall_time_ms: float = field(default=0.0, compare=False)


def solve_list_3cc(inst: EdgeColouring, lists: Sequence[frozenset] | None, verify: bool = False):
    """Solve 3CC with optional colour lists; returns a :class:`~compatcol.solver.Verdict`."""
    from .solver import Verdict

    if lists is None or all(l == ALL_COLOURS for l in lists):
        return solve(inst, verify)
    reduced, rmap = reduce_list_3cc(inst, lists)
    res = solve(reduced, verify)
    col = rmap.restrict(res.colouring) if res.sat else None
    return Verdict(res.sat, col, res.stats, res.wall_time_ms)


def solve_stubborn(inst: StubbornInstance, verify: bool = False) -> StubbornVerdict:
    reduced, rmap = reduce_stubborn(inst)
    res = solve(reduced, verify)
    if not res.sat:
        return StubbornVerdict(False, None, res.stats, res.wall_time_ms)
    return StubbornVerdict(True, map_back_stubborn(rmap, inst, res.colouring), res.stats, res.wall_time_ms)
