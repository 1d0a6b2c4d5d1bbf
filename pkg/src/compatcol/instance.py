"""Problem data types, feasibility checkers and text file formats.

Two problems live here:

* 3-compatible colouring (3CC): a complete graph whose edges carry one of
  the colours R, G, B.  A vertex colouring is feasible when no edge has both
  endpoints painted with the edge's own colour.
* The stubborn list-partition problem: a simple graph with a list of allowed
  parts (subsets of 1..4) per vertex.

Edge colourings are stored as a dense ``int8`` matrix with ``-1`` on the
diagonal, which keeps the hot loops in the solver and the oracles vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np


class ContractError(ValueError):
    """A caller broke an operation's precondition."""


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class Colour(IntEnum):
    R = 0
    G = 1
    B = 2

    @property
    def succ(self) -> "Colour":
        return Colour((self + 1) % 3)

    @property
    def letter(self) -> str:
        return self.name

    @classmethod
    def from_letter(cls, letter: str) -> "Colour":
        try:
            return cls[letter]
        except KeyError:
            raise ValueError(f"unknown colour {letter!r}") from None

    def others(self) -> tuple["Colour", "Colour"]:
        """The two remaining colours, in ascending order."""
        return tuple(c for c in Colour if c != self)  # type: ignore[return-value]


def third_colour(a: Colour, b: Colour) -> Colour:
    if a == b:
        raise ContractError("third_colour needs two distinct colours")
    return Colour(3 - a - b)


VertexColouring = tuple  # tuple[Colour, ...]
ColourList = frozenset  # frozenset[Colour]
ALL_COLOURS: frozenset = frozenset(Colour)


class EdgeColouring:
    """An immutable 3CC instance: complete graph on ``n`` vertices."""

    __slots__ = ("_matrix", "__dict__")

    def __init__(self, matrix: np.ndarray):
        m = np.array(matrix, dtype=np.int8, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ContractError("edge colouring matrix must be square")
        n = m.shape[0]
        np.fill_diagonal(m, -1)
        off = ~np.eye(n, dtype=bool)
        if not np.array_equal(m, m.T):
            raise ContractError("edge colouring must be symmetric")
        if n > 1 and (m[off].min() < 0 or m[off].max() > 2):
            raise ContractError("every edge needs a colour in {R, G, B}")
        m.setflags(write=False)
        self._matrix = m

    @classmethod
    def from_edges(cls, n: int, colours: Mapping[tuple[int, int], Colour]) -> "EdgeColouring":
        m = np.full((n, n), -1, dtype=np.int8)
        for (u, v), c in colours.items():
            m[u, v] = m[v, u] = int(c)
        return cls(m)

    @classmethod
    def constant(cls, n: int, colour: Colour) -> "EdgeColouring":
        return cls(np.full((n, n), int(colour), dtype=np.int8))

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Read-only ``n x n`` int8 view; diagonal entries are -1."""
        return self._matrix

    def colour(self, u: int, v: int) -> Colour:
        if u == v:
            raise ContractError("no self-loops in a 3CC instance")
        return Colour(int(self._matrix[u, v]))

    def edges(self) -> Iterable[tuple[int, int, Colour]]:
        for u, v in combinations(range(self.n), 2):
            yield u, v, Colour(int(self._matrix[u, v]))

    def permuted(self, perm: Sequence[int]) -> "EdgeColouring":
        """Relabel so that old vertex ``i`` becomes ``perm[i]``."""
        inv = np.argsort(np.asarray(perm))
        return EdgeColouring(self._matrix[np.ix_(inv, inv)])

    def restricted(self, k: int) -> "EdgeColouring":
        return EdgeColouring(self._matrix[:k, :k])

    @cached_property
    def neighbours(self) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
        """``neighbours[c][v]``: ascending list of ``w`` with ``colour(v, w) == c``."""
        out = []
        for c in range(3):
            hits = self._matrix == c
            out.append([np.flatnonzero(row).tolist() for row in hits])
        return tuple(out)  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeColouring) and np.array_equal(self._matrix, other._matrix)

    def __hash__(self) -> int:
        return hash(self._matrix.tobytes())

    def __repr__(self) -> str:
        return f"EdgeColouring(n={self.n})"


@dataclass(frozen=True)
class StubbornInstance:
    n: int
    edges: frozenset = field(default_factory=frozenset)
    lists: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise ContractError("vertex count must be non-negative")
        edges = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ContractError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ContractError(f"edge {e} out of range")
            edges.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(edges))
        lists = tuple(frozenset(l) for l in self.lists) if self.lists else tuple(
            frozenset({1, 2, 3, 4}) for _ in range(self.n)
        )
        if len(lists) != self.n:
            raise ContractError("need exactly one list per vertex")
        for v, l in enumerate(lists):
            if not l <= {1, 2, 3, 4}:
                raise ContractError(f"list of vertex {v} leaves 1..4")
        object.__setattr__(self, "lists", lists)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


FORBIDDEN_EDGE_VALUES = (frozenset({1}), frozenset({2}), frozenset({1, 3}))


def feasible_3cc(inst: EdgeColouring, phi: Sequence[int]) -> bool:
    if len(phi) != inst.n:
        raise ContractError(f"colouring has {len(phi)} entries for {inst.n} vertices")
    if inst.n < 2:
        return True
    p = np.asarray([int(c) for c in phi], dtype=np.int8)
    m = inst.matrix
    bad = (p[:, None] == m) & (p[None, :] == m)
    return not bad.any()


def feasible_list_3cc(inst: EdgeColouring, lists: Sequence[frozenset], phi: Sequence[int]) -> bool:
    if len(lists) != inst.n:
        raise ContractError("one colour list per vertex required")
    return all(Colour(c) in l for c, l in zip(phi, lists)) and feasible_3cc(inst, phi)


def feasible_stubborn(inst: StubbornInstance, phi: Sequence[int]) -> bool:
    if len(phi) != inst.n:
        raise ContractError(f"colouring has {len(phi)} entries for {inst.n} vertices")
    if any(val not in lst for val, lst in zip(phi, inst.lists)):
        return False
    fours = [v for v in range(inst.n) if phi[v] == 4]
    if any(not inst.has_edge(u, v) for u, v in combinations(fours, 2)):
        return False
    return all(frozenset({phi[u], phi[v]}) not in FORBIDDEN_EDGE_VALUES for u, v in inst.edges)


# ---------------------------------------------------------------------------
# text formats


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", lineno) from None


def _vertex(tok: str, n: int, lineno: int) -> int:
    v = _int(tok, lineno, "vertex")
    if not 0 <= v < n:
        raise ParseError(f"vertex {v} out of range 0..{n - 1}", lineno)
    return v


def _parse_header(text: str, kind: str):
    it = _lines(text)
    for lineno, toks in it:
        if toks[0] != "p":
            raise ParseError("expected problem line before data", lineno)
        if len(toks) < 2 or toks[1] != kind:
            raise ParseError(f"expected 'p {kind}' header", lineno)
        return lineno, toks, it
    raise ParseError("empty file: missing problem line")


def parse_3cc(text: str) -> tuple[EdgeColouring, tuple | None]:
    """Parse a 3CC file; returns the instance and the list table (or None)."""
    lineno, toks, it = _parse_header(text, "3cc")
    if len(toks) != 3:
        raise ParseError("header must be 'p 3cc <n>'", lineno)
    n = _int(toks[2], lineno, "vertex count")
    if n < 0:
        raise ParseError("vertex count must be non-negative", lineno)
    m = np.full((n, n), -1, dtype=np.int8)
    lists: dict[int, frozenset] = {}
    seen = 0
    for lineno, toks in it:
        tag = toks[0]
        if tag == "e":
            if len(toks) != 4:
                raise ParseError("edge line must be 'e <u> <v> <colour>'", lineno)
            u, v = _vertex(toks[1], n, lineno), _vertex(toks[2], n, lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            try:
                c = Colour.from_letter(toks[3])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if m[u, v] != -1:
                raise ParseError(f"duplicate edge {min(u, v)} {max(u, v)}", lineno)
            m[u, v] = m[v, u] = int(c)
            seen += 1
        elif tag == "l":
            if len(toks) not in (2, 3):
                raise ParseError("list line must be 'l <v> <subset>'", lineno)
            v = _vertex(toks[1], n, lineno)
            if v in lists:
                raise ParseError(f"second list line for vertex {v}", lineno)
            letters = toks[2] if len(toks) == 3 else ""
            try:
                lists[v] = frozenset(Colour.from_letter(ch) for ch in letters)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        elif tag == "p":
            raise ParseError("second problem line", lineno)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if seen != n * (n - 1) // 2:
        raise ParseError(f"incomplete graph: {seen} of {n * (n - 1) // 2} edges given")
    table = None
    if lists:
        table = tuple(lists.get(v, ALL_COLOURS) for v in range(n))
    return EdgeColouring(m), table


def _subset_str(s: Iterable, order: str) -> str:
    return "".join(ch for ch in order if ch in {str(x) for x in s})


def serialize_3cc(inst: EdgeColouring, lists: Sequence[frozenset] | None = None) -> str:
    out = [f"p 3cc {inst.n}"]
    out += [f"e {u} {v} {c.letter}" for u, v, c in inst.edges()]
    if lists is not None:
        for v, l in enumerate(lists):
            letters = "".join(c.letter for c in sorted(l))
            out.append(f"l {v} {letters}".rstrip())
    return "\n".join(out) + "\n"


def parse_stubborn(text: str) -> StubbornInstance:
    lineno, toks, it = _parse_header(text, "stubborn")
    if len(toks) != 4:
        raise ParseError("header must be 'p stubborn <n> <m>'", lineno)
    n = _int(toks[2], lineno, "vertex count")
    m = _int(toks[3], lineno, "edge count")
    if n < 0 or m < 0:
        raise ParseError("counts must be non-negative", lineno)
    edges: set[tuple[int, int]] = set()
    lists: dict[int, frozenset] = {}
    for lineno, toks in it:
        tag = toks[0]
        if tag == "e":
            if len(toks) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            u, v = _vertex(toks[1], n, lineno), _vertex(toks[2], n, lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            e = (min(u, v), max(u, v))
            if e in edges:
                raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno)
            edges.add(e)
        elif tag == "l":
            if len(toks) not in (2, 3):
                raise ParseError("list line must be 'l <v> <subset>'", lineno)
            v = _vertex(toks[1], n, lineno)
            if v in lists:
                raise ParseError(f"second list line for vertex {v}", lineno)
            values = toks[2] if len(toks) == 3 else ""
            if any(ch not in "1234" for ch in values):
                raise ParseError(f"list {values!r}: value outside 1..4", lineno)
            lists[v] = frozenset(int(ch) for ch in values)
        elif tag == "p":
            raise ParseError("second problem line", lineno)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were given")
    full = frozenset({1, 2, 3, 4})
    return StubbornInstance(n, frozenset(edges), tuple(lists.get(v, full) for v in range(n)))


def serialize_stubborn(inst: StubbornInstance) -> str:
    out = [f"p stubborn {inst.n} {len(inst.edges)}"]
    out += [f"e {u} {v}" for u, v in sorted(inst.edges)]
    for v, l in enumerate(inst.lists):
        if l != {1, 2, 3, 4}:
            out.append(f"l {v} {_subset_str(l, '1234')}".rstrip())
    return "\n".join(out) + "\n"


def serialize_solution(values: Sequence | None) -> str:
    """Solution file: ``s SAT`` plus ``v <idx> <value>`` lines, or ``s UNSAT``."""
    if values is None:
        return "s UNSAT\n"
    out = ["s SAT"]
    for v, val in enumerate(values):
        out.append(f"v {v} {val.letter if isinstance(val, Colour) else val}")
    return "\n".join(out) + "\n"


def parse_solution(text: str, kind: str = "3cc") -> tuple | None:
    """Inverse of :func:`serialize_solution`. ``kind`` is ``"3cc"`` or ``"stubborn"``."""
    status = None
    values: dict[int, object] = {}
    for lineno, toks in _lines(text):
        if toks[0] == "s":
            if status is not None or len(toks) != 2 or toks[1] not in ("SAT", "UNSAT"):
                raise ParseError("bad status line", lineno)
            status = toks[1]
        elif toks[0] == "v":
            if status != "SAT" or len(toks) != 3:
                raise ParseError("value line outside a SAT solution", lineno)
            idx = _int(toks[1], lineno, "vertex")
            if idx in values:
                raise ParseError(f"vertex {idx} assigned twice", lineno)
            if kind == "3cc":
                try:
                    values[idx] = Colour.from_letter(toks[2])
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            else:
                val = _int(toks[2], lineno, "value")
                if val not in (1, 2, 3, 4):
                    raise ParseError(f"value {val} outside 1..4", lineno)
                values[idx] = val
        else:
            raise ParseError(f"unknown line type {toks[0]!r}", lineno)
    if status is None:
        raise ParseError("missing status line")
    if status == "UNSAT":
        return None
    if sorted(values) != list(range(len(values))):
        raise ParseError("solution must assign vertices 0..n-1")
    return tuple(values[v] for v in range(len(values)))
