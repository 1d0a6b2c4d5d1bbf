"""Polynomial-time solver for 3-compatible colouring.

The solver grows the instance one vertex at a time (iterative compression).
With a feasible colouring ``phi0`` of all vertices but ``v0`` at hand it
branches on the colour of ``v0`` and then runs a branching search whose
state keeps, for every vertex, its ``phi0`` colour, the set of colours still
admissible for it and a status:

* open vertices are ``Free`` (all three colours admissible), ``ToDo`` (every
  colour but its ``phi0`` colour) or ``Forbid[X][Y]`` (``phi0 = X`` and ``Y``
  ruled out);
* pending vertices (``ToSet``) have a decided colour that still has to be
  propagated;
* settled vertices (``Set``) have a decided, propagated colour.

Propagation (:func:`shift`) removes the decided colour from the admissible
sets along edges of that colour.  When no vertex is pending but some
``ToDo[X]`` set is nonempty, :func:`resolve` either pins a boring vertex or
branches over the ``|ToDo[X]| + 1`` ways to two-colour the set.

Every search state carries a potential (at most ``3n``, strictly decreasing
along each operation) and a mass (product of ``|Free[X] ∪ ToDo[X]| + 1``,
superadditive over branch children).  Both are tracked incrementally and the
resulting inequalities are checked on every run; violations are counted in
:class:`StatsCounter`.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .instance import Colour, ContractError, EdgeColouring, feasible_3cc, third_colour
from .twocolour import AllInteresting, classify

OPEN, PENDING, SETTLED = 0, 1, 2
FULL = 0b111
BIT = (1, 2, 4)
_SINGLE = {1: Colour.R, 2: Colour.G, 4: Colour.B}
_POP = (0, 1, 1, 2, 1, 2, 2, 3)


def _open_name(x: Colour, adm: int) -> str:
    if adm == FULL:
        return f"Free[{x.name}]"
    if adm == FULL ^ BIT[x]:
        return f"ToDo[{x.name}]"
    if _POP[adm] == 2:
        return f"Forbid[{x.name}][{_SINGLE[FULL ^ adm].name}]"
    return "?"


_OPEN_NAMES = [[_open_name(x, a) for a in range(8)] for x in Colour]
_DECIDED_NAMES = {
    PENDING: [f"ToSet[{c.name}]" for c in Colour],
    SETTLED: [f"Set[{c.name}]" for c in Colour],
}


class InvariantViolation(AssertionError):
    pass


class ShiftOutcome(enum.Enum):
    CONTINUE = "continue"
    CONFLICT = "conflict"


@dataclass
class StatsCounter:
    shifts: int = 0
    boring_resolves: int = 0
    branch_nodes: int = 0
    leaves: int = 0
    max_ops_per_path: int = 0
    root_potential: int = 0
    root_mass: int = 0
    max_root_leaves: int = 0
    n_vertices: int = 0
    potential_violations: int = 0
    mass_violations: int = 0
    split_violations: int = 0
    path_violations: int = 0
    leaf_violations: int = 0
    invariant_checks: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def clean(self) -> bool:
        return not (
            self.potential_violations
            or self.mass_violations
            or self.split_violations
            or self.path_violations
            or self.leaf_violations
        )


@dataclass(frozen=True)
class Verdict:
    sat: bool
    colouring: tuple | None
    stats: StatsCounter = field(compare=False)
    wall_time_ms: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        d = self.stats.to_dict()
        d["verdict"] = "SAT" if self.sat else "UNSAT"
        d["wall_time_ms"] = round(self.wall_time_ms, 3)
        return d


class SolverState:
    """Per-vertex records realising the eighteen sets, plus the pending queue.

    Only vertices ``0..limit-1`` take part; the solver uses ``limit`` to work
    on a prefix of a larger instance without copying it.
    """

    __slots__ = (
        "inst", "limit", "phi0", "adm", "status", "decided", "queue",
        "pot", "u_size", "todo_size", "stats", "ops",
    )

    def __init__(self, inst: EdgeColouring, phi0: Sequence[int], limit: int | None = None,
                 stats: StatsCounter | None = None):
        self.inst = inst
        self.limit = inst.n if limit is None else limit
        k = self.limit
        self.phi0 = [int(c) for c in phi0[:k]]
        self.adm = [FULL] * k
        self.status = [OPEN] * k
        self.decided = [-1] * k
        self.queue: deque[int] = deque()
        self.pot = 3 * k
        self.u_size = [0, 0, 0]
        for c in self.phi0:
            self.u_size[c] += 1
        self.todo_size = [0, 0, 0]
        self.stats = stats if stats is not None else StatsCounter()
        self.ops = 0

    @classmethod
    def root(cls, inst: EdgeColouring, phi0: Sequence, v0: int, colour: Colour,
             limit: int | None = None, stats: StatsCounter | None = None) -> "SolverState":
        """All vertices free under ``phi0`` except ``v0``, which is pending ``colour``."""
        p = [int(colour) if v == v0 else int(c) for v, c in enumerate(phi0)]
        state = cls(inst, p, limit, stats)
        state.set_pending(v0, colour)
        return state

    def copy(self) -> "SolverState":
        new = object.__new__(SolverState)
        new.inst = self.inst
        new.limit = self.limit
        new.phi0 = self.phi0
        new.adm = self.adm.copy()
        new.status = self.status.copy()
        new.decided = self.decided.copy()
        new.queue = deque(self.queue)
        new.pot = self.pot
        new.u_size = self.u_size.copy()
        new.todo_size = self.todo_size.copy()
        new.stats = self.stats
        new.ops = self.ops
        return new

    # incremental bookkeeping --------------------------------------------

    def _contrib(self, v: int) -> tuple[int, int, bool]:
        """(potential weight, colour whose U-set holds v or -1, in ToDo?)."""
        st = self.status[v]
        if st == SETTLED:
            return 0, -1, False
        if st == PENDING:
            return 1, -1, False
        a, x = self.adm[v], self.phi0[v]
        in_u = (a | BIT[x]) == FULL
        return _POP[a], (x if in_u else -1), a == FULL ^ BIT[x]

    def _update(self, v: int, status: int, adm: int, decided: int) -> None:
        w0, u0, t0 = self._contrib(v)
        self.status[v], self.adm[v], self.decided[v] = status, adm, decided
        w1, u1, t1 = self._contrib(v)
        self.pot += w1 - w0
        if u0 != u1:
            if u0 >= 0:
                self.u_size[u0] -= 1
            if u1 >= 0:
                self.u_size[u1] += 1
        x = self.phi0[v]
        self.todo_size[x] += t1 - t0

    def set_pending(self, v: int, colour: Colour) -> None:
        self._update(v, PENDING, BIT[colour], int(colour))
        self.queue.append(v)

    def restrict(self, v: int, adm: int) -> None:
        """Shrink the admissible set of open vertex ``v``; singletons become pending."""
        if adm in _SINGLE:
            self.set_pending(v, _SINGLE[adm])
        else:
            self._update(v, OPEN, adm, -1)

    # views ----------------------------------------------------------------

    def incremental_potential(self) -> int:
        return self.pot

    def incremental_mass(self) -> int:
        a, b, c = self.u_size
        return (a + 1) * (b + 1) * (c + 1)

    def set_name(self, v: int) -> str:
        st = self.status[v]
        if st == OPEN:
            return _OPEN_NAMES[self.phi0[v]][self.adm[v]]
        return _DECIDED_NAMES[st][self.decided[v]]

    def sets(self) -> dict[str, frozenset]:
        """The eighteen sets keyed by name, e.g. ``"Forbid[R][G]"``."""
        names = [f"{kind}[{c.name}]" for kind in ("Free", "ToDo", "ToSet", "Set") for c in Colour]
        names += [f"Forbid[{x.name}][{y.name}]" for x in Colour for y in x.others()]
        out: dict[str, set] = {name: set() for name in names}
        for v in range(self.limit):
            out[self.set_name(v)].add(v)
        return {k: frozenset(s) for k, s in out.items()}

    def colouring(self) -> tuple[Colour, ...]:
        return tuple(
            Colour(self.decided[v]) if self.status[v] == SETTLED else Colour(self.phi0[v])
            for v in range(self.limit)
        )

    def todo(self, colour: Colour) -> list[int]:
        mask = FULL ^ BIT[colour]
        return [
            v for v in range(self.limit)
            if self.status[v] == OPEN and self.phi0[v] == colour and self.adm[v] == mask
        ]

    def u_set(self, colour: Colour) -> set[int]:
        b = BIT[colour]
        return {
            v for v in range(self.limit)
            if self.status[v] == OPEN and self.phi0[v] == colour and (self.adm[v] | b) == FULL
        }


def potential(state: SolverState) -> int:
    s = state.sets()
    total = 0
    for x in Colour:
        total += 3 * len(s[f"Free[{x.name}]"]) + 2 * len(s[f"ToDo[{x.name}]"])
        total += sum(2 * len(s[f"Forbid[{x.name}][{y.name}]"]) for y in x.others())
        total += len(s[f"ToSet[{x.name}]"])
    return total


def mass(state: SolverState) -> int:
    s = state.sets()
    m = 1
    for x in Colour:
        m *= len(s[f"Free[{x.name}]"] | s[f"ToDo[{x.name}]"]) + 1
    return m


@dataclass(frozen=True)
class Violation:
    invariant: int
    colour: Colour
    edge: tuple[int, int]
    sets: tuple[str, str]

    def __str__(self) -> str:
        u, v = self.edge
        return (f"invariant {self.invariant}: {self.colour.name}-edge {u}-{v} "
                f"inside {self.sets[0]} / {self.sets[1]}")


def check_proper_invariants(inst: EdgeColouring, state: SolverState) -> list[Violation]:
    """Both proper-invariant families for all colours; an empty list means ok.

    Family 1 forbids ``X``-edges inside ``Set[X] ∪ Free[X] ∪ Forbid[X][*]``,
    family 2 inside ``ToDo[X] ∪ Free[X] ∪ Forbid[X][*]``.
    """
    k = state.limit
    m = inst.matrix[:k, :k]
    status = np.asarray(state.status, dtype=np.int8)
    phi0 = np.asarray(state.phi0, dtype=np.int8)
    adm = np.asarray(state.adm, dtype=np.int8)
    dec = np.asarray(state.decided, dtype=np.int8)
    is_open = status == OPEN
    out: list[Violation] = []
    for x in Colour:
        own = is_open & (phi0 == x)
        todo = own & (adm == (FULL ^ BIT[x]))
        others = own & ~todo  # Free[X] and both Forbid[X][*]
        settled = (status == SETTLED) & (dec == x)
        for fam, mask in ((1, others | settled), (2, others | todo)):
            idx = np.flatnonzero(mask)
            if len(idx) < 2:
                continue
            sub = m[idx][:, idx] == x
            if not sub.any():
                continue
            hit = np.argwhere(np.triu(sub, 1))
            for i, j in hit:
                u, v = int(idx[i]), int(idx[j])
                out.append(Violation(fam, x, (u, v), (state.set_name(u), state.set_name(v))))
    return out


def shift(inst: EdgeColouring, state: SolverState) -> ShiftOutcome:
    """Settle the next pending vertex and propagate its colour along same-coloured edges.

    All neighbours are processed even after a conflict is seen, so a
    conflicting state is the one obtained by disregarding conflicts.
    """
    if not state.queue:
        raise ContractError("shift needs a pending vertex")
    v = state.queue.popleft()
    x = state.decided[v]
    state._update(v, SETTLED, BIT[x], x)
    bit = BIT[x]
    conflict = False
    status, adm, decided, limit = state.status, state.adm, state.decided, state.limit
    for w in inst.neighbours[x][v]:
        if w >= limit:
            break
        st = status[w]
        if st == OPEN:
            a = adm[w]
            if a & bit:
                state.restrict(w, a ^ bit)
        elif st == SETTLED and decided[w] == x:
            conflict = True
    return ShiftOutcome.CONFLICT if conflict else ShiftOutcome.CONTINUE


@dataclass(frozen=True)
class ForcedMove:
    vertex: int
    colour: Colour


@dataclass(frozen=True)
class Branches:
    resolved: Colour
    vertices: tuple[int, ...]
    monochrome: Colour
    children: list


def resolve(inst: EdgeColouring, state: SolverState, colour: Colour) -> ForcedMove | Branches:
    """Two-colour ``ToDo[colour]``: pin one boring vertex in place, or branch."""
    if state.queue:
        raise ContractError("resolve called with pending vertices")
    x = Colour(colour)
    ws = state.todo(x)
    if not ws:
        raise ContractError(f"ToDo[{x.name}] is empty")
    palette = x.others()
    verdict = classify(inst, ws, palette)
    if not isinstance(verdict, AllInteresting):
        other = third_colour(x, verdict.forbidden)
        state.set_pending(verdict.vertex, other)
        return ForcedMove(verdict.vertex, other)
    y = verdict.colour if verdict.colour is not None else palette[0]
    z = third_colour(x, y)
    children = []
    for special in [None, *ws]:
        child = state.copy()
        for w in ws:
            child.set_pending(w, y if w == special else z)
        child.ops += 1
        children.append(child)
    return Branches(x, tuple(ws), y, children)


# search ----------------------------------------------------------------------


class _BranchNode:
    __slots__ = ("mass", "free", "colour", "mass_sum", "seen", "flagged")

    def __init__(self, state: SolverState, colour: Colour):
        self.mass = state.incremental_mass()
        self.colour = colour
        self.free = {v for v in state.u_set(colour) if state.adm[v] == FULL}
        self.mass_sum = 0
        self.seen: set[int] = set()
        self.flagged = False

    def record_child(self, state: SolverState) -> None:
        stats = state.stats
        self.mass_sum += state.incremental_mass()
        if self.mass_sum > self.mass and not self.flagged:
            stats.mass_violations += 1
            self.flagged = True
        u = state.u_set(self.colour)
        if not u <= self.free or u & self.seen:
            stats.split_violations += 1
        self.seen |= u


def _verify(state: SolverState) -> None:
    stats = state.stats
    stats.invariant_checks += 1
    bad = check_proper_invariants(state.inst, state)
    if bad:
        raise InvariantViolation("; ".join(map(str, bad[:5])))
    if potential(state) != state.pot or mass(state) != state.incremental_mass():
        raise InvariantViolation("incremental potential/mass out of sync")


def _drain(state: SolverState, verify: bool) -> bool:
    """Shift until nothing is pending; True if some shift hit a conflict."""
    stats = state.stats
    conflict = False
    inst = state.inst
    while state.queue:
        before = state.pot
        if shift(inst, state) is ShiftOutcome.CONFLICT:
            conflict = True
        stats.shifts += 1
        state.ops += 1
        if state.pot >= before:
            stats.potential_violations += 1
        if verify and not conflict:
            _verify(state)
    return conflict


def _search(root: SolverState, verify: bool) -> tuple | None:
    stats = root.stats
    root_potential = root.pot
    root_mass = root.incremental_mass()
    stats.root_potential = max(stats.root_potential, root_potential)
    stats.root_mass = max(stats.root_mass, root_mass)
    if verify:
        _verify(root)
    leaves = 0
    found = None
    stack: list[tuple[SolverState, _BranchNode | None]] = [(root, None)]
    while stack:
        state, node = stack.pop()
        conflict = _drain(state, verify)
        if node is not None:
            node.record_child(state)
        branched = False
        while not conflict:
            x = next((c for c in Colour if state.todo_size[c]), None)
            if x is None:
                found = state.colouring()
                break
            before = state.pot
            out = resolve(state.inst, state, x)
            if isinstance(out, ForcedMove):
                stats.boring_resolves += 1
                state.ops += 1
                if state.pot >= before:
                    stats.potential_violations += 1
                if verify:
                    _verify(state)
                conflict = _drain(state, verify)
                continue
            stats.branch_nodes += 1
            parent = _BranchNode(state, x)
            for child in out.children:
                if child.pot >= before:
                    stats.potential_violations += 1
            stack.extend((child, parent) for child in reversed(out.children))
            branched = True
            break
        if branched:
            continue
        leaves += 1
        stats.leaves += 1
        stats.max_ops_per_path = max(stats.max_ops_per_path, state.ops)
        if state.ops > root_potential:
            stats.path_violations += 1
        if found is not None:
            break
    stats.max_root_leaves = max(stats.max_root_leaves, leaves)
    if leaves > root_mass:
        stats.leaf_violations += 1
    return found


def _extend(inst: EdgeColouring, phi0: Sequence, v0: int, limit: int,
            stats: StatsCounter, verify: bool) -> tuple | None:
    for colour in Colour:
        root = SolverState.root(inst, phi0, v0, colour, limit, stats)
        found = _search(root, verify)
        if found is not None:
            return found
    return None


def solve_with_witness(inst: EdgeColouring, phi0: Sequence, v0: int,
                       verify: bool = False) -> Verdict:
    """Extend a colouring that is feasible everywhere except at ``v0``."""
    t0 = time.perf_counter()
    n = inst.n
    if len(phi0) != n or not 0 <= v0 < n:
        raise ContractError("phi0 must cover every vertex and v0 must be a vertex")
    rest = [v for v in range(n) if v != v0]
    sub = EdgeColouring(inst.matrix[np.ix_(rest, rest)])
    if not feasible_3cc(sub, [phi0[v] for v in rest]):
        raise ContractError("phi0 is not feasible on V minus v0")
    filled = [Colour.R if v == v0 else Colour(phi0[v]) for v in range(n)]
    stats = StatsCounter(n_vertices=n)
    found = _extend(inst, filled, v0, n, stats, verify)
    ms = (time.perf_counter() - t0) * 1000
    return Verdict(found is not None, found, stats, ms)


def solve(inst: EdgeColouring, verify: bool = False) -> Verdict:
    """Decide a 3CC instance by inserting vertices in index order."""
    t0 = time.perf_counter()
    stats = StatsCounter(n_vertices=inst.n)
    if inst.n == 0:
        return Verdict(True, (), stats, 0.0)
    colouring: tuple | None = (Colour.R,)
    for i in range(1, inst.n):
        colouring = _extend(inst, colouring + (Colour.R,), i, i + 1, stats, verify)
        if colouring is None:
            break
    ms = (time.perf_counter() - t0) * 1000
    return Verdict(colouring is not None, colouring, stats, ms)
