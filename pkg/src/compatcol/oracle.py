"""Brute-force deciders used as ground truth.

Both enumerate every assignment in lexicographic order (vertex 0 is the most
significant position) and return the first feasible one.  Enumeration runs in
numpy chunks but performs no pruning of any kind.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .instance import (
    FORBIDDEN_EDGE_VALUES,
    Colour,
    ContractError,
    EdgeColouring,
    StubbornInstance,
)

MAX_3CC = 14
MAX_STUBBORN = 10
_CHUNK = 1 << 16


def _assignments(n: int, base: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the lexicographic listing of ``base**n`` tuples."""
    codes = np.arange(start, stop, dtype=np.int64)
    powers = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] // powers) % base).astype(np.int8)


def brute_force_3cc(inst: EdgeColouring, lists: Sequence[frozenset] | None = None) -> tuple | None:
    """First feasible (and list-respecting) colouring, or ``None`` for UNSAT."""
    n = inst.n
    if n > MAX_3CC:
        raise ContractError(f"brute_force_3cc refuses n = {n} > {MAX_3CC}")
    if lists is not None and len(lists) != n:
        raise ContractError("one colour list per vertex required")
    total = 3**n
    pairs = list(combinations(range(n), 2))
    m = inst.matrix
    for start in range(0, total, _CHUNK):
        a = _assignments(n, 3, start, min(total, start + _CHUNK))
        ok = np.ones(len(a), dtype=bool)
        if lists is not None:
            for v, allowed in enumerate(lists):
                ok &= np.isin(a[:, v], [int(c) for c in allowed])
        for u, v in pairs:
            c = m[u, v]
            ok &= ~((a[:, u] == c) & (a[:, v] == c))
        hit = np.flatnonzero(ok)
        if len(hit):
            return tuple(Colour(int(c)) for c in a[hit[0]])
    return None


def brute_force_stubborn(inst: StubbornInstance) -> tuple | None:
    n = inst.n
    if n > MAX_STUBBORN:
        raise ContractError(f"brute_force_stubborn refuses n = {n} > {MAX_STUBBORN}")
    total = 4**n
    for start in range(0, total, _CHUNK):
        a = _assignments(n, 4, start, min(total, start + _CHUNK)) + 1
        ok = np.ones(len(a), dtype=bool)
        for v, allowed in enumerate(inst.lists):
            ok &= np.isin(a[:, v], sorted(allowed))
        for u, v in combinations(range(n), 2):
            if inst.has_edge(u, v):
                for bad in FORBIDDEN_EDGE_VALUES:
                    vals = sorted(bad)
                    if len(vals) == 1:
                        ok &= ~((a[:, u] == vals[0]) & (a[:, v] == vals[0]))
                    else:
                        p, q = vals
                        ok &= ~(((a[:, u] == p) & (a[:, v] == q)) | ((a[:, u] == q) & (a[:, v] == p)))
            else:
                ok &= ~((a[:, u] == 4) & (a[:, v] == 4))
        hit = np.flatnonzero(ok)
        if len(hit):
            return tuple(int(x) for x in a[hit[0]])
    return None
