"""Structure of vertex sets whose internal edges use only two colours.

Inside such a set ``W`` every candidate colouring uses the same two colours
as the edges.  A vertex is *interesting* when feasible colourings give it
both colours and *boring* otherwise.  The middle vertex of a multicoloured
triangle (two edges of one colour meeting at it, the closing edge of the
other colour) can never take the repeated colour, and if no such triangle
exists all internal edges share a single colour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .instance import Colour, ContractError, EdgeColouring

ORACLE_LIMIT = 20


@dataclass(frozen=True)
class AllInteresting:
    """Every internal edge has ``colour``; ``None`` when ``|W| <= 1``."""

    colour: Colour | None
    inspected: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Boring:
    vertex: int
    forbidden: Colour
    witness: tuple[int, int, int]
    inspected: int = field(default=0, compare=False)


TwoColourVerdict = AllInteresting | Boring


def _palette(palette: Iterable[Colour]) -> tuple[Colour, Colour]:
    p = tuple(sorted(set(Colour(c) for c in palette)))
    if len(p) != 2:
        raise ContractError("palette must hold exactly two colours")
    return p  # type: ignore[return-value]


def _triangle_witness(inst: EdgeColouring, a: int, b: int, c: int) -> tuple[int, int, int]:
    """Order a non-monochromatic triangle as (u, middle, w)."""
    col = inst.colour
    for mid, x, y in ((a, b, c), (b, a, c), (c, a, b)):
        if col(mid, x) == col(mid, y) != col(x, y):
            return (min(x, y), mid, max(x, y))
    raise AssertionError("triangle is not multicoloured")


def classify(inst: EdgeColouring, W: Iterable[int], palette: Iterable[Colour]) -> TwoColourVerdict:
    """Find a boring vertex of ``W`` or certify that every vertex is interesting.

    Scans the internal edges once in row-major order over the sorted vertices.
    If two edges of different colours turn up, they yield a multicoloured
    triangle and thus a boring vertex together with the colour it cannot take.
    """
    pal = _palette(palette)
    ws = sorted(set(W))
    k = len(ws)
    if k < 2:
        return AllInteresting(None, inspected=0)
    sub = inst.matrix[np.ix_(ws, ws)]
    iu, ju = np.triu_indices(k, 1)
    cols = sub[iu, ju]
    inspected = len(cols)
    if not np.isin(cols, pal).all():
        bad = int(np.flatnonzero(~np.isin(cols, pal))[0])
        raise ContractError(
            f"edge {ws[iu[bad]]}-{ws[ju[bad]]} has colour {Colour(int(cols[bad])).name} outside the palette"
        )
    first = cols[0]
    diff = np.flatnonzero(cols != first)
    if len(diff) == 0:
        return AllInteresting(Colour(int(first)), inspected=inspected)

    u1, v1 = ws[iu[0]], ws[ju[0]]
    j = int(diff[0])
    u2, v2 = ws[iu[j]], ws[ju[j]]
    shared = {u1, v1} & {u2, v2}
    if shared:
        tri = tuple({u1, v1, u2, v2})
    elif len({inst.colour(u1, u2), inst.colour(u1, v1), inst.colour(u2, v1)}) > 1:
        tri = (u1, u2, v1)
    else:
        tri = (u1, u2, v2)
    inspected += 2
    witness = _triangle_witness(inst, *tri)
    forbidden = inst.colour(witness[0], witness[1])
    return Boring(witness[1], forbidden, witness, inspected=inspected)


@dataclass(frozen=True)
class OracleClassification:
    vertices: tuple[int, ...]
    interesting: dict[int, bool]
    feasible: tuple[dict[int, Colour], ...]

    def admits(self, v: int, colour: Colour) -> bool:
        return any(phi[v] == colour for phi in self.feasible)


def oracle_classify(inst: EdgeColouring, W: Iterable[int], palette: Iterable[Colour]) -> OracleClassification:
    """Exhaustive version of :func:`classify` over all ``2**|W|`` palette colourings."""
    pal = _palette(palette)
    ws = sorted(set(W))
    k = len(ws)
    if k > ORACLE_LIMIT:
        raise ContractError(f"oracle_classify refuses |W| = {k} > {ORACLE_LIMIT}")
    sub = inst.matrix[np.ix_(ws, ws)]
    for i in range(k):
        for j in range(i + 1, k):
            if sub[i, j] not in pal:
                raise ContractError(f"edge {ws[i]}-{ws[j]} has a colour outside the palette")
    # bit i of the row index set -> vertex ws[i] takes pal[1]
    codes = np.arange(1 << k, dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(k)) & 1).astype(bool)
    assign = np.where(bits, int(pal[1]), int(pal[0]))
    ok = np.ones(len(codes), dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            c = sub[i, j]
            ok &= ~((assign[:, i] == c) & (assign[:, j] == c))
    good = assign[ok]
    feasible = tuple({v: Colour(int(row[i])) for i, v in enumerate(ws)} for row in good)
    interesting = {
        v: bool(len(good)) and len(set(good[:, i].tolist())) == 2 for i, v in enumerate(ws)
    }
    return OracleClassification(tuple(ws), interesting, feasible)
