"""Seeded instance generators.

Randomness comes from SplitMix64 used as a counter-based generator, so any
implementation can reproduce instance bytes exactly:

* ``mix64(z)`` is the SplitMix64 finaliser and ``GAMMA = 0x9E3779B97F4A7C15``;
  the ``i``-th output (from 0) of a SplitMix64 stream seeded with ``s`` is
  ``mix64(s + (i + 1) * GAMMA mod 2**64)``.
* Stream ``k`` of a seed is seeded with output ``k`` of SplitMix64(seed).
  Stream 0 feeds per-vertex draws (indexed by vertex), stream 1 per-edge
  draws (indexed by the row-major position of ``u < v``).
* A draw below ``m`` from a 64-bit word ``x`` is ``((x >> 32) * m) >> 32``; a
  Bernoulli(p) draw is ``(x >> 11) * 2**-53 < p``.
* Instance ``k`` of a batch with seed ``s`` uses seed ``mix64(s + (k + 1) * GAMMA)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import Colour, EdgeColouring, StubbornInstance, serialize_3cc, serialize_stubborn

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
FAMILIES = ("uniform3cc", "planted3cc", "stubborn")
VERTEX_STREAM, EDGE_STREAM = 0, 1


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(0xBF58476D1CE4E5B9)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def splitmix_output(seed: int, index: int) -> int:
    return mix64((seed + (index + 1) * GAMMA) & MASK64)


def derive_seed(seed: int, k: int) -> int:
    return splitmix_output(seed, k)


def stream_words(seed: int, stream: int, count: int) -> np.ndarray:
    """First ``count`` 64-bit outputs of the given stream, as ``uint64``."""
    s = np.uint64(splitmix_output(seed, stream))
    idx = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix64_array(s + idx * np.uint64(GAMMA))


def below(words: np.ndarray, m) -> np.ndarray:
    m = np.asarray(m, dtype=np.uint64)
    return ((words >> np.uint64(32)) * m) >> np.uint64(32)


def bernoulli(words: np.ndarray, p: float) -> np.ndarray:
    return (words >> np.uint64(11)).astype(np.float64) * 2.0**-53 < p


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    seed: int
    p: float = 0.5

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; pick one of {', '.join(FAMILIES)}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"edge probability {self.p} outside [0, 1]")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must fit in 64 bits")


def _upper(n: int):
    return np.triu_indices(n, 1)


def uniform_3cc(n: int, seed: int) -> EdgeColouring:
    iu, ju = _upper(n)
    cols = below(stream_words(seed, EDGE_STREAM, len(iu)), 3)
    m = np.full((n, n), -1, dtype=np.int8)
    m[iu, ju] = m[ju, iu] = cols.astype(np.int8)
    return EdgeColouring(m)


def planted_3cc(n: int, seed: int) -> tuple[EdgeColouring, tuple]:
    """Random instance built around a hidden feasible colouring, which is returned too."""
    psi = below(stream_words(seed, VERTEX_STREAM, n), 3).astype(np.int8)
    iu, ju = _upper(n)
    words = stream_words(seed, EDGE_STREAM, len(iu))
    same = psi[iu] == psi[ju]
    k = below(words, np.where(same, 2, 3)).astype(np.int8)
    # allowed colours in ascending order skip the shared endpoint colour
    cols = np.where(same & (k >= psi[iu]), k + 1, k)
    m = np.full((n, n), -1, dtype=np.int8)
    m[iu, ju] = m[ju, iu] = cols
    return EdgeColouring(m), tuple(Colour(int(c)) for c in psi)


def random_stubborn(n: int, p: float, seed: int) -> StubbornInstance:
    iu, ju = _upper(n)
    present = bernoulli(stream_words(seed, EDGE_STREAM, len(iu)), p)
    edges = frozenset((int(u), int(v)) for u, v, e in zip(iu, ju, present) if e)
    masks = below(stream_words(seed, VERTEX_STREAM, n), 15) + np.uint64(1)
    lists = tuple(frozenset(i + 1 for i in range(4) if int(mk) >> i & 1) for mk in masks)
    return StubbornInstance(n, edges, lists)


def generate(spec: GenSpec):
    if spec.family == "uniform3cc":
        return uniform_3cc(spec.n, spec.seed)
    if spec.family == "planted3cc":
        return planted_3cc(spec.n, spec.seed)[0]
    return random_stubborn(spec.n, spec.p, spec.seed)


def gen(spec: GenSpec) -> str:
    """Instance file text for ``spec``; identical specs give identical bytes."""
    head = f"c gen family={spec.family} n={spec.n} seed={spec.seed}"
    if spec.family == "stubborn":
        head += f" p={spec.p!r}"
        body = serialize_stubborn(generate(spec))
    else:
        body = serialize_3cc(generate(spec))
    return head + "\n" + body
