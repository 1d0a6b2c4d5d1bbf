"""Benchmark records: solve generated instances and check the counter bounds."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterator

from .gadgets import solve_stubborn
from .generate import GenSpec, derive_seed, generate
from .solver import StatsCounter, solve


@dataclass(frozen=True)
class BenchRecord:
    spec: GenSpec
    index: int
    stats: StatsCounter
    verdict: str
    wall_time_ms: float

    @property
    def checks(self) -> dict[str, bool]:
        s = self.stats
        return {
            "ops_per_path_le_3n": s.max_ops_per_path <= 3 * s.n_vertices
            and s.path_violations == 0,
            "leaves_le_root_mass": s.leaf_violations == 0 and s.max_root_leaves <= s.root_mass,
            "mass_ok": s.mass_violations == 0 and s.split_violations == 0,
            "potential_ok": s.potential_violations == 0,
        }

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self, timing: bool = True) -> dict:
        d = {"index": self.index, **asdict(self.spec)}
        if self.spec.family != "stubborn":
            del d["p"]
        d["verdict"] = self.verdict
        d["stats"] = self.stats.to_dict()
        d["checks"] = self.checks
        if timing:
            d["wall_time_ms"] = round(self.wall_time_ms, 3)
        return d


def bench_one(spec: GenSpec, index: int = 0, verify: bool = False) -> BenchRecord:
    inst = generate(spec)
    res = solve_stubborn(inst, verify) if spec.family == "stubborn" else solve(inst, verify)
    return BenchRecord(spec, index, res.stats, "SAT" if res.sat else "UNSAT", res.wall_time_ms)


def run_bench(family: str, n: int, count: int, seed: int, p: float = 0.5,
              verify: bool = False) -> Iterator[BenchRecord]:
    """Yield one record per instance, in instance order."""
    for k in range(count):
        spec = GenSpec(family, n, derive_seed(seed, k), p)
        yield bench_one(spec, k, verify)
