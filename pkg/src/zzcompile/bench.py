"""Seeded Erdos-Renyi benchmark: both greedy constructions, the best construction, the bound, the oracle."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bounds import spectral_lower_bound
from .constructions import compile_auto, union_of_double_stars, union_of_stars
from .decomposition import verify
from .errors import MalformedInput, OracleTimeout, ZZCompileError
from .graph import Graph, erdos_renyi
from .oracle import brute_force_gc

__all__ = [
    "Instance",
    "BenchRecord",
    "BenchInvariantError",
    "default_manifest",
    "format_manifest",
    "parse_manifest",
    "run_instance",
    "run_suite",
    "records_to_csv",
    "CSV_HEADER",
    "MASTER_SEED",
]

MASTER_SEED = 0
CSV_HEADER = ["graph_id", "n", "m", "lb", "rows_stars", "rows_double", "rows_best", "oracle_gc", "t_stars_ms", "t_double_ms", "t_oracle_ms"]


class BenchInvariantError(ZZCompileError, AssertionError):
    pass


@dataclass(frozen=True)
class Instance:
    graph_id: str
    n: int
    p: float
    seed: int
    m: int | None = None  # edge count recorded in the manifest, checked on load

    def graph(self) -> Graph:
        g = erdos_renyi(self.n, self.p, self.seed)
        if self.m is not None and g.m != self.m:
            raise MalformedInput(f"{self.graph_id}: manifest says m={self.m}, generator gives {g.m}")
        return g


def default_manifest(n_min: int = 4, n_max: int = 20, per_n: int = 2, master_seed: int = MASTER_SEED) -> list[Instance]:
    """Two graphs per size with p ~ U[0, 1]; edgeless draws are dropped, not redrawn."""
    rng = random.Random(master_seed)
    out = []
    for n in range(n_min, n_max + 1):
        for k in range(per_n):
            p = rng.random()
            seed = rng.randrange(2**31)
            g = erdos_renyi(n, p, seed)
            if g.is_edgeless():
                continue
            out.append(Instance(f"er{n:02d}_{k}", n, p, seed, g.m))
    return out


def format_manifest(instances: list[Instance]) -> str:
    lines = ["# id n p seed m"]
    lines += [f"{i.graph_id} {i.n} {i.p!r} {i.seed} {'' if i.m is None else i.m}".rstrip() for i in instances]
    return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> list[Instance]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) not in (4, 5):
            raise MalformedInput(f"manifest line {lineno}: expected 'id n p seed [m]'")
        try:
            m = int(parts[4]) if len(parts) == 5 else None
            inst = Instance(parts[0], int(parts[1]), float(parts[2]), int(parts[3]), m)
        except ValueError as exc:
            raise MalformedInput(f"manifest line {lineno}: bad number") from exc
        if not 0.0 <= inst.p <= 1.0 or inst.n < 1:
            raise MalformedInput(f"manifest line {lineno}: need n >= 1 and 0 <= p <= 1")
        out.append(inst)
    return out


@dataclass(frozen=True)
class BenchRecord:
    graph_id: str
    n: int
    m: int
    rows_stars: int
    rows_double: int
    rows_best: int
    lower_bound: int
    oracle_gc: int | None
    oracle_status: str  # "ok", "timeout" or "skipped"
    wall_times: dict = field(default_factory=dict)

    def row(self, timings: bool) -> list[str]:
        oracle = str(self.oracle_gc) if self.oracle_gc is not None else ("timeout" if self.oracle_status == "timeout" else "")

        def t(key):
            return f"{self.wall_times[key]:.1f}" if timings and key in self.wall_times else ""

        return [self.graph_id, str(self.n), str(self.m), str(self.lower_bound), str(self.rows_stars),
                str(self.rows_double), str(self.rows_best), oracle, t("stars"), t("double"), t("oracle")]


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, 1000 * (time.perf_counter() - t0)


def _check(cond: bool, inst: Instance, what: str) -> None:
    if not cond:
        raise BenchInvariantError(f"{inst.graph_id}: {what}")


def run_instance(inst: Instance, oracle_max_n: int = 6, oracle_timeout: float = 300.0) -> BenchRecord:
    g = inst.graph()
    n = g.n
    stars, t_stars = _timed(union_of_stars, g)
    double, t_double = _timed(union_of_double_stars, g)
    best = compile_auto(g)
    lb = spectral_lower_bound(g).lower_bound if not g.is_edgeless() else 0
    _check(bool(verify(g, stars)) and bool(verify(g, double)), inst, "a construction failed exact verification")
    _check(len(stars) <= 3 * n - 2 or g.is_edgeless(), inst, f"stars used {len(stars)} > 3n-2 rows")
    _check(len(double) <= math.floor(2.5 * n + 2), inst, f"double-stars used {len(double)} > 2.5n+2 rows")
    _check(lb <= best.rows, inst, f"lower bound {lb} above best construction {best.rows}")
    times = {"stars": t_stars, "double": t_double}
    oracle, status = None, "skipped"
    if n <= oracle_max_n:
        try:
            (oracle, _), times["oracle"] = _timed(brute_force_gc, g, timeout=oracle_timeout)
            status = "ok"
            _check(lb <= oracle <= best.rows, inst, f"oracle gc {oracle} outside [{lb}, {best.rows}]")
        except OracleTimeout:
            status = "timeout"
    return BenchRecord(inst.graph_id, n, g.m, len(stars), len(double), best.rows, lb, oracle, status, times)


def _run_one(args):
    inst, oracle_max_n, oracle_timeout = args
    return run_instance(inst, oracle_max_n, oracle_timeout)


def run_suite(instances: list[Instance], *, workers: int = 1, oracle_max_n: int = 6, oracle_timeout: float = 300.0) -> list[BenchRecord]:
    """Records in manifest order whatever the completion order."""
    jobs = [(i, oracle_max_n, oracle_timeout) for i in instances]
    if workers <= 1:
        return [_run_one(j) for j in jobs]
    with ProcessPoolExecutor(workers) as pool:
        return list(pool.map(_run_one, jobs))


def records_to_csv(records: list[BenchRecord], timings: bool = False) -> str:
    """CSV text; timing columns stay empty unless ``timings`` (keeps output byte-identical across runs)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row(timings))
    return buf.getvalue()
