"""Benchmark grid runner."""
from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field

from .dataio import generate_gaussian, load_csv
from .oracle import verify_region
from .region import build_halfspaces, region_from_halfspaces
from .search import corollary_bound, find_critical, level_count
from .tolerances import DEFAULT_TOL, Tolerances

logger = logging.getLogger(__name__)

__all__ = ["RunConfig", "BenchRecord", "run_benchmark"]


@dataclass
class RunConfig:
    """Benchmark grid.

    ``input`` is a CSV path (then ``ns``/``ps`` are ignored) or ``None`` for
    Gaussian data generated per cell with seed ``seed + repetition``.
    """

    ns: list = field(default_factory=lambda: [40])
    ps: list = field(default_factory=lambda: [3])
    taus: list = field(default_factory=lambda: [0.05, 0.1])
    algorithm: str = "both"
    repetitions: int = 1
    seed: int = 1
    input: str | None = None
    build_region: bool = True
    verify: bool = False
    rule: str = "ceil"
    parallel: bool = False
    oracle_cap: int = 1_000_000
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        for t in self.taus:
            if not 0 < t <= 1:
                raise ValueError(f"tau must be in (0, 1], got {t}")
        if self.algorithm not in ("naive", "bfs", "both"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")

    def algorithms(self) -> list[str]:
        return ["naive", "bfs"] if self.algorithm == "both" else [self.algorithm]


@dataclass
class BenchRecord:
    n: int
    p: int
    tau: float
    k_tau: int
    algorithm: str
    direction_count: int | None
    wall_time_seconds: float | None
    status: str | None
    facet_count: int | None
    vertex_count: int | None
    seed: int
    repetition: int = 0
    verified: bool | None = None
    error: str | None = None

    def as_row(self) -> dict:
        return asdict(self)


def _cells(config: RunConfig):
    if config.input is not None:
        cloud = load_csv(config.input)
        for rep in range(config.repetitions):
            yield cloud, config.seed + rep, rep
        return
    for n in config.ns:
        for p in config.ps:
            for rep in range(config.repetitions):
                s = config.seed + rep
                yield generate_gaussian(n, p, s), s, rep


def run_benchmark(config: RunConfig) -> list[BenchRecord]:
    """Run every (cloud, tau, algorithm) cell; failures are recorded, not raised.

    Records are sorted by ``(p, tau, n)``.
    """
    records = []
    for cloud, seed, rep in _cells(config):
        n, p = cloud.n, cloud.p
        for tau in config.taus:
            k = level_count(n, tau, config.rule)
            for alg in config.algorithms():
                rec = BenchRecord(n, p, tau, k, alg, None, None, None, None, None, seed, rep)
                try:
                    t0 = time.perf_counter()
                    res = find_critical(cloud, algorithm=alg, seed=seed, k=k,
                                        parallel=config.parallel, tol=config.tol)
                    rec.wall_time_seconds = time.perf_counter() - t0
                    rec.direction_count = len(res)
                    if len(res) > corollary_bound(n, p):
                        rec.error = "direction count above bound"
                    if config.build_region:
                        hs = build_halfspaces(cloud, res.hyperplanes, config.tol)
                        region = region_from_halfspaces(n, p, hs, tau=tau, k_tau=k, search=res,
                                                        tol=config.tol)
                        rec.status = region.status.value
                        rec.vertex_count = len(region.vertices)
                        rec.facet_count = len(region.facets)
                        if config.verify:
                            rec.verified = verify_region(cloud, region, oracle_cap=config.oracle_cap,
                                                         tol=config.tol).passed
                except Exception as exc:  # per-cell failures go into the table
                    logger.warning("cell n=%d p=%d tau=%g %s failed: %s", n, p, tau, alg, exc)
                    rec.error = f"{type(exc).__name__}: {exc}"
                records.append(rec)
    records.sort(key=lambda r: (r.p, r.tau, r.n, r.repetition, r.algorithm))
    return records
