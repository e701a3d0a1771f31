"""Monte-Carlo symbol error rates over the additive white Gaussian noise channel.

Codewords have unit energy and noise is added independently to every
coordinate with variance ``sigma^2``, where

    SNR_dB = 10 log10(1 / (dim * sigma^2)).

Randomness is counter based: trials are cut into blocks of
:data:`BLOCK` and block ``b`` at SNR position ``s`` draws from a Philox
generator keyed by ``(seed, s, b)``.  Counts therefore do not depend on how
blocks are spread over workers.
"""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .decoder import DecodeConfig, decode_batch, decode_index, decode_ml, decode_ml_batch
from .errors import DomainError, ResourceError
from .schf import CodeSpec, CodeTables, build_tables, codebook

DECODERS = ("suboptimal", "suboptimal-refined", "ml")
BLOCK = 1024
# codebooks up to this many rows are held in memory to draw codewords from
SAMPLE_CAP = 2_000_000
INT64_LIMIT = 2**63


def sigma_from_snr(snr_db: float, dim: int) -> float:
    """Per-coordinate noise deviation; zero for ``snr_db = inf``."""
    if snr_db == math.inf:
        return 0.0
    return math.sqrt(1.0 / (dim * 10.0 ** (snr_db / 10.0)))


def snr_from_sigma(sigma: float, dim: int) -> float:
    if sigma == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / (dim * sigma * sigma))


def block_rng(seed: int, snr_pos: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, snr_pos, block])))


def draw_block(seed: int, snr_pos: int, block: int, n: int, M: int, dim: int, sigma: float):
    """Transmitted indices and noise vectors of one block of trials."""
    rng = block_rng(seed, snr_pos, block)
    idx = rng.integers(0, M, size=n)
    return idx, rng.standard_normal((n, dim)) * sigma


@dataclass(frozen=True)
class SimConfig:
    spec: CodeSpec
    snr_db_list: Sequence[float]
    trials_per_point: int
    seed: int = 0
    decoder: str = "suboptimal-refined"
    breadth: int = 1
    workers: int = 1
    cap: int = 10**7

    def __post_init__(self):
        if self.trials_per_point < 1:
            raise DomainError("trials_per_point must be positive")
        if self.decoder not in DECODERS:
            raise DomainError(f"decoder must be one of {', '.join(DECODERS)}")
        if self.workers < 1:
            raise DomainError("workers must be positive")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")
        object.__setattr__(self, "snr_db_list", tuple(float(s) for s in self.snr_db_list))


@dataclass(frozen=True)
class SimRow:
    snr_db: float
    errors: int
    trials: int

    @property
    def ser(self) -> float:
        return self.errors / self.trials

    @property
    def stderr(self) -> float:
        p = self.ser
        return math.sqrt(p * (1.0 - p) / self.trials)


@dataclass
class SimReport:
    config: SimConfig
    rows: list[SimRow] = field(default_factory=list)
    seconds_per_word: float = 0.0

    FIELDS = ("snr_db", "trials", "errors", "ser", "stderr")

    def records(self) -> list[dict]:
        return [{"snr_db": r.snr_db, "trials": r.trials, "errors": r.errors, "ser": r.ser, "stderr": r.stderr}
                for r in self.rows]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.FIELDS)
        for rec in self.records():
            writer.writerow([_fmt(rec[k]) for k in self.FIELDS])
        return out.getvalue()

    def to_json(self, **kwargs) -> str:
        cfg = asdict(self.config)
        cfg["snr_db_list"] = list(self.config.snr_db_list)
        data = {"config": cfg, "seconds_per_word": self.seconds_per_word, "rows": self.records()}
        return json.dumps(data, **kwargs)


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


class _Channel:
    """Shared state of one simulation: tables, optional codebook and decoder."""

    def __init__(self, cfg: SimConfig, tables: CodeTables | None):
        self.cfg = cfg
        self.tables = tables if tables is not None else build_tables(cfg.spec)
        self.M = self.tables.size
        if self.M >= INT64_LIMIT:
            raise ResourceError("simulation needs a code with fewer than 2^63 points")
        if cfg.decoder == "ml":
            self.book = codebook(self.tables, cfg.cap)
        elif self.M <= min(cfg.cap, SAMPLE_CAP):
            self.book = codebook(self.tables, cfg.cap)
        else:
            self.book = None
        self.dcfg = DecodeConfig(cfg.breadth, cfg.decoder == "suboptimal-refined")

    def codewords(self, idx: np.ndarray) -> np.ndarray:
        if self.book is not None:
            return self.book[idx]
        return np.array([self.tables.root.point(int(a)) for a in idx])

    def block(self, snr_pos: int, b: int, n: int, sigma: float) -> int:
        idx, z = draw_block(self.cfg.seed, snr_pos, b, n, self.M, self.cfg.spec.dim, sigma)
        y = self.codewords(idx) + z
        if self.cfg.decoder == "ml":
            got = decode_ml_batch(self.book, y)
            inside = np.einsum("ij,ij->i", z, z) < (0.5 * self.cfg.spec.dmin) ** 2
            if np.any(got[inside] != idx[inside]):
                raise RuntimeError("exhaustive decoder missed a word inside the packing radius")
        else:
            got = decode_batch(y, self.tables, self.dcfg)
        return int(np.count_nonzero(got != idx))


def simulate(cfg: SimConfig, tables: CodeTables | None = None) -> SimReport:
    """Symbol error rate at every SNR of ``cfg``; counts are reproducible for any ``workers``."""
    ch = _Channel(cfg, tables)
    jobs = []
    for s, snr in enumerate(cfg.snr_db_list):
        sigma = sigma_from_snr(snr, cfg.spec.dim)
        for b, start in enumerate(range(0, cfg.trials_per_point, BLOCK)):
            jobs.append((s, b, min(BLOCK, cfg.trials_per_point - start), sigma))
    t0 = time.perf_counter()
    if cfg.workers == 1:
        counts = [ch.block(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(cfg.workers) as pool:
            counts = list(pool.map(lambda job: ch.block(*job), jobs))
    elapsed = time.perf_counter() - t0
    errors = [0] * len(cfg.snr_db_list)
    for (s, *_), c in zip(jobs, counts):
        errors[s] += c
    rows = [SimRow(snr, e, cfg.trials_per_point) for snr, e in zip(cfg.snr_db_list, errors)]
    return SimReport(cfg, rows, elapsed / (len(cfg.snr_db_list) * cfg.trials_per_point))


@dataclass(frozen=True)
class TimingStats:
    """Seconds per decoded word."""

    mean: float
    median: float


def timing_probe(spec: CodeSpec, trials: int = 10_000, snr_db: float = 8.0, seed: int = 0,
                 repeats: int = 3, breadth: int = 1) -> dict[str, TimingStats]:
    """Per-word wall-clock time of each decoder, one call per received word.

    All decoders see the same words.  Repeats are interleaved across decoders
    and the repeat with the lowest mean is kept, which filters out scheduler
    noise.  Compilation happens before timing starts.
    """
    tables = build_tables(spec)
    book = codebook(tables)
    idx, z = draw_block(seed, 0, 0, trials, tables.size, spec.dim, sigma_from_snr(snr_db, spec.dim))
    ys = book[idx] + z
    unrefined, refined = DecodeConfig(breadth, False), DecodeConfig(breadth, True)
    calls = {
        "suboptimal": lambda y: decode_index(y, tables, unrefined),
        "suboptimal-refined": lambda y: decode_index(y, tables, refined),
        "ml": lambda y: decode_ml(book, y),
    }
    best: dict[str, TimingStats] = {}
    clock = time.perf_counter_ns
    for _ in range(repeats):
        for name, f in calls.items():
            f(ys[0])
            times = []
            for y in ys:
                t0 = clock()
                f(y)
                times.append(clock() - t0)
            stats = TimingStats(1e-9 * sum(times) / trials, 1e-9 * statistics.median(times))
            if name not in best or stats.mean < best[name].mean:
                best[name] = stats
    return best
