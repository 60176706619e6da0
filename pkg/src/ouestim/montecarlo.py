"""Replicated estimation experiments with a deterministic parallel harness.

Two experiment shapes: a consistency study (|theta_tilde - theta| across
growing horizons) and a Cauchy study (distribution of the normalized error
statistic S/(2 theta) at one horizon against the standard Cauchy law).

Determinism contract: results are a pure function of the MCConfig.  Each
(horizon, replicate) pair owns an independent RNG stream via the pathgen
replicate keying — stream index h * N + r — and every worker writes only its
own preallocated slot, so the output is bit-identical whatever the thread
count (cap it with the OUESTIM_THREADS environment variable).

Statistics policy: the Cauchy limit has no moments, so S is summarized only
through quantiles and Kolmogorov-Smirnov distances; means appear solely for
|theta_tilde - theta| and the remainder diagnostic |e^{-theta T} R_T|.
Degenerate paths (identically-zero driver, probability zero under any
Gaussian kernel here) are counted and excluded rather than crashing — a
nonzero count in practice means a sampler bug, and the tests treat it so.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .estimator import Degenerate, make_report
from .kernels import Family, KernelSpec
from .ou_model import build_trajectory
from .pathgen import SamplePath, TimeGrid, sample_cholesky, sample_fbm_circulant

__all__ = [
    "MCConfig",
    "HorizonSummary",
    "MCSummary",
    "ReplicateTable",
    "cauchy_cdf",
    "ks_distance",
    "run_replicates",
    "summarize",
    "run_consistency",
    "run_cauchy",
]

SampleFn = Callable[["MCConfig", TimeGrid, int], SamplePath]


@dataclass(frozen=True)
class MCConfig:
    """Full description of a replicated experiment."""

    spec: KernelSpec
    theta: float
    horizons: tuple[float, ...]
    points_per_unit: float
    replicates: int
    seed: int
    sampler: str = "auto"  # auto | cholesky | circulant

    def __post_init__(self) -> None:
        if self.theta <= 0:
            raise ValueError(f"theta must be positive, got {self.theta}")
        if self.replicates < 1:
            raise ValueError(f"need at least one replicate, got {self.replicates}")
        if len(self.horizons) == 0:
            raise ValueError("need at least one horizon")
        if any(t <= 0 for t in self.horizons):
            raise ValueError(f"horizons must be positive: {self.horizons}")
        if any(b <= a for a, b in zip(self.horizons, self.horizons[1:])):
            raise ValueError(f"horizons must be strictly increasing: {self.horizons}")
        if self.points_per_unit <= 0:
            raise ValueError("points_per_unit must be positive")
        if self.sampler not in ("auto", "cholesky", "circulant"):
            raise ValueError(f"unknown sampler {self.sampler!r}")
        if self.sampler == "circulant" and self.spec.family is not Family.FBM:
            raise ValueError("circulant sampling is exact only for the FBM family")

    def grid_for(self, horizon: float) -> TimeGrid:
        return TimeGrid(horizon, max(2, round(horizon * self.points_per_unit)))


@dataclass(frozen=True)
class ReplicateTable:
    """Raw per-replicate results for one horizon (NaN = absent)."""

    horizon: float
    n_steps: int
    theta_hat: np.ndarray
    s_stable: np.ndarray
    s_naive: np.ndarray
    rscaled: np.ndarray
    degenerate: np.ndarray


@dataclass(frozen=True)
class HorizonSummary:
    horizon: float
    n_steps: int
    valid: int
    degenerate_count: int
    median_abs_error: float
    mean_abs_error: float
    s_quartiles: tuple[float, float, float]  # of S_stable/(2 theta)
    ks_cauchy: float
    mean_abs_rscaled: float


@dataclass(frozen=True)
class MCSummary:
    config: MCConfig
    horizons: tuple[HorizonSummary, ...]


def cauchy_cdf(x: np.ndarray) -> np.ndarray:
    """Standard Cauchy distribution function, 1/2 + arctan(x)/pi."""
    return 0.5 + np.arctan(x) / np.pi


def ks_distance(sample, cdf="cauchy") -> float:
    """Two-sided Kolmogorov-Smirnov distance sup|F_N - F|.

    Uses the order-statistic formula max_i max(i/N - F(x_i),
    F(x_i) - (i-1)/N); permutation-invariant since the sample is sorted.
    """
    if cdf == "cauchy":
        cdf = cauchy_cdf
    elif isinstance(cdf, str):
        raise ValueError(f"unknown distribution id {cdf!r}")
    arr = np.sort(np.asarray(sample, dtype=float))
    if arr.size == 0:
        raise ValueError("KS distance of an empty sample")
    if not np.all(np.isfinite(arr)):
        raise ValueError("KS sample contains non-finite values")
    n = arr.size
    fx = np.asarray(cdf(arr), dtype=float)
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(i / n - fx, fx - (i - 1) / n)))


def _default_sample(cfg: MCConfig, grid: TimeGrid, replicate: int) -> SamplePath:
    mode = cfg.sampler
    if mode == "auto":
        mode = "circulant" if cfg.spec.family is Family.FBM else "cholesky"
    if mode == "circulant":
        return sample_fbm_circulant(cfg.spec.hurst, grid, cfg.seed, replicate)
    return sample_cholesky(cfg.spec, grid, cfg.seed, replicate)


def _worker_count() -> int:
    env = os.environ.get("OUESTIM_THREADS")
    if env is not None:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def run_replicates(
    cfg: MCConfig, horizon_index: int = 0, sample_fn: SampleFn | None = None
) -> ReplicateTable:
    """Simulate and estimate every replicate at one horizon, in parallel.

    ``sample_fn`` is a test hook replacing the driver sampler; the default
    dispatches to circulant for FBM and Cholesky otherwise.  Replicate r at
    horizon index h uses RNG stream h * N + r, so adding horizons never
    reshuffles existing streams.
    """
    sample = sample_fn or _default_sample
    horizon = cfg.horizons[horizon_index]
    grid = cfg.grid_for(horizon)
    n_rep = cfg.replicates

    theta_hat = np.full(n_rep, np.nan)
    s_stable = np.full(n_rep, np.nan)
    s_naive = np.full(n_rep, np.nan)
    rscaled = np.full(n_rep, np.nan)
    degenerate = np.zeros(n_rep, dtype=bool)
    base = horizon_index * n_rep

    def one(r: int) -> None:
        path = sample(cfg, grid, base + r)
        traj = build_trajectory(path, cfg.theta)
        rep = make_report(traj, cfg.theta)
        if isinstance(rep, Degenerate):
            degenerate[r] = True
            return
        theta_hat[r] = rep.theta_tilde
        s_stable[r] = rep.s_stable
        if rep.s_naive is not None:
            s_naive[r] = rep.s_naive
        rscaled[r] = rep.rscaled

    workers = _worker_count()
    if workers == 1:
        for r in range(n_rep):
            one(r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(one, range(n_rep)))

    return ReplicateTable(
        horizon=horizon,
        n_steps=grid.n,
        theta_hat=theta_hat,
        s_stable=s_stable,
        s_naive=s_naive,
        rscaled=rscaled,
        degenerate=degenerate,
    )


def summarize(cfg: MCConfig, table: ReplicateTable) -> HorizonSummary:
    """Deterministic fold of a replicate table into summary statistics."""
    ok = ~table.degenerate
    n_ok = int(ok.sum())
    if n_ok == 0:
        nan3 = (np.nan, np.nan, np.nan)
        return HorizonSummary(
            table.horizon, table.n_steps, 0, int(table.degenerate.sum()),
            np.nan, np.nan, nan3, np.nan, np.nan,
        )
    abs_err = np.abs(table.theta_hat[ok] - cfg.theta)
    s_norm = table.s_stable[ok] / (2.0 * cfg.theta)
    q25, q50, q75 = np.quantile(s_norm, [0.25, 0.5, 0.75])
    return HorizonSummary(
        horizon=table.horizon,
        n_steps=table.n_steps,
        valid=n_ok,
        degenerate_count=int(table.degenerate.sum()),
        median_abs_error=float(np.median(abs_err)),
        mean_abs_error=float(np.mean(abs_err)),
        s_quartiles=(float(q25), float(q50), float(q75)),
        ks_cauchy=ks_distance(s_norm),
        mean_abs_rscaled=float(np.mean(np.abs(table.rscaled[ok]))),
    )


def run_consistency(cfg: MCConfig, sample_fn: SampleFn | None = None) -> MCSummary:
    """Theorem-style consistency study: one summary per horizon."""
    rows = tuple(
        summarize(cfg, run_replicates(cfg, h, sample_fn))
        for h in range(len(cfg.horizons))
    )
    return MCSummary(config=cfg, horizons=rows)


def run_cauchy(cfg: MCConfig, sample_fn: SampleFn | None = None) -> MCSummary:
    """Distribution study of S/(2 theta) at a single horizon."""
    if len(cfg.horizons) != 1:
        raise ValueError("the Cauchy study takes exactly one horizon")
    return run_consistency(cfg, sample_fn)
