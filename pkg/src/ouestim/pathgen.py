"""Exact sampling of the Gaussian driver G on a uniform grid.

Two samplers are provided: a general dense-Cholesky sampler valid for every
kernel, and an O(n log n) circulant-embedding sampler for fractional Brownian
motion only (the other families lack stationary increments).

Reproducibility contract: a path is a pure function of
(kernel spec, grid, seed, replicate, sampler).  Replicate streams come from
``SeedSequence(seed, spawn_key=(replicate,))`` feeding a counter-based Philox
generator, so concurrent replicates are independent and order-insensitive.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .kernels import Family, KernelSpec, cov_matrix

log = logging.getLogger(__name__)

__all__ = [
    "TimeGrid",
    "SamplePath",
    "NumericalFailure",
    "sample_cholesky",
    "sample_fbm_circulant",
    "replicate_rng",
]

#: diagonal-jitter escalation ladder for a failed factorization
_JITTERS = (1e-12, 1e-10, 1e-8)

#: most negative circulant eigenvalue tolerated, relative to the largest
_EIG_TOL = 1e-8


class NumericalFailure(RuntimeError):
    """Raised when a sampler cannot proceed for numerical reasons."""


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid 0 = t_0 < t_1 < ... < t_n = T."""

    horizon: float
    n: int

    def __post_init__(self) -> None:
        if self.horizon <= 0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if self.n < 2:
            raise ValueError(f"need at least 2 steps, got {self.n}")

    @property
    def step(self) -> float:
        return self.horizon / self.n

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.n + 1)


@dataclass
class SamplePath:
    """Driver values g_k = G(t_k), k = 0..n, with provenance metadata."""

    grid: TimeGrid
    values: np.ndarray
    spec: KernelSpec
    sampler: str
    seed: int
    replicate: int = 0

    def __post_init__(self) -> None:
        if len(self.values) != self.grid.n + 1:
            raise ValueError("value count does not match grid")
        if self.values[0] != 0.0:
            raise ValueError("driver paths start at zero")


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Independent, order-insensitive stream for one replicate."""
    ss = np.random.SeedSequence(seed, spawn_key=(replicate,))
    return np.random.Generator(np.random.Philox(ss))


@lru_cache(maxsize=2)
def _cholesky_factor(spec: KernelSpec, grid: TimeGrid) -> np.ndarray:
    """Lower Cholesky factor of [cov(t_i, t_j)] for i, j >= 1.

    t_0 = 0 is excluded: G_0 = 0 deterministically and including it would make
    the matrix singular.  Shared read-only across replicates.
    """
    c = cov_matrix(spec, grid.times[1:])
    try:
        return np.linalg.cholesky(c)
    except np.linalg.LinAlgError:
        pass
    bump = float(np.max(np.diag(c)))
    for eps in _JITTERS:
        try:
            factor = np.linalg.cholesky(c + eps * bump * np.eye(len(c)))
            log.warning(
                "covariance factorization needed diagonal jitter %.1e for %s",
                eps,
                spec.label(),
            )
            return factor
        except np.linalg.LinAlgError:
            continue
    raise NumericalFailure(
        f"covariance for {spec.label()} on n={grid.n} is not factorizable "
        f"even with jitter up to {_JITTERS[-1]:.0e}"
    )


def sample_cholesky(
    spec: KernelSpec,
    grid: TimeGrid,
    seed: int,
    replicate: int = 0,
    n_cap: int = 8192,
) -> SamplePath:
    """Exact multivariate-normal draw of the driver on the grid.

    The factor is computed once per (spec, grid) and reused; cost per path is
    one O(n^2) triangular multiply.
    """
    if grid.n > n_cap:
        raise ValueError(
            f"grid size {grid.n} exceeds the dense-sampler cap {n_cap}; "
            "use the circulant sampler (FBM) or a coarser grid"
        )
    factor = _cholesky_factor(spec, grid)
    z = replicate_rng(seed, replicate).standard_normal(grid.n)
    values = np.empty(grid.n + 1)
    values[0] = 0.0
    values[1:] = factor @ z
    return SamplePath(grid, values, spec, "cholesky", seed, replicate)


@lru_cache(maxsize=4)
def _circulant_eigenvalues(hurst: float, n: int, step: float) -> np.ndarray | None:
    """Eigenvalues of the 2n-circulant embedding of the fGn autocovariance.

    Returns None when the embedding is indefinite beyond tolerance (callers
    fall back to Cholesky).
    """
    k = np.arange(n + 1, dtype=float)
    h2 = 2.0 * hurst
    rho = 0.5 * step**h2 * ((k + 1) ** h2 + np.abs(k - 1) ** h2 - 2.0 * k**h2)
    c = np.concatenate([rho[:n], [rho[n]], rho[1:n][::-1]])
    lam = np.fft.fft(c).real
    worst = float(lam.min())
    if worst < -_EIG_TOL * float(lam.max()):
        log.warning(
            "circulant embedding indefinite for H=%g, n=%d (min eigenvalue %.3e); "
            "falling back to Cholesky",
            hurst,
            n,
            worst,
        )
        return None
    np.maximum(lam, 0.0, out=lam)
    return lam


def sample_fbm_circulant(
    hurst: float, grid: TimeGrid, seed: int, replicate: int = 0
) -> SamplePath:
    """FBM path via circulant embedding of the increment autocovariance.

    Distributionally identical to ``sample_cholesky`` with an FBM spec (the
    draws differ — only the law coincides).  With the eigenvalue vector lam of
    the length-M circulant, ``Re(fft(sqrt(lam/M) * (a + ib)))`` has exactly
    the embedded Toeplitz covariance; the first n entries are the fGn.
    """
    spec = KernelSpec(Family.FBM, hurst)
    lam = _circulant_eigenvalues(hurst, grid.n, grid.step)
    if lam is None:
        return sample_cholesky(spec, grid, seed, replicate)
    m = len(lam)
    z = replicate_rng(seed, replicate).standard_normal((2, m))
    spectrum = np.sqrt(lam / m) * (z[0] + 1j * z[1])
    fgn = np.fft.fft(spectrum).real[: grid.n]
    values = np.empty(grid.n + 1)
    values[0] = 0.0
    np.cumsum(fgn, out=values[1:])
    return SamplePath(grid, values, spec, "circulant", seed, replicate)
