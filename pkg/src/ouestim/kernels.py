"""Covariance kernels of the supported Gaussian drivers.

Four centered Gaussian processes G with G_0 = 0 are supported:

* fractional Brownian motion (``FBM``), covariance
  ``(s^{2H} + t^{2H} - |t-s|^{2H}) / 2``;
* sub-fractional Brownian motion (``SFBM``), covariance
  ``s^{2H} + t^{2H} - ((s+t)^{2H} + |t-s|^{2H}) / 2``;
* bifractional Brownian motion (``BIFBM``), covariance
  ``2^{-K} ((s^{2H} + t^{2H})^K - |t-s|^{2HK})``;
* standard Brownian motion (``BM``), covariance ``min(s, t)``.

Each kernel admits the split ``cov(s, r) = g(s, r) - kappa * |s-r|^(2*lp)``
where g is symmetric and smooth away from the axes; g and its partial
derivatives drive the deterministic limit checks in :mod:`ouestim.limit_theory`.
All evaluation functions broadcast over numpy arrays.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

__all__ = [
    "Family",
    "KernelSpec",
    "fbm",
    "sfbm",
    "bifbm",
    "bm",
    "cov",
    "cov_matrix",
    "cov_partial_r",
    "smooth_part_g",
    "smooth_part_g_s0",
    "smooth_part_g_sr",
    "split_params",
]


class Family(enum.Enum):
    """Which Gaussian driver a :class:`KernelSpec` describes."""

    FBM = "fbm"
    SFBM = "sfbm"
    BIFBM = "bifbm"
    BM = "bm"


@dataclass(frozen=True)
class KernelSpec:
    """A driver family with its parameters and growth metadata.

    ``growth_constant`` and ``growth_exponent`` are (c, gamma) such that
    ``E[G_t^2] <= c * t^{2*gamma}`` for all t >= 0; they feed truncation-tail
    bounds.  The bound need not be tight (it is deliberately slack for SFBM
    and BIFBM).
    """

    family: Family
    hurst: float = 0.5
    k: float = 1.0

    def __post_init__(self) -> None:
        if self.family is not Family.BM and not 0.0 < self.hurst < 1.0:
            raise ValueError(f"hurst must lie in (0, 1), got {self.hurst}")
        if self.family is Family.BIFBM:
            if not 0.0 < self.k <= 1.0:
                raise ValueError(f"bifractional k must lie in (0, 1], got {self.k}")
            if not 0.0 < self.hurst * self.k < 1.0:
                raise ValueError(
                    f"product hurst*k must lie in (0, 1), got {self.hurst * self.k}"
                )
        elif self.k != 1.0:
            raise ValueError(f"k is only meaningful for BIFBM, got {self.k}")

    @property
    def growth_constant(self) -> float:
        return {Family.FBM: 1.0, Family.SFBM: 2.0, Family.BIFBM: 2.0, Family.BM: 1.0}[
            self.family
        ]

    @property
    def growth_exponent(self) -> float:
        if self.family is Family.BM:
            return 0.5
        if self.family is Family.BIFBM:
            return self.hurst * self.k
        return self.hurst

    def label(self) -> str:
        """Short human-readable tag used in CSV output and logs."""
        if self.family is Family.BM:
            return "bm"
        if self.family is Family.BIFBM:
            return f"bifbm(H={self.hurst:g},K={self.k:g})"
        return f"{self.family.value}(H={self.hurst:g})"


def fbm(hurst: float) -> KernelSpec:
    return KernelSpec(Family.FBM, hurst)


def sfbm(hurst: float) -> KernelSpec:
    return KernelSpec(Family.SFBM, hurst)


def bifbm(hurst: float, k: float) -> KernelSpec:
    return KernelSpec(Family.BIFBM, hurst, k)


def bm() -> KernelSpec:
    return KernelSpec(Family.BM)


def _abs_pow(x: np.ndarray, exponent: float) -> np.ndarray:
    """|x|**exponent with the |x| ~ 0 cell forced to exactly 0.

    numpy returns 0.0 for 0.0**p with p > 0, but subnormal bases can raise
    spurious underflow warnings for small exponents; mask them out.
    """
    ax = np.abs(x)
    out = np.zeros_like(ax)
    mask = ax > 1e-300
    np.power(ax, exponent, out=out, where=mask)
    return out


def _check_times(*ts: np.ndarray) -> None:
    for t in ts:
        if np.any(t < 0):
            raise ValueError("times must be nonnegative")


def _prepare(s: ArrayLike, t: ArrayLike):
    sa, ta = np.asarray(s, dtype=float), np.asarray(t, dtype=float)
    _check_times(sa, ta)
    scalar = sa.ndim == 0 and ta.ndim == 0
    return sa, ta, scalar


def _ret(x: np.ndarray, scalar: bool):
    return float(x) if scalar else x


def cov(spec: KernelSpec, s: ArrayLike, t: ArrayLike) -> ArrayLike:
    """E[G_s G_t] for the driver described by ``spec``.

    Symmetric in (s, t); exactly zero whenever either argument is zero.
    """
    sa, ta, scalar = _prepare(s, t)
    if spec.family is Family.BM:
        return _ret(np.minimum(sa, ta), scalar)
    h2 = 2.0 * spec.hurst
    if spec.family is Family.FBM:
        out = 0.5 * (_abs_pow(sa, h2) + _abs_pow(ta, h2) - _abs_pow(ta - sa, h2))
    elif spec.family is Family.SFBM:
        out = (
            _abs_pow(sa, h2)
            + _abs_pow(ta, h2)
            - 0.5 * (_abs_pow(sa + ta, h2) + _abs_pow(ta - sa, h2))
        )
    else:
        k = spec.k
        out = 2.0 ** (-k) * (
            (_abs_pow(sa, h2) + _abs_pow(ta, h2)) ** k - _abs_pow(ta - sa, h2 * k)
        )
    # kernels vanish on the axes exactly; enforce against ulp-level pow noise
    out = np.where((sa == 0.0) | (ta == 0.0), 0.0, out)
    return _ret(out, scalar)


def cov_matrix(spec: KernelSpec, times: np.ndarray) -> np.ndarray:
    """Dense covariance matrix [cov(t_i, t_j)] for a 1-d array of times."""
    t = np.asarray(times, dtype=float)
    return cov(spec, t[:, None], t[None, :])


def cov_partial_r(spec: KernelSpec, s: ArrayLike, r: ArrayLike) -> ArrayLike:
    """Closed-form partial derivative (d/dr) cov(s, r) on the region r > s > 0.

    The kernels are not differentiable across the diagonal, so the strict
    ordering is enforced.  For BM the derivative is identically zero there.
    """
    sa, ra, scalar = _prepare(s, r)
    if np.any(ra <= sa) or np.any(sa <= 0):
        raise ValueError("cov_partial_r requires 0 < s < r")
    h = spec.hurst
    if spec.family is Family.BM:
        out = np.zeros(np.broadcast(sa, ra).shape)
    elif spec.family is Family.FBM:
        out = h * (_abs_pow(ra, 2 * h - 1) - _abs_pow(ra - sa, 2 * h - 1))
    elif spec.family is Family.SFBM:
        out = h * (
            2.0 * _abs_pow(ra, 2 * h - 1)
            - _abs_pow(ra + sa, 2 * h - 1)
            - _abs_pow(ra - sa, 2 * h - 1)
        )
    else:
        k = spec.k
        out = (
            2.0 ** (1 - k)
            * h
            * k
            * (
                _abs_pow(ra, 2 * h - 1)
                * (_abs_pow(sa, 2 * h) + _abs_pow(ra, 2 * h)) ** (k - 1)
                - _abs_pow(ra - sa, 2 * h * k - 1)
            )
        )
    return _ret(out, scalar)


def split_params(spec: KernelSpec) -> tuple[float, float]:
    """(kappa, 2*lambda') of the split cov(s,r) = g(s,r) - kappa*|s-r|^(2 lambda')."""
    if spec.family is Family.BM:
        return 0.5, 1.0
    if spec.family is Family.BIFBM:
        return 2.0 ** (-spec.k), 2.0 * spec.hurst * spec.k
    return 0.5, 2.0 * spec.hurst


def smooth_part_g(spec: KernelSpec, s: ArrayLike, r: ArrayLike) -> ArrayLike:
    """The symmetric smooth component g of the covariance split."""
    sa, ra, scalar = _prepare(s, r)
    h2 = 2.0 * spec.hurst
    if spec.family is Family.BM:
        out = 0.5 * (sa + ra)
    elif spec.family is Family.FBM:
        out = 0.5 * (_abs_pow(sa, h2) + _abs_pow(ra, h2))
    elif spec.family is Family.SFBM:
        out = _abs_pow(sa, h2) + _abs_pow(ra, h2) - 0.5 * _abs_pow(sa + ra, h2)
    else:
        out = 2.0 ** (-spec.k) * (_abs_pow(sa, h2) + _abs_pow(ra, h2)) ** spec.k
    return _ret(out, scalar)


def smooth_part_g_s0(spec: KernelSpec, s: ArrayLike) -> ArrayLike:
    """(d/ds) g(s, r) evaluated at r = 0, for s > 0.

    FBM and SFBM share the value H * s^{2H-1} (the sub-fractional (s+r)^{2H}
    term contributes -H*s^{2H-1} at r=0, cancelling half of its 2H*s^{2H-1}).
    """
    sa = np.asarray(s, dtype=float)
    if np.any(sa <= 0):
        raise ValueError("smooth_part_g_s0 requires s > 0")
    scalar = sa.ndim == 0
    h = spec.hurst
    if spec.family is Family.BM:
        out = np.full(sa.shape, 0.5)
    elif spec.family in (Family.FBM, Family.SFBM):
        out = h * _abs_pow(sa, 2 * h - 1)
    else:
        k = spec.k
        out = 2.0 ** (1 - k) * h * k * _abs_pow(sa, 2 * h * k - 1)
    return _ret(out, scalar)


def smooth_part_g_sr(spec: KernelSpec, s: ArrayLike, r: ArrayLike) -> ArrayLike:
    """Mixed partial (d^2/ds dr) g(s, r) for s > 0, r > 0.

    Identically zero for FBM and BM, whose smooth parts are sums of
    single-variable functions.
    """
    sa, ra, scalar = _prepare(s, r)
    if np.any(sa <= 0) or np.any(ra <= 0):
        raise ValueError("smooth_part_g_sr requires s > 0 and r > 0")
    h = spec.hurst
    if spec.family in (Family.BM, Family.FBM):
        out = np.zeros(np.broadcast(sa, ra).shape)
    elif spec.family is Family.SFBM:
        out = -h * (2 * h - 1) * _abs_pow(sa + ra, 2 * h - 2)
    else:
        k = spec.k
        out = (
            2.0 ** (2 - k)
            * h
            * h
            * k
            * (k - 1)
            * _abs_pow(sa * ra, 2 * h - 1)
            * (_abs_pow(sa, 2 * h) + _abs_pow(ra, 2 * h)) ** (k - 2)
        )
    return _ret(out, scalar)
