"""Closed-form synthesis of TPA interferograms for a rectangular spectrum.

Delays are given in femtoseconds; ``tau`` is the one-pass inter-arm delay, so
a route that visits arm 2 in ``q`` of its passes picks up ``q * tau``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from .coherence import CoefficientSet, _check_passes, overlap_sum
from .errors import DomainError, UndersampledError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact
FS = 1e-15
SAMPLES_PER_FRINGE = 20

KINDS = ("full", "envelope", "g2")
NORMALIZATIONS = ("raw", "background-normalized")


def sinc(x):
    """Unnormalized sinc, sin(x)/x, with sinc(0) = 1."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-8
    xs = x[small]
    out[small] = 1.0 - xs * xs / 6.0
    xl = x[~small]
    out[~small] = np.sin(xl) / xl
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SpectrumModel:
    """Flat spectrum of full width ``delta_omega`` around ``omega0`` (rad/s)."""

    omega0: float
    delta_omega: float

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if not 0 < self.delta_omega < 2 * self.omega0:
            raise DomainError(
                f"delta_omega must lie in (0, 2*omega0), got {self.delta_omega}"
            )

    @property
    def optical_period_fs(self) -> float:
        return 2 * math.pi / self.omega0 / FS

    @property
    def coherence_time_fs(self) -> float:
        return 2 * math.pi / self.delta_omega / FS


@dataclass(frozen=True)
class LightSourceSpec:
    center_wavelength: float  # m
    bandwidth: float  # m, full width

    def __post_init__(self):
        if not (self.center_wavelength > 0 and self.bandwidth > 0):
            raise DomainError("wavelength and bandwidth must be positive")
        if not self.bandwidth < self.center_wavelength:
            raise DomainError("bandwidth must be smaller than the center wavelength")


def spectrum_from_wavelength(src: LightSourceSpec) -> SpectrumModel:
    omega0 = 2 * math.pi * SPEED_OF_LIGHT / src.center_wavelength
    return SpectrumModel(omega0, omega0 * src.bandwidth / src.center_wavelength)


def default_spectrum() -> SpectrumModel:
    """The 1550 nm / 30 nm ASE source."""
    return spectrum_from_wavelength(LightSourceSpec(1550e-9, 30e-9))


@dataclass(frozen=True)
class DelayGrid:
    start: float  # fs
    stop: float  # fs
    samples: int

    def __post_init__(self):
        if not self.start < self.stop:
            raise DomainError(f"grid start {self.start} must be below stop {self.stop}")
        if self.samples < 2:
            raise DomainError(f"grid needs at least 2 samples, got {self.samples}")

    @property
    def spacing(self) -> float:
        return (self.stop - self.start) / (self.samples - 1)

    def taus(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.samples)

    @classmethod
    def for_fringes(cls, start: float, stop: float, n: int, spectrum: SpectrumModel):
        """Smallest grid over [start, stop] that resolves the fastest fringe.

        The sample count is made odd so a symmetric grid hits tau = 0.
        """
        samples = required_samples(start, stop, n, spectrum)
        return cls(start, stop, samples + (1 - samples % 2))


def max_spacing_fs(n: int, spectrum: SpectrumModel) -> float:
    return 2 * math.pi / (2 * n * spectrum.omega0) / SAMPLES_PER_FRINGE / FS


def required_samples(start: float, stop: float, n: int, spectrum: SpectrumModel) -> int:
    return int(math.ceil((stop - start) / max_spacing_fs(n, spectrum))) + 1


def check_fringe_sampling(grid: DelayGrid, n: int, spectrum: SpectrumModel) -> None:
    limit = max_spacing_fs(n, spectrum)
    if grid.spacing > limit * (1 + 1e-12):
        need = required_samples(grid.start, grid.stop, n, spectrum)
        raise UndersampledError(
            f"delay spacing {grid.spacing:.4g} fs exceeds {limit:.4g} fs "
            f"({SAMPLES_PER_FRINGE} samples per fastest fringe at N={n}); "
            f"use at least {need} samples",
            required_samples=need,
        )


@dataclass
class Interferogram:
    delays: DelayGrid
    values: np.ndarray
    normalization: str = "background-normalized"
    kind: str = "full"
    n: Optional[int] = None
    spectrum: Optional[SpectrumModel] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.delays.samples,):
            raise DomainError(
                f"{self.values.size} values for a {self.delays.samples}-sample grid"
            )
        if self.kind not in KINDS:
            raise DomainError(f"unknown trace kind {self.kind!r}")
        if self.normalization not in NORMALIZATIONS:
            raise DomainError(f"unknown normalization {self.normalization!r}")

    @property
    def taus(self) -> np.ndarray:
        return self.delays.taus()

    def scaled(self, factor: float) -> "Interferogram":
        return replace(self, values=self.values * factor)


def _omega_tau(spectrum: SpectrumModel, grid: DelayGrid):
    t = grid.taus() * FS
    return spectrum.omega0 * t, spectrum.delta_omega * t


def _envelope_terms(n: int, spectrum: SpectrumModel, grid: DelayGrid) -> np.ndarray:
    """sum_m (c_m / C_c) sinc^2(m dw tau / 2)."""
    coeffs = CoefficientSet.for_passes(n)
    _, dwt = _omega_tau(spectrum, grid)
    acc = np.zeros(grid.samples)
    for m, cm in enumerate(coeffs.c_interference, start=1):
        acc += float(Fraction(cm, coeffs.c_constant)) * sinc(0.5 * m * dwt) ** 2
    return acc


def _wrap(values, grid, normalize, kind, n, spectrum, c_constant):
    if normalize:
        return Interferogram(grid, values, "background-normalized", kind, n, spectrum)
    return Interferogram(grid, values * float(c_constant), "raw", kind, n, spectrum)


def envelope_trace(
    n: int, spectrum: SpectrumModel, delays: DelayGrid, normalize: bool = True
) -> Interferogram:
    """Non-oscillating part C_c + sum_m c_m sinc^2(m dw tau / 2)."""
    _check_passes(n)
    values = 1.0 + _envelope_terms(n, spectrum, delays)
    return _wrap(values, delays, normalize, "envelope", n, spectrum,
                 CoefficientSet.for_passes(n).c_constant)


def g2_curve(n: int, spectrum: SpectrumModel, delays: DelayGrid) -> Interferogram:
    _check_passes(n)
    values = 1.0 + 2.0 * _envelope_terms(n, spectrum, delays)
    return Interferogram(delays, values, "background-normalized", "g2", n, spectrum)


def full_trace(
    n: int, spectrum: SpectrumModel, delays: DelayGrid, normalize: bool = True
) -> Interferogram:
    """Fringe-resolved TPA trace for any pass count.

    The census sum over (k_a, k_b) factorizes into the square of a single
    photon amplitude sum X(tau) = sum_k u(k) sinc(k dw tau / 2) e^{i k w0 tau}.
    Because u and sinc are even in k, X is real, which is why the trace can
    never go negative. Normalizing by u(0) keeps everything finite at large N.
    """
    _check_passes(n)
    check_fringe_sampling(delays, n, spectrum)
    wt, dwt = _omega_tau(spectrum, delays)
    u0 = overlap_sum(n, 0)
    amp = np.ones(delays.samples)
    for k in range(1, n + 1):
        weight = float(Fraction(overlap_sum(n, k), u0))
        amp += 2.0 * weight * sinc(0.5 * k * dwt) * np.cos(k * wt)
    return _wrap(amp * amp, delays, normalize, "full", n, spectrum, u0 * u0)
