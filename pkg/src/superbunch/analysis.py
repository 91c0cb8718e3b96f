"""Envelope extraction and figures of merit for TPA interferograms.

The chain mirrors how a measured trace is reduced: strip the carrier
fringes with a zero-phase low-pass filter, read peak and background off the
envelope, convert to g2(0), and measure the envelope width. Visibility and
fringe period come from the unfiltered trace.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from .errors import BandOverlapError, DomainError, GridSpanError
from .synth import FS, Interferogram, SpectrumModel, check_fringe_sampling

BACKGROUND_SPAN_COHERENCE_TIMES = 10
OUTER_FRACTION = 0.2


@dataclass(frozen=True)
class FilterConfig:
    """Raised-cosine low-pass mask; both fields in rad/s.

    The pass band is flat up to ``cutoff - taper_width/2`` and zero above
    ``cutoff + taper_width/2``.
    """

    cutoff: float
    taper_width: float

    def __post_init__(self):
        if not 0 < self.taper_width < self.cutoff:
            raise DomainError(
                f"need 0 < taper_width < cutoff, got {self.taper_width} and {self.cutoff}"
            )

    @classmethod
    def default(cls, spectrum: SpectrumModel, cutoff_fraction: float = 0.5):
        cutoff = cutoff_fraction * spectrum.omega0
        return cls(cutoff, min(spectrum.omega0 / 10, cutoff / 2))

    def check(self, spectrum: SpectrumModel, n: Optional[int] = None) -> None:
        if not self.cutoff < spectrum.omega0:
            raise DomainError(
                f"cutoff {self.cutoff:.4g} rad/s must lie below the carrier "
                f"{spectrum.omega0:.4g} rad/s"
            )
        if n is not None and n * spectrum.delta_omega >= self.cutoff:
            raise BandOverlapError(
                f"envelope band N*dw = {n * spectrum.delta_omega:.4g} rad/s reaches "
                f"the cutoff {self.cutoff:.4g} rad/s: envelope and carrier bands "
                "overlap, filtering ill-posed"
            )

    def mask(self, omega: np.ndarray) -> np.ndarray:
        lo = self.cutoff - 0.5 * self.taper_width
        x = (np.abs(omega) - lo) / self.taper_width
        return np.where(x <= 0, 1.0, np.where(x >= 1, 0.0, 0.5 * (1 + np.cos(np.pi * x))))


@dataclass(frozen=True)
class TraceMetrics:
    peak: float
    background: float
    peak_to_background: float
    g2_zero: float
    fwhm_fs: Optional[float]
    visibility: Optional[float]
    fringe_period_fs: Optional[float]

    def to_json(self) -> dict:
        return {
            "peak": self.peak,
            "background": self.background,
            "f_pb": self.peak_to_background,
            "g2_zero": self.g2_zero,
            "fwhm_fs": self.fwhm_fs,
            "visibility": self.visibility,
            "fringe_period_fs": self.fringe_period_fs,
        }


def _spectrum_of(trace: Interferogram) -> SpectrumModel:
    if trace.spectrum is None:
        raise DomainError("trace carries no spectrum model; attach one before analysis")
    return trace.spectrum


def _angular_freqs(trace: Interferogram, size: int) -> np.ndarray:
    return 2 * math.pi * np.fft.rfftfreq(size, d=trace.delays.spacing * FS)


def lowpass_envelope(trace: Interferogram, config: FilterConfig) -> Interferogram:
    """Zero-phase spectral masking of the carrier fringes.

    The trace is mirrored before the FFT so the implied periodic signal has
    no jump at the grid edges.
    """
    spectrum = trace.spectrum
    if spectrum is not None:
        config.check(spectrum, trace.n)
    x = trace.values
    ext = np.concatenate([x, x[::-1]])
    omega = _angular_freqs(trace, ext.size)
    filtered = np.fft.irfft(np.fft.rfft(ext) * config.mask(omega), n=ext.size)
    return replace(trace, values=filtered[: x.size], kind="envelope")


def _outer_background(values: np.ndarray) -> float:
    edge = max(1, int(round(OUTER_FRACTION * values.size)))
    return float(np.median(np.concatenate([values[:edge], values[-edge:]])))


def _peak_index(values: np.ndarray) -> int:
    """Centre of the top plateau, so flat traces resolve to the middle."""
    top = values.max()
    near = np.flatnonzero(values >= top - 1e-9 * max(abs(top), 1e-300))
    return int(near[near.size // 2])


def peak_background(envelope: Interferogram) -> Tuple[float, float]:
    """Maximum sample and median of the outermost 20 % of samples per side."""
    values = envelope.values
    ipk = _peak_index(values)
    if envelope.spectrum is not None:
        need = BACKGROUND_SPAN_COHERENCE_TIMES * envelope.spectrum.coherence_time_fs
        taus = envelope.taus
        left, right = taus[ipk] - taus[0], taus[-1] - taus[ipk]
        if min(left, right) < need * (1 - 1e-9):
            raise GridSpanError(
                f"background estimate needs {need:.1f} fs on each side of the peak "
                f"({BACKGROUND_SPAN_COHERENCE_TIMES} coherence times); grid offers "
                f"{left:.1f} fs left and {right:.1f} fs right"
            )
    return float(values[ipk]), _outer_background(values)


def g2_from_ratio(ratio: float) -> float:
    if ratio < 1:
        raise DomainError(f"peak-to-background ratio {ratio} < 1 is unphysical")
    return 1 + 2 * (ratio - 1)


def _crossing(taus, excess, half, start, step) -> Optional[float]:
    i = start
    while 0 <= i + step < excess.size:
        j = i + step
        if excess[j] < half:
            frac = (excess[i] - half) / (excess[i] - excess[j])
            return taus[i] + frac * (taus[j] - taus[i])
        i = j
    return None


def fwhm(envelope: Interferogram, background: Optional[float] = None) -> float:
    """Full width at half of the peak height above background, in fs."""
    values = envelope.values
    if background is None:
        background = _outer_background(values)
    excess = values - background
    ipk = int(np.argmax(excess))
    half = 0.5 * excess[ipk]
    if not half > 0:
        raise DomainError("no peak above background, FWHM undefined")
    taus = envelope.taus
    left = _crossing(taus, excess, half, ipk, -1)
    right = _crossing(taus, excess, half, ipk, +1)
    if left is None or right is None:
        raise DomainError("no half-maximum crossing inside the delay grid")
    return float(right - left)


def visibility(full: Interferogram) -> float:
    """(max - min) / (max + min) within one coherence time of the peak."""
    if full.kind != "full":
        raise DomainError(f"visibility needs a fringe-resolved trace, got kind {full.kind!r}")
    spectrum = _spectrum_of(full)
    check_fringe_sampling(full.delays, full.n or 1, spectrum)
    taus = full.taus
    t0 = taus[int(np.argmax(full.values))]
    window = full.values[np.abs(taus - t0) <= spectrum.coherence_time_fs]
    hi, lo = float(window.max()), float(window.min())
    if hi + lo == 0:
        return 0.0
    return (hi - lo) / (hi + lo)


def fringe_period(full: Interferogram, config: FilterConfig) -> Optional[float]:
    """Period in fs of the strongest carrier component above the filter cutoff.

    A rectangular spectrum gives flat-topped carrier lobes, so the argmax bin
    alone is ambiguous; the frequency is the power-weighted centroid of the
    lobe within ``cutoff / 2`` of the argmax. Returns ``None`` when the trace
    has no carrier content.
    """
    x = full.values - full.values.mean()
    power = np.abs(np.fft.rfft(x)) ** 2
    omega = _angular_freqs(full, x.size)
    band = omega > config.cutoff
    if not band.any() or power[band].max() <= 1e-24 * max(power.max(), 1e-300):
        return None
    w_peak = omega[band][np.argmax(power[band])]
    lobe = band & (np.abs(omega - w_peak) <= 0.5 * config.cutoff)
    centroid = float(np.sum(omega[lobe] * power[lobe]) / np.sum(power[lobe]))
    return 2 * math.pi / (centroid * FS)


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except DomainError as exc:
        exc.args = (f"{name}: {exc.args[0]}",) + exc.args[1:]
        exc.stage = name
        raise


def analyze(trace: Interferogram, config: FilterConfig) -> TraceMetrics:
    """Full reduction of a fringe-resolved trace to :class:`TraceMetrics`."""
    envelope = _stage("lowpass", lowpass_envelope, trace, config)
    peak, background = _stage("peak_background", peak_background, envelope)
    if background <= 0:
        raise DomainError(f"peak_background: background {background} must be positive")
    ratio = peak / background
    if 1 - 1e-12 < ratio < 1:
        ratio = 1.0  # flat trace, round-off only
    g2 = _stage("g2", g2_from_ratio, ratio)
    width = None
    if peak - background > 1e-9 * abs(background):
        width = _stage("fwhm", fwhm, envelope, background)
    vis = period = None
    if trace.kind == "full":
        vis = _stage("visibility", visibility, trace)
        period = _stage("fringe_period", fringe_period, trace, config)
    return TraceMetrics(peak, background, ratio, g2, width, vis, period)
