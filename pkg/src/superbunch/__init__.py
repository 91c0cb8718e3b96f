"""Two-photon superbunching of broadband chaotic light in an N-pass
cascaded Michelson interferometer."""

from .analysis import (
    FilterConfig,
    TraceMetrics,
    analyze,
    fwhm,
    g2_from_ratio,
    lowpass_envelope,
    peak_background,
    visibility,
)
from .coherence import (
    CoefficientSet,
    CoherenceMetrics,
    amplification_factor,
    binomial,
    constant_coefficient,
    interference_coefficients,
    metrics,
    tpa_peak_counts,
)
from .errors import DomainError
from .paths import brute_trace, census, enumerate_terms
from .synth import (
    DelayGrid,
    Interferogram,
    LightSourceSpec,
    SpectrumModel,
    default_spectrum,
    envelope_trace,
    full_trace,
    g2_curve,
    spectrum_from_wavelength,
)

__version__ = "0.1.0"
