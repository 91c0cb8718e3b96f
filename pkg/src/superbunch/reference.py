"""Measured values from the 1550 nm / 30 nm ASE experiment.

These come from the physical apparatus (true source spectrum, stage
calibration, detector) and are not predictions of the idealized model. They
are printed next to the model values for comparison only.
"""

MEASURED = {
    1: {
        "g2_zero": (1.87, 0.02),
        "peak_to_background": 1.44,
        "fwhm_fs": 123.0,
        "visibility": 0.992,
        "tpa_peak_counts": 7.34,
    },
    2: {
        "g2_zero": (2.42, 0.03),
        "peak_to_background": 1.71,
        "fwhm_fs": 95.0,
        "visibility": 0.998,
        "tpa_peak_counts": 11.05,
    },
}

SOURCE_WAVELENGTH_NM = 1550.0
SOURCE_BANDWIDTH_NM = 30.0
