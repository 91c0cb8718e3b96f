"""Trace files: two-column CSV plus a JSON metadata sidecar.

Floats are written with ``repr`` so a write/read cycle is lossless.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import TraceFormatError
from .synth import DelayGrid, Interferogram, SpectrumModel

PathLike = Union[str, Path]

# pass: tau is the one-pass inter-arm delay. mirror: tau/2, the delay per
# unit of single-arm mirror travel, under which the carrier phase is 2*w0*tau.
DELAY_CONVENTIONS = {"pass": 1.0, "mirror": 0.5}

UNIFORM_TOL = 1e-6
RESAMPLE_TOL = 0.01


def sidecar_path(csv_path: PathLike) -> Path:
    return Path(csv_path).with_suffix(".json")


def trace_metadata(trace: Interferogram, delay_convention: str = "pass") -> dict:
    meta = {
        "kind": trace.kind,
        "normalization": trace.normalization,
        "delay_convention": delay_convention,
        "samples": trace.delays.samples,
        "N": trace.n,
        "omega0": trace.spectrum.omega0 if trace.spectrum else None,
        "delta_omega": trace.spectrum.delta_omega if trace.spectrum else None,
    }
    meta.update(trace.meta)
    return meta


def write_trace(
    trace: Interferogram, path: PathLike, delay_convention: str = "pass"
) -> Path:
    """Write ``delay_fs,value`` CSV and its sidecar; returns the sidecar path."""
    scale = DELAY_CONVENTIONS[delay_convention]
    path = Path(path)
    lines = ["delay_fs,value"]
    lines += [f"{t * scale!r},{v!r}" for t, v in zip(trace.taus.tolist(), trace.values.tolist())]
    path.write_text("\n".join(lines) + "\n")
    side = sidecar_path(path)
    side.write_text(json.dumps(trace_metadata(trace, delay_convention), indent=2, sort_keys=True) + "\n")
    return side


def _parse_rows(text: str):
    delays, values, linenos = [], [], []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise TraceFormatError(f"expected 2 columns, found {len(cells)}", lineno)
        try:
            t, v = float(cells[0]), float(cells[1])
        except ValueError:
            if not header_seen and not delays:
                header_seen = True
                continue
            raise TraceFormatError(f"non-numeric entry {line!r}", lineno) from None
        if not (np.isfinite(t) and np.isfinite(v)):
            raise TraceFormatError(f"non-finite entry {line!r}", lineno)
        delays.append(t)
        values.append(v)
        linenos.append(lineno)
    if len(delays) < 2:
        raise TraceFormatError("trace needs at least two data rows")
    return np.array(delays), np.array(values), linenos


def read_trace(
    path: PathLike,
    spectrum: Optional[SpectrumModel] = None,
    n: Optional[int] = None,
    kind: Optional[str] = None,
) -> Interferogram:
    """Load a trace CSV, using the sidecar (if present) for metadata.

    Explicit arguments override the sidecar. Slightly jittered delay axes
    (under 1 %) are linearly resampled onto a uniform grid.
    """
    path = Path(path)
    delays, values, linenos = _parse_rows(path.read_text())
    meta = {}
    side = sidecar_path(path)
    if side.exists() and side != path:
        meta = json.loads(side.read_text())
    delays = delays / DELAY_CONVENTIONS[meta.get("delay_convention", "pass")]

    steps = np.diff(delays)
    if np.any(steps <= 0):
        bad = int(np.flatnonzero(steps <= 0)[0])
        raise TraceFormatError("delays must increase strictly", linenos[bad + 1])
    mean_step = (delays[-1] - delays[0]) / (delays.size - 1)
    jitter = float(np.max(np.abs(steps - mean_step)) / mean_step)
    grid = DelayGrid(float(delays[0]), float(delays[-1]), int(delays.size))
    if jitter > RESAMPLE_TOL:
        raise TraceFormatError(
            f"delay spacing jitter {jitter:.2%} exceeds {RESAMPLE_TOL:.0%}; resample upstream"
        )
    if jitter > UNIFORM_TOL:
        values = np.interp(grid.taus(), delays, values)

    if spectrum is None and meta.get("omega0") is not None:
        spectrum = SpectrumModel(meta["omega0"], meta["delta_omega"])
    if n is None:
        n = meta.get("N")
    return Interferogram(
        grid,
        values,
        normalization=meta.get("normalization", "raw"),
        kind=kind or meta.get("kind", "full"),
        n=n,
        spectrum=spectrum,
    )


def write_json(obj, path: PathLike) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
