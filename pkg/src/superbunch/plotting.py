"""Figures written next to the CSV/JSON outputs."""
from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .synth import Interferogram  # noqa: E402

RC = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.linewidth": 0.8,
    "legend.frameon": False,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "savefig.dpi": 150,
    # fixed metadata keeps repeated runs byte-identical
    "svg.hashsalt": "superbunch",
}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_scan(rows: Sequence[dict], path) -> Path:
    """Peak-to-background ratios and g2(0) against pass count, plus TPA peak."""
    ns = [r["n"] for r in rows]
    with plt.rc_context(RC):
        fig, (ax, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
        ax.plot(ns, [r["r_pb"] for r in rows], "s", ms=3, color="k", label=r"$R_{P/B}$")
        ax.plot(ns, [r["f_pb"] for r in rows], "o", ms=3, color="tab:red", label=r"$F_{P/B}$")
        ax.plot(ns, [r["g2_zero"] for r in rows], "^", ms=3, color="tab:blue", label=r"$g^{(2)}(0)$")
        ax.set_xlabel("passes N")
        ax.set_ylabel("ratio")
        ax.legend()
        ax2.plot(ns, [r["tpa_peak"] for r in rows], "o-", ms=3, color="k")
        ax2.set_xlabel("passes N")
        ax2.set_ylabel("TPA peak counts")
        return _save(fig, Path(path))


def plot_trace(
    trace: Interferogram,
    path,
    envelope: Optional[Interferogram] = None,
    window_fs: Optional[float] = None,
    delay_scale: float = 1.0,
) -> Path:
    taus = trace.taus * delay_scale
    keep = slice(None)
    if window_fs is not None:
        keep = abs(taus) <= window_fs
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6, 3.2))
        ax.plot(taus[keep], trace.values[keep], lw=0.6, color="tab:red", label=trace.kind)
        if envelope is not None:
            ax.plot(taus[keep], envelope.values[keep], lw=1.2, color="k", label="filtered")
        ax.set_xlabel("delay (fs)")
        ax.set_ylabel("normalized TPA counts" if trace.normalization != "raw" else "TPA counts")
        title = f"N = {trace.n}" if trace.n else None
        if title:
            ax.set_title(title)
        ax.legend(loc="upper right")
        return _save(fig, Path(path))
