"""Command-line entry point: ``superbunch {metrics,scan,synth,analyze}``.

Exit codes: 0 success, 1 usage error, 2 computation/domain error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from . import analysis, coherence, synth
from .errors import DomainError, TraceFormatError, UndersampledError
from .io import DELAY_CONVENTIONS, read_trace, write_json, write_trace
from .reference import MEASURED, SOURCE_BANDWIDTH_NM, SOURCE_WAVELENGTH_NM

OUTPUT_DIR_ENV = "SUPERBUNCH_OUTPUT_DIR"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3

SCAN_FIELDS = ["n", "r_pb", "f_pb", "g2_zero", "tpa_peak", "amplification"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    passes: int = 1
    wavelength_nm: float = SOURCE_WAVELENGTH_NM
    bandwidth_nm: float = SOURCE_BANDWIDTH_NM
    tau_start_fs: float = -2800.0
    tau_stop_fs: float = 2800.0
    samples: Optional[int] = None
    cutoff_fraction: float = 0.5
    output_path: Optional[str] = None
    format: str = "csv"
    decimals: int = 2
    delay_convention: str = "pass"
    plot: bool = False

    def spectrum(self) -> synth.SpectrumModel:
        return synth.spectrum_from_wavelength(
            synth.LightSourceSpec(self.wavelength_nm * 1e-9, self.bandwidth_nm * 1e-9)
        )


def _resolve_output(path: Optional[str], default_name: Optional[str]) -> Optional[Path]:
    if path is None and default_name is None:
        return None
    base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    p = Path(path) if path is not None else Path(default_name)
    if not p.is_absolute():
        p = base / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _check_passes(n: int) -> None:
    if n < 1:
        raise UsageError(f"--passes must be >= 1, got {n}")


def cmd_metrics(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    _check_passes(cfg.passes)
    row = coherence.metrics(cfg.passes).rounded(cfg.decimals)
    report = dict(row)
    if cfg.passes in MEASURED:
        report["measured"] = MEASURED[cfg.passes]
    target = _resolve_output(cfg.output_path, None)
    if cfg.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        buf = _io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SCAN_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        text = buf.getvalue()
    if target is not None:
        target.write_text(text)
    if cfg.format == "json":
        out.write(text)
    else:
        labels = {
            "n": "N", "r_pb": "R_P/B", "f_pb": "F_P/B", "g2_zero": "g2(0)",
            "tpa_peak": "TPA peak", "amplification": "amplification",
        }
        for key in SCAN_FIELDS:
            value = row[key]
            shown = value if key == "n" else f"{value:.{cfg.decimals}f}"
            out.write(f"{labels[key]:>14}  {shown}\n")
        if cfg.passes in MEASURED:
            m = MEASURED[cfg.passes]
            out.write(
                f"{'measured':>14}  g2(0)={m['g2_zero'][0]}+/-{m['g2_zero'][1]} "
                f"FWHM={m['fwhm_fs']} fs visibility={m['visibility']} "
                "(apparatus reference, not a model prediction)\n"
            )
    return EXIT_OK


def scan_rows(n_max: int, decimals: int) -> List[dict]:
    return [coherence.metrics(n).rounded(decimals) for n in range(1, n_max + 1)]


def cmd_scan(cfg: RunConfig, n_max: int, out=None) -> int:
    out = out or sys.stdout
    if n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {n_max}")
    rows = scan_rows(n_max, cfg.decimals)
    target = _resolve_output(cfg.output_path, f"scan_N{n_max}.{cfg.format}")
    if cfg.format == "json":
        write_json(rows, target)
    else:
        with open(target, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=SCAN_FIELDS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    out.write(f"wrote {len(rows)} rows to {target}\n")
    if cfg.plot:
        from .plotting import plot_scan

        out.write(f"wrote {plot_scan(rows, target.with_suffix('.png'))}\n")
    return EXIT_OK


def synth_trace(cfg: RunConfig, kind: str) -> synth.Interferogram:
    spectrum = cfg.spectrum()
    n = cfg.passes
    if cfg.samples is None:
        grid = synth.DelayGrid.for_fringes(cfg.tau_start_fs, cfg.tau_stop_fs, n, spectrum)
    else:
        grid = synth.DelayGrid(cfg.tau_start_fs, cfg.tau_stop_fs, cfg.samples)
    if kind == "full":
        return synth.full_trace(n, spectrum, grid)
    if kind == "envelope":
        return synth.envelope_trace(n, spectrum, grid)
    return synth.g2_curve(n, spectrum, grid)


def cmd_synth(cfg: RunConfig, kind: str, out=None) -> int:
    out = out or sys.stdout
    _check_passes(cfg.passes)
    trace = synth_trace(cfg, kind)
    target = _resolve_output(cfg.output_path, f"synth_N{cfg.passes}_{kind}.csv")
    side = write_trace(trace, target, cfg.delay_convention)
    out.write(f"wrote {trace.delays.samples} samples to {target} (metadata {side})\n")
    if cfg.plot:
        from .plotting import plot_trace

        png = plot_trace(
            trace, target.with_suffix(".png"), window_fs=400.0,
            delay_scale=DELAY_CONVENTIONS[cfg.delay_convention],
        )
        out.write(f"wrote {png}\n")
    return EXIT_OK


def cmd_analyze(cfg: RunConfig, input_path: str, explicit_spectrum: bool,
                explicit_passes: bool, out=None) -> int:
    out = out or sys.stdout
    trace = read_trace(
        input_path,
        spectrum=cfg.spectrum() if explicit_spectrum else None,
        n=cfg.passes if explicit_passes else None,
    )
    if trace.spectrum is None:
        trace.spectrum = cfg.spectrum()
    fcfg = analysis.FilterConfig.default(trace.spectrum, cfg.cutoff_fraction)
    result = analysis.analyze(trace, fcfg)
    payload = result.to_json()
    scale = DELAY_CONVENTIONS[cfg.delay_convention]
    for key in ("fwhm_fs", "fringe_period_fs"):
        if payload[key] is not None:
            payload[key] *= scale
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    target = _resolve_output(cfg.output_path, None)
    if target is not None:
        target.write_text(text)
    out.write(text)
    if cfg.plot and target is not None:
        from .plotting import plot_trace

        env = analysis.lowpass_envelope(trace, fcfg)
        png = plot_trace(trace, target.with_suffix(".png"), envelope=env, delay_scale=scale)
        out.write(f"wrote {png}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superbunch", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--passes", type=int, default=None,
                        help="passes through the interferometer (default 1)")
    common.add_argument("--wavelength-nm", type=float, default=None,
                        help=f"center wavelength (default {SOURCE_WAVELENGTH_NM})")
    common.add_argument("--bandwidth-nm", type=float, default=None,
                        help=f"full spectral width (default {SOURCE_BANDWIDTH_NM})")
    common.add_argument("-o", "--output", default=None,
                        help=f"output file; relative paths resolve under ${OUTPUT_DIR_ENV}")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--decimals", type=int, default=2,
                        help="rounding of reported reals (half-to-even)")
    common.add_argument("--delay-convention", choices=tuple(DELAY_CONVENTIONS), default="pass",
                        help="pass: one-pass arm delay; mirror: half of it (2*w0 carrier phase)")
    common.add_argument("--plot", action="store_true", help="also render a PNG next to the output")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("metrics", parents=[common], help="closed-form figures of merit for one N")
    p_scan = sub.add_parser("scan", parents=[common], help="metrics table for N = 1..n_max")
    p_scan.add_argument("--n-max", type=int, required=True)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--tau-start", type=float, default=-2800.0, help="fs")
    grid.add_argument("--tau-stop", type=float, default=2800.0, help="fs")
    grid.add_argument("--samples", type=int, default=None,
                      help="grid size (default: minimum resolving the fastest fringe)")
    p_synth = sub.add_parser("synth", parents=[common, grid], help="write a synthetic trace")
    p_synth.add_argument("--kind", choices=synth.KINDS, default="full")

    p_an = sub.add_parser("analyze", parents=[common], help="reduce a trace CSV to metrics")
    p_an.add_argument("input", help="delay_fs,value CSV")
    p_an.add_argument("--cutoff-fraction", type=float, default=0.5,
                      help="low-pass cutoff as a fraction of the carrier frequency")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if args.passes is not None:
        cfg.passes = args.passes
    if args.wavelength_nm is not None:
        cfg.wavelength_nm = args.wavelength_nm
    if args.bandwidth_nm is not None:
        cfg.bandwidth_nm = args.bandwidth_nm
    cfg.output_path = args.output
    cfg.format = args.format
    cfg.decimals = args.decimals
    cfg.delay_convention = args.delay_convention
    cfg.plot = args.plot
    if args.command == "synth":
        cfg.tau_start_fs, cfg.tau_stop_fs = args.tau_start, args.tau_stop
        cfg.samples = args.samples
    if args.command == "analyze":
        cfg.cutoff_fraction = args.cutoff_fraction
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(args)
    try:
        if args.command == "metrics":
            return cmd_metrics(cfg)
        if args.command == "scan":
            return cmd_scan(cfg, args.n_max)
        if args.command == "synth":
            return cmd_synth(cfg, args.kind)
        return cmd_analyze(
            cfg, args.input,
            explicit_spectrum=args.wavelength_nm is not None or args.bandwidth_nm is not None,
            explicit_passes=args.passes is not None,
        )
    except UsageError as exc:
        print(f"superbunch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndersampledError as exc:
        print(f"superbunch: error: {exc} (required samples: {exc.required_samples})",
              file=sys.stderr)
        return EXIT_DOMAIN
    except TraceFormatError as exc:
        print(f"superbunch: error: {getattr(args, 'input', '')}: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"superbunch: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        where = exc.filename or cfg.output_path or ""
        print(f"superbunch: error: I/O failure at {where}: {exc.strerror or exc}",
              file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
