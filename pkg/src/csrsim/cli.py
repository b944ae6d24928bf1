"""Command-line front end: parse a config, run a sweep, emit CSV.

Subcommands:
    sweep-sir    BER versus the third cell's interference level (SIR13)
    sweep-ebno   BER versus the per-bit SNR (Eb/N0)
    analytic     evaluate the closed-form error probability once

The CSV schema is fixed: ``sweep,value_db,mode,frames,bits,bit_errors,ber``
with floats in shortest round-trip decimal and rows sorted by
(value_db, mode).  CSV is the only stdout payload; progress lines go to
stderr.  Exit codes: 0 success, 2 configuration error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .analytic import AnalyticParams, ber_closed_form
from .channel import ChannelModel
from .harness import BerRecord, SimConfig, sweep

CSV_HEADER = "sweep,value_db,mode,frames,bits,bit_errors,ber"

DEFAULT_SIR_VALUES = "0,5,10,15,20,25,30"
DEFAULT_EBNO_VALUES = "0,3,6,9,12,15,18,21,24,27,30"

# config-file keys -> (parser, SimConfig field)
_CONFIG_KEYS = {
    "sir12": (float, "sir12_db"),
    "sir13": (float, "sir13_db"),
    "ebno": (float, "ebno_db"),
    "channel": (str, "channel"),
    "csi": (str, "csi"),
    "pdp_decay": (float, "pdp_decay"),
    "seed": (int, "master_seed"),
    "min_errors": (int, "min_errors"),
    "max_frames": (int, "max_frames"),
    "min_frames": (int, "min_frames"),
    "batch_frames": (int, "batch_frames"),
    "workers": (int, "workers"),
    "baseline_bs2_interferes": (lambda s: s.lower() in ("1", "true", "yes"), "baseline_bs2_interferes"),
    "values": (str, "values"),
}


class ConfigError(Exception):
    pass


def _parse_values(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad sweep values {text!r}: {exc}") from None
    if not values:
        raise ConfigError("sweep values must be a nonempty comma-separated list")
    return values


def read_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` config file ('#' starts a comment)."""
    settings = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        parser, _ = _CONFIG_KEYS[key]
        try:
            settings[key] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from None
    return settings


def build_sim_config(settings: dict) -> SimConfig:
    """Turn the merged key/value settings into a validated SimConfig."""
    settings = dict(settings)
    cfg = SimConfig()
    channel_kind = settings.pop("channel", cfg.channel.kind)
    pdp_decay = settings.pop("pdp_decay", cfg.channel.pdp_decay)
    settings.pop("values", None)
    try:
        channel = ChannelModel(kind=channel_kind, pdp_decay=pdp_decay)
        fields = {_CONFIG_KEYS[key][1]: value for key, value in settings.items()}
        return replace(cfg, channel=channel, **fields)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def records_to_csv(records: list[BerRecord]) -> str:
    """Render records as the canonical CSV, sorted by (value_db, mode)."""
    rows = [CSV_HEADER]
    for r in sorted(records, key=lambda r: (r.value_db, r.mode)):
        rows.append(",".join([
            r.sweep, _fmt(r.value_db), r.mode,
            str(r.frames), str(r.bits), str(r.bit_errors), _fmt(r.ber),
        ]))
    return "\n".join(rows) + "\n"


def _print_point_summaries(records: list[BerRecord], axis: str) -> None:
    by_value: dict[float, list[BerRecord]] = {}
    for r in records:
        by_value.setdefault(r.value_db, []).append(r)
    for value in sorted(by_value):
        parts = [f"{r.mode} ber={r.ber:.4g}" for r in sorted(by_value[value], key=lambda r: r.mode)]
        print(f"{axis}={value:g} dB: " + ", ".join(parts), file=sys.stderr)


def _add_sweep_arguments(p: argparse.ArgumentParser, default_values: str) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--values", default=None, help=f"comma-separated dB values (default {default_values})")
    p.add_argument("--sir12", type=float, default=None, help="SIR to the cooperating cell in dB")
    p.add_argument("--sir13", type=float, default=None, help="SIR to the interfering cell in dB")
    p.add_argument("--ebno", type=float, default=None, help="Eb/N0 in dB")
    p.add_argument("--channel", choices=("flat", "multipath", "awgn"), default=None)
    p.add_argument("--csi", choices=("perfect", "ls"), default=None)
    p.add_argument("--pdp-decay", type=float, default=None, dest="pdp_decay",
                   help="exponential power-delay-profile decay rate")
    p.add_argument("--min-errors", type=int, default=None, dest="min_errors")
    p.add_argument("--max-frames", type=int, default=None, dest="max_frames")
    p.add_argument("--min-frames", type=int, default=None, dest="min_frames")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default=None, help="CSV path (stdout when omitted)")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csrsim",
                                     description="Three-cell OFDM interference-cancellation simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    sir = sub.add_parser("sweep-sir", help="sweep the interfering cell's SIR (dB)")
    _add_sweep_arguments(sir, DEFAULT_SIR_VALUES)

    ebno = sub.add_parser("sweep-ebno", help="sweep Eb/N0 (dB)")
    _add_sweep_arguments(ebno, DEFAULT_EBNO_VALUES)

    ana = sub.add_parser("analytic", help="print the closed-form BER for one setting")
    ana.add_argument("--ebno", type=float, required=True, help="Eb/N0 in dB")
    ana.add_argument("--sir", default="", help="comma-separated interferer SIRs in dB")
    ana.add_argument("--m", type=int, default=4, help="QAM order (perfect square)")
    return parser


def _run_sweep(args: argparse.Namespace, axis: str, default_values: str) -> int:
    settings = read_config_file(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    values_text = settings.get("values", default_values)
    values = _parse_values(values_text if isinstance(values_text, str) else str(values_text))
    cfg = build_sim_config(settings)

    records = sweep(cfg, axis, values)
    _print_point_summaries(records, axis)
    csv_text = records_to_csv(records)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(csv_text)
        except OSError as exc:
            print(f"error: cannot write output {args.output}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(csv_text)
    return 0


def _run_analytic(args: argparse.Namespace) -> int:
    sirs = tuple(float(v) for v in args.sir.split(",") if v.strip() != "")
    try:
        value = ber_closed_form(AnalyticParams(m=args.m, sir_db=sirs, ebno_db=args.ebno))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(repr(value))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2

    try:
        if args.command == "analytic":
            return _run_analytic(args)
        if args.command == "sweep-sir":
            return _run_sweep(args, "sir13", DEFAULT_SIR_VALUES)
        return _run_sweep(args, "ebno", DEFAULT_EBNO_VALUES)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - uniform runtime failure path
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
