#!/usr/bin/env python3
"""Render BER sweep CSVs as log-scale figures.

Consumes the simulator CLI's CSV schema
(``sweep,value_db,mode,frames,bits,bit_errors,ber``) and draws one curve per
receiver mode on a logarithmic BER axis.

Usage:
    plots.py <csv> --x sir|ebno -o fig.png [--floor 1e-6] [--format png|svg]

Zero-BER rows cannot sit on a log axis; they are clipped to a configurable
floor and the affected series is marked in the legend.  Malformed input exits
nonzero with a line-numbered message and writes nothing.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_COLUMNS = ["sweep", "value_db", "mode", "frames", "bits", "bit_errors", "ber"]
MODE_STYLES = {"proposed": "o-", "baseline": "s--", "analytic": "-"}
X_LABELS = {"sir": "SIR13 (dB)", "ebno": "Eb/N0 (dB)"}


class CsvFormatError(Exception):
    """Input does not conform to the sweep CSV schema."""


@dataclass
class Series:
    mode: str
    values_db: list[float]
    bers: list[float]


def parse_csv(path: str) -> list[Series]:
    """Read a sweep CSV into per-mode series, exactly as stored.

    Raises CsvFormatError with a line number on missing columns, non-numeric
    fields, or an empty body.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from None

    if not rows or rows[0] != EXPECTED_COLUMNS:
        got = ",".join(rows[0]) if rows else "<empty file>"
        raise CsvFormatError(f"{path}:1: expected header {','.join(EXPECTED_COLUMNS)!r}, got {got!r}")
    if len(rows) == 1:
        raise CsvFormatError(f"{path}:2: CSV body is empty")

    points: dict[str, list[tuple[float, float]]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(EXPECTED_COLUMNS):
            raise CsvFormatError(f"{path}:{lineno}: expected {len(EXPECTED_COLUMNS)} columns, "
                                 f"got {len(row)}")
        try:
            value_db = float(row[1])
            ber = float(row[6])
        except ValueError:
            raise CsvFormatError(f"{path}:{lineno}: non-numeric value_db or ber") from None
        if not ber == ber or ber < 0:  # NaN or negative
            raise CsvFormatError(f"{path}:{lineno}: ber out of range: {row[6]}")
        points.setdefault(row[2], []).append((value_db, ber))

    series = []
    for mode in sorted(points):
        pts = sorted(points[mode])
        series.append(Series(mode=mode,
                             values_db=[p[0] for p in pts],
                             bers=[p[1] for p in pts]))
    # the sweep CLI emits every mode at every swept value; ragged series mean
    # a torn or hand-edited file
    grids = {tuple(s.values_db) for s in series}
    if len(grids) > 1:
        counts = {s.mode: len(s.values_db) for s in series}
        raise CsvFormatError(f"{path}: modes cover different sweep values {counts} "
                             "(truncated file?)")
    return series


def render(series: list[Series], x_axis: str, output: str,
           floor: float = 1e-6, fmt: str | None = None) -> None:
    """Draw one log-y curve per mode and write the figure."""
    fig, ax = plt.subplots(figsize=(7.0, 4.8))
    for s in series:
        clipped = [max(b, floor) for b in s.bers]
        label = s.mode
        if any(b < floor for b in s.bers):
            label += f" (clipped at {floor:g})"
        style = MODE_STYLES.get(s.mode, "^-.")
        ax.semilogy(s.values_db, clipped, style, label=label)
    ax.set_xlabel(X_LABELS[x_axis])
    ax.set_ylabel("BER")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(output, format=fmt)
    plt.close(fig)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv_path", help="sweep CSV produced by the simulator CLI")
    parser.add_argument("--x", choices=("sir", "ebno"), required=True, dest="x_axis",
                        help="which sweep the CSV holds (sets the x label)")
    parser.add_argument("-o", "--output", required=True, help="image path to write")
    parser.add_argument("--floor", type=float, default=1e-6,
                        help="clip zero/low BER values to this level for the log axis")
    parser.add_argument("--format", choices=("png", "svg"), default=None,
                        help="image format (default: from the output extension)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2

    try:
        series = parse_csv(args.csv_path)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        render(series, args.x_axis, args.output, floor=args.floor, fmt=args.format)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
