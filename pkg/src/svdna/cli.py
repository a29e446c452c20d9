"""Command line interface.

Subcommands:

    restyle       transfer one image's noise character onto another
    batch         restyle a whole source tree under a sampled policy
    noise-report  append per-image noise statistics to a CSV
    align         domain alignment distance between two noise CSVs
    dice          per-class and mean dice between mask files
    bench         wall-time benchmark of the noise transfer

Exit codes: 0 success, 2 usage or validation error, 3 I/O error, 4 numeric
failure (non-finite data or SVD non-convergence). batch --verify exits 1
when outputs do not match their recomputation. The SVDNA_LOG environment
variable (error, warn, info, debug; default warn) sets stderr verbosity.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .engine import RESIZE_POLICIES, svdna_transfer
from .errors import (
    ConfigError,
    ConvergenceFailureError,
    DecodeError,
    EmptySetError,
    ImageTooSmallError,
    NonFiniteEntryError,
    ShapeMismatchError,
    ThresholdOutOfRangeError,
    UnsupportedFormatError,
    WriteError,
    ZeroVarianceError,
)
from .imaging import encode_image, load_image, save_image
from .metrics import (
    NoiseStats,
    domain_alignment,
    immerkaer_sigma,
    snr,
    wavelet_sigma,
)
from .policy import (
    apply_decision,
    decision_for_ordinal,
    list_domain_images,
    load_registry_config,
)
from .synthetic import random_image

log = logging.getLogger("svdna.cli")

NOISE_REPORT_HEADER = "path,domain,width,height,snr,sigma_immerkaer,sigma_wavelet"
MANIFEST_HEADER = "ordinal,source_path,decision,domain,style_path,k,out_path"

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

_USAGE_ERRORS = (
    ThresholdOutOfRangeError,
    ShapeMismatchError,
    EmptySetError,
    ConfigError,
    ImageTooSmallError,
    ZeroVarianceError,
    ValueError,
)
_IO_ERRORS = (UnsupportedFormatError, DecodeError, WriteError, OSError)
_NUMERIC_ERRORS = (ConvergenceFailureError, NonFiniteEntryError)


def _configure_logging() -> None:
    name = os.environ.get("SVDNA_LOG", "warn").strip().lower()
    level = _LOG_LEVELS.get(name, logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )
    if name not in _LOG_LEVELS:
        log.warning("unknown SVDNA_LOG level %r, using warn", name)


def cmd_restyle(args) -> int:
    source = load_image(args.source)
    target = load_image(args.target)
    start = time.perf_counter()
    result = svdna_transfer(source, target, args.k, args.resize_policy)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    save_image(result, args.out)
    height, width = result.shape
    print(f"{width}x{height} k={args.k} elapsed_ms={elapsed_ms:.1f}", file=sys.stderr)
    return 0


def _manifest_row(registry, ordinal: int, src_path: Path, decision, out_path: Path):
    if decision.kind == "transfer":
        style = registry.target(decision.domain).images[decision.style_index]
        return (
            str(ordinal),
            str(src_path),
            "transfer",
            decision.domain,
            str(style),
            str(decision.k),
            str(out_path),
        )
    return (str(ordinal), str(src_path), "no_transfer", "", "", "", str(out_path))


def cmd_batch(args) -> int:
    registry, k_range, seed = load_registry_config(args.config)
    if args.seed is not None:
        seed = args.seed
    # Registry construction has already checked that every listed image
    # exists, so missing-file failures happen before any output is written.
    if args.verify:
        return _verify_batch(args.out, registry, k_range, seed)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    sources = registry.source.images

    def process(ordinal: int):
        src_path = sources[ordinal]
        decision = decision_for_ordinal(registry, k_range, seed, ordinal)
        img = load_image(src_path)
        result = apply_decision(img, decision, registry)
        out_path = out_dir / src_path.name
        save_image(result, out_path)
        log.debug("ordinal %d: %s -> %s (%s)", ordinal, src_path, out_path, decision.kind)
        return _manifest_row(registry, ordinal, src_path, decision, out_path)

    # Decisions depend only on (seed, ordinal) and rows are emitted in
    # ordinal order, so results are byte-identical for any worker count.
    workers = max(1, args.workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(process, range(len(sources))))

    manifest = out_dir / "manifest.csv"
    with open(manifest, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MANIFEST_HEADER.split(","))
        writer.writerows(rows)
    log.info("wrote %d outputs and %s", len(rows), manifest)
    return 0


def _verify_batch(out_dir, registry, k_range, seed: int) -> int:
    """Recompute every manifest entry and hash-compare against disk."""
    out_dir = Path(out_dir)
    manifest = out_dir / "manifest.csv"
    if not manifest.is_file():
        raise FileNotFoundError(f"no manifest to verify: {manifest}")
    with open(manifest, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != MANIFEST_HEADER.split(","):
            raise ValueError(f"{manifest}: unexpected manifest columns {reader.fieldnames}")
        rows = list(reader)

    mismatches = 0
    for row in rows:
        try:
            ordinal = int(row["ordinal"])
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{manifest}: bad ordinal {row.get('ordinal')!r}") from exc
        decision = decision_for_ordinal(registry, k_range, seed, ordinal)
        expected = _manifest_row(
            registry, ordinal, Path(row["source_path"]), decision, Path(row["out_path"])
        )
        if tuple(row.values()) != expected:
            log.error("ordinal %d: manifest row does not match recomputed decision", ordinal)
            mismatches += 1
            continue
        img = load_image(row["source_path"])
        result = apply_decision(img, decision, registry)
        out_path = Path(row["out_path"])
        want = hashlib.sha256(encode_image(result, out_path.suffix)).hexdigest()
        got = hashlib.sha256(out_path.read_bytes()).hexdigest()
        if want != got:
            log.error("ordinal %d: %s differs from recomputation", ordinal, out_path)
            mismatches += 1
    if mismatches:
        log.error("verify failed: %d of %d entries mismatched", mismatches, len(rows))
        return 1
    print(f"verified {len(rows)} entries", file=sys.stderr)
    return 0


def _format_stat(value: float | None) -> str:
    return "" if value is None else f"{value:.6g}"


def cmd_noise_report(args) -> int:
    paths: list[Path] = []
    for item in args.inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(list_domain_images(p))
        elif p.is_file():
            paths.append(p)
        else:
            raise FileNotFoundError(f"no such input: {p}")
    if not paths:
        raise EmptySetError("no input images found")

    rows = []
    for p in paths:
        img = load_image(p)
        height, width = img.shape
        try:
            snr_text = _format_stat(snr(img))
        except ZeroVarianceError:
            snr_text = ""
        sigmas = []
        for estimator in (immerkaer_sigma, wavelet_sigma):
            try:
                sigmas.append(_format_stat(estimator(img)))
            except ImageTooSmallError as exc:
                log.warning("%s: %s", p, exc)
                sigmas.append("")
        rows.append((str(p), args.domain, str(width), str(height), snr_text, *sigmas))

    out = Path(args.out)
    header_needed = not out.exists() or out.stat().st_size == 0
    with open(out, "a", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if header_needed:
            writer.writerow(NOISE_REPORT_HEADER.split(","))
        writer.writerows(rows)
    log.info("appended %d rows to %s", len(rows), out)
    return 0


def _read_noise_csv(path) -> list[NoiseStats]:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such noise CSV: {p}")
    required = ("snr", "sigma_immerkaer", "sigma_wavelet")
    stats = []
    with open(p, newline="") as fh:
        reader = csv.DictReader(fh)
        have = reader.fieldnames or []
        if any(column not in have for column in required):
            raise ValueError(f"{p}: noise CSV must have columns {required}, got {have}")
        for line_no, row in enumerate(reader, start=2):
            try:
                cells = {column: row[column] for column in required}
                if None in cells.values():
                    raise ValueError("short row")
                if cells["sigma_immerkaer"] == "" or cells["sigma_wavelet"] == "":
                    log.warning("%s line %d: missing sigma, row skipped", p, line_no)
                    continue
                stats.append(
                    NoiseStats(
                        snr=float(cells["snr"]) if cells["snr"] != "" else None,
                        sigma_immerkaer=float(cells["sigma_immerkaer"]),
                        sigma_wavelet=float(cells["sigma_wavelet"]),
                    )
                )
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{p} line {line_no}: malformed row: {exc}") from exc
    return stats


def cmd_align(args) -> int:
    set_a = _read_noise_csv(args.csv_a)
    set_b = _read_noise_csv(args.csv_b)
    distance = domain_alignment(set_a, set_b)
    print(format(distance, "#.4g"))
    return 0


def _parse_classes(text: str) -> list[int]:
    try:
        classes = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"--classes must be comma-separated integers: {text!r}") from exc
    if not classes:
        raise ValueError("--classes must name at least one class")
    for c in classes:
        if not 0 <= c <= 255:
            raise ValueError(f"class id {c} outside [0, 255]")
    if len(set(classes)) != len(classes):
        raise ValueError(f"duplicate class ids in {text!r}")
    return classes


def cmd_dice(args) -> int:
    classes = _parse_classes(args.classes)
    if len(args.pred) != len(args.gt):
        raise ValueError(
            f"got {len(args.pred)} --pred but {len(args.gt)} --gt masks"
        )
    # Counts are pooled over all pairs before the ratio (micro average), so a
    # single pair reduces exactly to the per-image dice.
    intersections = {c: 0 for c in classes}
    denominators = {c: 0 for c in classes}
    for pred_path, gt_path in zip(args.pred, args.gt):
        pred = load_image(pred_path)
        gt = load_image(gt_path)
        if pred.shape != gt.shape:
            raise ShapeMismatchError(
                f"mask shapes differ: {pred.shape} vs {gt.shape} "
                f"({pred_path} vs {gt_path})"
            )
        for c in classes:
            pred_mask = pred == c
            gt_mask = gt == c
            intersections[c] += int(np.count_nonzero(pred_mask & gt_mask))
            denominators[c] += int(np.count_nonzero(pred_mask)) + int(
                np.count_nonzero(gt_mask)
            )
    per_class = {
        c: 1.0 if denominators[c] == 0 else 2.0 * intersections[c] / denominators[c]
        for c in classes
    }
    mean = sum(per_class.values()) / len(per_class)
    print(",".join([f"dice_{c}" for c in classes] + ["mean"]))
    print(",".join([f"{per_class[c]:.6g}" for c in classes] + [f"{mean:.6g}"]))
    return 0


def cmd_bench(args) -> int:
    if args.size < 16:
        raise ValueError(f"--size must be at least 16, got {args.size}")
    if args.iterations < 1:
        raise ValueError(f"--iterations must be at least 1, got {args.iterations}")
    k = args.k if args.k is not None else min(30, args.size)
    durations = []
    for i in range(args.iterations):
        source = random_image(args.size, args.size, seed=args.seed + 2 * i)
        target = random_image(args.size, args.size, seed=args.seed + 2 * i + 1)
        start = time.perf_counter()
        svdna_transfer(source, target, k)
        durations.append(time.perf_counter() - start)
    median_ms = float(np.median(durations)) * 1000.0
    p95_ms = float(np.percentile(durations, 95.0)) * 1000.0
    print("median_ms,p95_ms")
    print(f"{median_ms:.3f},{p95_ms:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svdna",
        description="SVD-based noise transfer between grayscale images.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("restyle", help="restyle one image with another's noise")
    p.add_argument("source", type=Path, help="content image (PNG/TIFF)")
    p.add_argument("target", type=Path, help="style image whose noise is adopted")
    p.add_argument("-k", type=int, required=True, help="noise transfer threshold")
    p.add_argument("-o", "--out", type=Path, required=True, help="output image path")
    p.add_argument(
        "--resize-policy",
        choices=RESIZE_POLICIES,
        default="resize-target",
        help="shape reconciliation when sizes differ (default resize-target)",
    )
    p.set_defaults(func=cmd_restyle)

    p = sub.add_parser("batch", help="restyle a source tree under a sampled policy")
    p.add_argument("config", type=Path, help="registry config file (TOML)")
    p.add_argument("-o", "--out", type=Path, required=True, help="output directory")
    p.add_argument("--workers", type=int, default=1, help="thread count (default 1)")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument(
        "--verify",
        action="store_true",
        help="recompute and hash-compare an existing output directory",
    )
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("noise-report", help="append image noise statistics to a CSV")
    p.add_argument("inputs", nargs="+", help="image files or directories")
    p.add_argument("--domain", required=True, help="domain label for the rows")
    p.add_argument("-o", "--out", type=Path, required=True, help="CSV to append to")
    p.set_defaults(func=cmd_noise_report)

    p = sub.add_parser("align", help="alignment distance between two noise CSVs")
    p.add_argument("csv_a", type=Path)
    p.add_argument("csv_b", type=Path)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("dice", help="per-class and mean dice between mask files")
    p.add_argument("--pred", type=Path, nargs="+", required=True, help="predicted masks")
    p.add_argument("--gt", type=Path, nargs="+", required=True, help="reference masks")
    p.add_argument("--classes", required=True, help="comma-separated class ids")
    p.set_defaults(func=cmd_dice)

    p = sub.add_parser("bench", help="time the noise transfer on random images")
    p.add_argument("--size", type=int, default=256, help="square image size (>= 16)")
    p.add_argument("--iterations", type=int, default=20, help="timed runs (>= 1)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random images")
    p.add_argument("-k", type=int, default=None, help="threshold (default min(30, size))")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _NUMERIC_ERRORS as exc:
        log.error("%s", exc)
        return 4
    except _USAGE_ERRORS as exc:
        log.error("%s", exc)
        return 2
    except _IO_ERRORS as exc:
        log.error("%s", exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
