"""Command-line front end: enhance, eval, bench, trace.

Exit codes: 0 on success, 1 for runtime failures (decode/write errors,
empty datasets), 2 for usage errors (argparse convention).
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
import time
from pathlib import Path

from . import bench, dataset, imgio, metrics, pipeline, tone

THREADS_ENV = "RETINEX_THREADS"


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _bounded_int(low, high):
    def parse(text):
        value = _positive_int(text)
        if not low <= value <= high:
            raise argparse.ArgumentTypeError(f"must lie in [{low}, {high}]")
        return value
    return parse


def _min_int(minimum):
    def parse(text):
        value = _positive_int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return value
    return parse


def _add_tone_flags(parser, with_levels=True):
    if with_levels:
        parser.add_argument("--levels", type=_positive_int, default=None,
                            help="override the automatic cascade depth")
    parser.add_argument("--threshold-low", type=float, default=tone.THRESHOLD_LOW,
                        help="mean-V threshold below which depth 3 is used")
    parser.add_argument("--threshold-high", type=float, default=tone.THRESHOLD_HIGH,
                        help="mean-V threshold above which depth 1 is used")
    parser.add_argument("--gamma", type=float, default=0.7,
                        help="saturation compression exponent")
    parser.add_argument("--no-saturation", action="store_true",
                        help="leave the saturation channel untouched")
    parser.add_argument("--eps", type=float, default=tone.DEFAULT_EPS,
                        help="zero-value clamp applied before the log")


def _add_threads_flag(parser):
    parser.add_argument("--threads", type=_positive_int, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or 1)")


def _resolve_threads(args, parser):
    if args.threads is not None:
        return args.threads
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            parser.error(f"{THREADS_ENV} must be an integer, got {raw!r}")
        if value < 1:
            parser.error(f"{THREADS_ENV} must be >= 1")
        return value
    return 1


def _config_from_args(args, parser):
    try:
        return pipeline.EnhancementConfig(
            threshold_low=args.threshold_low,
            threshold_high=args.threshold_high,
            gamma=args.gamma,
            eps=args.eps,
            levels_override=getattr(args, "levels", None),
            saturation=not args.no_saturation,
        )
    except ValueError as exc:
        parser.error(str(exc))


def cmd_enhance(args, parser):
    cfg = _config_from_args(args, parser)
    threads = _resolve_threads(args, parser)
    t_start = time.perf_counter()
    img = imgio.load_image(args.input)
    stats = pipeline.compute_mean_v(img)
    if cfg.levels_override is not None:
        k = cfg.levels_override
    else:
        k = tone.select_levels(stats.mean_v, cfg.threshold_low, cfg.threshold_high)
    t0 = time.perf_counter()
    out = pipeline.enhance(img, cfg, threads=threads)
    elapsed = time.perf_counter() - t0
    imgio.save_png(args.output, out)
    print(f"mu_v={stats.mean_v:.6f} K={k} threads={threads} seconds={elapsed:.6f}")
    if args.with_io:
        print(f"seconds_with_io={time.perf_counter() - t_start:.6f}")
    return 0


def cmd_eval(args, parser):
    cfg = _config_from_args(args, parser)
    threads = _resolve_threads(args, parser)
    pairs = dataset.discover_pairs(args.low_dir, args.ref_dir)
    report = dataset.evaluate(pairs, cfg, threads=threads)
    dataset.write_report(report, args.out, args.format)
    for pair_id, message in report.errors:
        print(f"error: {pair_id}: {message}", file=sys.stderr)
    print(dataset.mean_line(report))
    print(f"baseline_mean_psnr_db={report.baseline_mean_psnr_db:.6f}")
    if report.psnr_rows_skipped:
        print(f"note: {report.psnr_rows_skipped} infinite-PSNR rows excluded "
              f"from the mean", file=sys.stderr)
    return 0


def _print_bench(records, fmt):
    if fmt == "csv":
        for r in records:
            print(f"{r.backend},{r.width},{r.height},{r.repeats},{r.threads},"
                  f"{int(r.with_io)},{r.mean_seconds:.6f},{r.stddev_seconds:.6f},"
                  f"{r.ns_per_pixel:.3f}")
    elif fmt == "md":
        print("| backend | width | height | repeats | threads | io "
              "| mean_seconds | stddev_seconds | ns_per_pixel |")
        print("| --- | --- | --- | --- | --- | --- | --- | --- | --- |")
        for r in records:
            print(f"| {r.backend} | {r.width} | {r.height} | {r.repeats} "
                  f"| {r.threads} | {int(r.with_io)} | {r.mean_seconds:.6f} "
                  f"| {r.stddev_seconds:.6f} | {r.ns_per_pixel:.3f} |")
    else:
        for r in records:
            label = " io=1" if r.with_io else ""
            print(f"backend={r.backend} width={r.width} height={r.height} "
                  f"repeats={r.repeats} threads={r.threads}{label} "
                  f"mean_seconds={r.mean_seconds:.6f} "
                  f"stddev_seconds={r.stddev_seconds:.6f} "
                  f"ns_per_pixel={r.ns_per_pixel:.3f}")


def cmd_bench(args, parser):
    threads = _resolve_threads(args, parser)
    records = bench.run_bench(args.width, args.height, repeats=args.repeats,
                              seed=args.seed, threads=threads,
                              with_io=args.with_io)
    _print_bench(records, args.format)
    return 0


def cmd_trace(args, parser):
    cfg = _config_from_args(args, parser)
    threads = _resolve_threads(args, parser)
    img = imgio.load_image(args.input)
    ref = imgio.load_image(args.ref) if args.ref else None
    if ref is not None and ref.shape != img.shape:
        raise ValueError(f"reference shape {ref.shape} does not match input {img.shape}")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    for k in range(1, args.max_levels + 1):
        cfg_k = dataclasses.replace(cfg, levels_override=k)
        enhanced = pipeline.enhance(img, cfg_k, threads=threads)
        imgio.save_png(out_dir / f"level_{k}.png", enhanced)
        mean_v = pipeline.compute_mean_v(enhanced).mean_v
        line = f"{k},{mean_v:.6f}"
        if ref is not None:
            line += f",{metrics.psnr(enhanced, ref):.6f}"
        lines.append(line)
        print(line)
    (out_dir / "trace.csv").write_text("\n".join(lines) + "\n")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="relight",
        description="Low-light image enhancement via a closed-form "
                    "log-domain illumination transfer.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enh = sub.add_parser("enhance", help="enhance one image to a PNG")
    p_enh.add_argument("input", help="input PNG/JPEG")
    p_enh.add_argument("output", help="output PNG path")
    _add_tone_flags(p_enh)
    _add_threads_flag(p_enh)
    p_enh.add_argument("--with-io", action="store_true",
                       help="also report end-to-end time including decode/encode")
    p_enh.set_defaults(func=cmd_enhance)

    p_eval = sub.add_parser("eval", help="score enhancement on a paired dataset")
    p_eval.add_argument("low_dir", help="directory of low-light inputs")
    p_eval.add_argument("ref_dir", help="directory of reference images")
    p_eval.add_argument("out", help="report output path")
    p_eval.add_argument("--format", choices=("csv", "md"), default="csv",
                        help="report format")
    _add_tone_flags(p_eval)
    _add_threads_flag(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_bench = sub.add_parser("bench", help="benchmark enhancement throughput")
    p_bench.add_argument("width", type=_min_int(16), help="image width in pixels")
    p_bench.add_argument("height", type=_min_int(16), help="image height in pixels")
    p_bench.add_argument("--repeats", type=_min_int(3), default=20,
                         help="timed repeats; the first is warm-up")
    p_bench.add_argument("--seed", type=int, default=42,
                         help="seed for the generated benchmark images")
    p_bench.add_argument("--with-io", action="store_true",
                         help="add records including PNG decode/encode")
    p_bench.add_argument("--format", choices=("csv", "md"), default=None,
                         help="machine-readable output format")
    _add_threads_flag(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_trace = sub.add_parser("trace",
                             help="sweep cascade depths and record the effect")
    p_trace.add_argument("input", help="input PNG/JPEG")
    p_trace.add_argument("out_dir", help="directory for per-level PNGs and trace.csv")
    p_trace.add_argument("--max-levels", type=_bounded_int(1, 8), default=3,
                         help="largest cascade depth to render")
    p_trace.add_argument("--ref", default=None,
                         help="reference image for a PSNR column")
    _add_tone_flags(p_trace, with_levels=False)
    _add_threads_flag(p_trace)
    p_trace.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except SystemExit:
        raise
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
