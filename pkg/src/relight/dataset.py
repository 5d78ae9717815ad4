"""Paired low/reference dataset evaluation.

Walks two directories matched by filename stem (or an explicit manifest),
enhances each low image, scores PSNR/SSIM against the reference, and
aggregates a report. Timing covers the enhance call only, not decode or
encode, so the numbers characterize the algorithm rather than the codec.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import imgio, metrics
from .pipeline import EnhancementConfig, enhance

_IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg"}


@dataclass(frozen=True)
class PairedSample:
    id: str
    low_path: Path
    ref_path: Path


@dataclass(frozen=True)
class EvalRow:
    id: str
    psnr_db: float
    ssim: float
    seconds: float


@dataclass
class EvalReport:
    """Per-pair rows plus aggregate means.

    Infinite PSNR rows (identical pairs) are excluded from mean_psnr_db;
    psnr_rows_skipped records how many were left out. The identity
    baseline is the mean PSNR of the unenhanced low images against their
    references.
    """

    rows: list[EvalRow]
    errors: list[tuple[str, str]] = field(default_factory=list)
    mean_psnr_db: float = math.inf
    mean_ssim: float = 0.0
    mean_seconds: float = 0.0
    baseline_mean_psnr_db: float = math.inf
    psnr_rows_skipped: int = 0


def _list_images(directory):
    root = Path(directory)
    if not root.is_dir():
        raise NotADirectoryError(f"not a readable directory: {root}")
    files = {}
    for p in sorted(root.iterdir()):
        if p.is_file() and p.suffix.lower() in _IMAGE_SUFFIXES:
            files[p.stem] = p
    return files


def discover_pairs(low_dir, ref_dir):
    """Match low/reference files by name stem, ordered lexicographically.

    Files without a partner are reported through a warning, never silently
    dropped; an empty intersection raises.
    """
    low = _list_images(low_dir)
    ref = _list_images(ref_dir)
    common = sorted(low.keys() & ref.keys())
    unmatched = sorted((low.keys() | ref.keys()) - set(common))
    if unmatched:
        warnings.warn(f"unmatched files skipped: {', '.join(unmatched)}")
    if not common:
        raise ValueError(f"no pairs found between {low_dir} and {ref_dir}")
    return [PairedSample(id=stem, low_path=low[stem], ref_path=ref[stem]) for stem in common]


def read_manifest(path):
    """Read explicit pairs from a manifest: one 'low_path,ref_path' per line.

    Overrides directory discovery for datasets with nonstandard layouts.
    Blank lines and lines starting with '#' are skipped; paths are taken
    relative to the manifest's directory unless absolute.
    """
    manifest = Path(path)
    base = manifest.parent
    pairs = []
    for lineno, raw in enumerate(manifest.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise ValueError(f"{manifest}:{lineno}: expected 'low_path,ref_path'")
        low = Path(parts[0])
        ref = Path(parts[1])
        low = low if low.is_absolute() else base / low
        ref = ref if ref.is_absolute() else base / ref
        pairs.append(PairedSample(id=low.stem, low_path=low, ref_path=ref))
    if not pairs:
        raise ValueError(f"no pairs listed in manifest {manifest}")
    return pairs


def _finite_mean(values):
    finite = [v for v in values if math.isfinite(v)]
    skipped = len(values) - len(finite)
    if not finite:
        return math.inf, skipped
    return sum(finite) / len(finite), skipped


def evaluate(pairs, cfg: Optional[EnhancementConfig] = None, threads: int = 1) -> EvalReport:
    """Enhance every pair's low image and score it against the reference.

    Per-pair decode or shape failures become error entries and evaluation
    continues; it raises only when every pair failed.
    """
    if not pairs:
        raise ValueError("empty pair list")
    if cfg is None:
        cfg = EnhancementConfig()
    rows = []
    errors = []
    baselines = []
    for pair in pairs:
        try:
            low = imgio.load_image(pair.low_path)
            ref = imgio.load_image(pair.ref_path)
            if low.shape != ref.shape:
                raise ValueError(
                    f"shape mismatch: low {low.shape} vs ref {ref.shape}")
            t0 = time.perf_counter()
            enhanced = enhance(low, cfg, threads=threads)
            elapsed = time.perf_counter() - t0
            result = metrics.compute_metrics(enhanced, ref, peak=1.0)
            rows.append(EvalRow(id=pair.id, psnr_db=result.psnr_db,
                                ssim=result.ssim, seconds=elapsed))
            baselines.append(metrics.psnr(low, ref, peak=1.0))
        except Exception as exc:
            errors.append((pair.id, str(exc)))
    if not rows:
        raise RuntimeError(f"all {len(pairs)} pairs failed; first error: {errors[0][1]}")

    mean_psnr, skipped = _finite_mean([r.psnr_db for r in rows])
    baseline_mean, _ = _finite_mean(baselines)
    return EvalReport(
        rows=rows,
        errors=errors,
        mean_psnr_db=mean_psnr,
        mean_ssim=sum(r.ssim for r in rows) / len(rows),
        mean_seconds=sum(r.seconds for r in rows) / len(rows),
        baseline_mean_psnr_db=baseline_mean,
        psnr_rows_skipped=skipped,
    )


def _format_row(label, psnr_db, ssim_value, seconds):
    return f"{label},{psnr_db:.6f},{ssim_value:.6f},{seconds:.6f}"


def mean_line(report: EvalReport) -> str:
    """The aggregate line as serialized in reports."""
    return _format_row("MEAN", report.mean_psnr_db, report.mean_ssim,
                       report.mean_seconds)


def write_report(report: EvalReport, path, fmt: str = "csv"):
    """Serialize a report; columns are id,psnr_db,ssim,seconds.

    CSV is headerless data rows followed by the MEAN line; markdown renders
    the same rows as a table. Infinite PSNR serializes as 'inf'.
    """
    if fmt in ("md", "markdown"):
        lines = ["| id | psnr_db | ssim | seconds |",
                 "| --- | --- | --- | --- |"]
        for r in report.rows:
            lines.append(f"| {r.id} | {r.psnr_db:.6f} | {r.ssim:.6f} | {r.seconds:.6f} |")
        lines.append(f"| MEAN | {report.mean_psnr_db:.6f} | {report.mean_ssim:.6f} "
                     f"| {report.mean_seconds:.6f} |")
    elif fmt == "csv":
        lines = [_format_row(r.id, r.psnr_db, r.ssim, r.seconds) for r in report.rows]
        lines.append(mean_line(report))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
