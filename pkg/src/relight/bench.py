"""Throughput benchmark for the enhancement path.

Times the algorithm on seeded random images, one record per available
kernel backend so the compiled core and the NumPy fallback can be
compared. The first repeat is discarded as warm-up; optionally an
end-to-end record including PNG decode/encode is produced as well.
"""

from __future__ import annotations

import io
import statistics
import time
from dataclasses import dataclass

import numpy as np
from PIL import Image

from . import _backend, colorspace
from .pipeline import EnhancementConfig, enhance


@dataclass(frozen=True)
class BenchRecord:
    width: int
    height: int
    repeats: int
    mean_seconds: float
    stddev_seconds: float
    ns_per_pixel: float
    backend: str
    threads: int
    with_io: bool = False


def _timed_samples(fn, repeats):
    fn()  # warm-up repeat, discarded (first-touch page faults skew small runs)
    samples = []
    for _ in range(repeats - 1):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return samples


def _record(samples, width, height, repeats, backend, threads, with_io=False):
    mean = statistics.fmean(samples)
    std = statistics.stdev(samples) if len(samples) > 1 else 0.0
    return BenchRecord(
        width=width,
        height=height,
        repeats=repeats,
        mean_seconds=mean,
        stddev_seconds=std,
        ns_per_pixel=mean * 1e9 / (width * height),
        backend=backend,
        threads=threads,
        with_io=with_io,
    )


def run_bench(width, height, repeats=20, seed=42, threads=1, with_io=False,
              backends=None, cfg=None):
    """Benchmark full enhancement of random (height, width, 3) images.

    Returns one record per backend; with_io adds a second record per
    backend whose timed region includes a PNG decode and encode round
    trip.
    """
    if repeats < 3:
        raise ValueError("repeats must be >= 3")
    if width < 16 or height < 16:
        raise ValueError("benchmark dimensions must be >= 16")
    if backends is None:
        backends = _backend.available_backends()
    if cfg is None:
        cfg = EnhancementConfig()

    rng = np.random.default_rng(seed)
    img = rng.random((height, width, 3))

    png_bytes = None
    if with_io:
        buf = io.BytesIO()
        Image.fromarray(colorspace.to_uint8(img)).save(buf, format="PNG")
        png_bytes = buf.getvalue()

    records = []
    for name in backends:
        label = _backend.get_kernels(name).NAME
        samples = _timed_samples(lambda: enhance(img, cfg, threads=threads, backend=name),
                                 repeats)
        records.append(_record(samples, width, height, repeats, label, threads))
        if with_io:
            def round_trip():
                with Image.open(io.BytesIO(png_bytes)) as im:
                    decoded = colorspace.from_uint8(np.asarray(im.convert("RGB")))
                out = enhance(decoded, cfg, threads=threads, backend=name)
                sink = io.BytesIO()
                Image.fromarray(colorspace.to_uint8(out)).save(sink, format="PNG")

            samples = _timed_samples(round_trip, repeats)
            records.append(_record(samples, width, height, repeats, label,
                                   threads, with_io=True))
    return records
