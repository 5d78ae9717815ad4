"""Full-image enhancement.

The pipeline converts to HSV, boosts V through the cascaded log-domain
transfer (depth picked from the input's mean V), gamma-compresses S, keeps
hue untouched, and converts back. Everything is a pure per-pixel map, so
work may be partitioned across threads without changing the result.

Images are RGB ndarrays of shape (H, W, 3) with values in [0, 1]; a 2-D
array is treated as a bare V plane (the color stages are skipped).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend, tone


@dataclass
class EnhancementConfig:
    """Tuning knobs; defaults are the published operating point."""

    threshold_low: float = tone.THRESHOLD_LOW
    threshold_high: float = tone.THRESHOLD_HIGH
    gamma: float = 0.7
    eps: float = tone.DEFAULT_EPS
    levels_override: Optional[int] = None
    saturation: bool = True

    def __post_init__(self):
        if not 0.0 < self.threshold_low < self.threshold_high < 1.0:
            raise ValueError("thresholds must satisfy 0 < low < high < 1")
        if not self.gamma > 0.0:
            raise ValueError("gamma must be > 0")
        if not 0.0 < self.eps < 1e-3:
            raise ValueError("eps must lie in (0, 1e-3)")
        if self.levels_override is not None:
            if not isinstance(self.levels_override, (int, np.integer)) or self.levels_override < 1:
                raise ValueError("levels_override must be an integer >= 1")


@dataclass(frozen=True)
class ImageStats:
    """Statistics of the original input driving level selection."""

    mean_v: float


def _require_image(img, allow_2d=True):
    arr = np.asarray(img)
    if arr.dtype == np.uint8:
        raise TypeError("uint8 buffer; normalize with colorspace.from_uint8 first")
    if arr.dtype not in (np.float32, np.float64):
        raise TypeError(f"image dtype must be float32 or float64, got {arr.dtype}")
    if arr.ndim == 3 and arr.shape[-1] == 1:
        arr = arr[..., 0]
    if not (arr.ndim == 3 and arr.shape[-1] == 3) and not (allow_2d and arr.ndim == 2):
        raise ValueError(f"image must have shape (H, W, 3) or (H, W), got {arr.shape}")
    if arr.size == 0:
        raise ValueError("image is empty")
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    lo, hi = arr.min(), arr.max()
    if not (lo >= 0.0 and hi <= 1.0):
        raise ValueError("image values must be finite and lie in [0, 1]")
    return arr


def _mean_v(arr):
    if arr.ndim == 2:
        return float(arr.mean())
    v = np.maximum(np.maximum(arr[..., 0], arr[..., 1]), arr[..., 2])
    return float(v.mean())


def compute_mean_v(img) -> ImageStats:
    """Mean of the V plane (per-pixel channel max) of the unmodified input."""
    return ImageStats(mean_v=_mean_v(_require_image(img)))


def saturation_gamma(s, gamma=0.7):
    """Saturation compression s * s**gamma = s**(1 + gamma)."""
    if not gamma > 0.0:
        raise ValueError("gamma must be > 0")
    arr = tone._as_unit(s, "s")
    return tone._unwrap(arr ** (1.0 + gamma), s)


def _run_rows(fn, src, out, threads):
    rows = src.shape[0]
    if threads <= 1 or rows < 2 * threads:
        fn(src, out)
        return
    bounds = np.linspace(0, rows, threads + 1, dtype=int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(fn, src[a:b], out[a:b])
            for a, b in zip(bounds[:-1], bounds[1:])
            if b > a
        ]
        for fut in futures:
            fut.result()


def enhance(img, cfg: Optional[EnhancementConfig] = None, threads: int = 1,
            backend: str = "auto"):
    """Enhance a low-light image; returns a new float64 array in [0, 1].

    Cascade depth comes from select_levels on the input's mean V unless
    cfg.levels_override pins it. Hue is never modified; an all-white image
    passes through unchanged.
    """
    if cfg is None:
        cfg = EnhancementConfig()
    kernels = _backend.get_kernels(backend)
    arr = _require_image(img)
    if cfg.levels_override is not None:
        k = int(cfg.levels_override)
    else:
        k = tone.select_levels(_mean_v(arr), cfg.threshold_low, cfg.threshold_high)
    out = np.empty_like(arr)
    if arr.ndim == 2:
        _run_rows(lambda s, o: kernels.enhance_v_into(s, k, cfg.eps, o),
                  arr, out, threads)
    else:
        _run_rows(
            lambda s, o: kernels.enhance_rgb_into(
                s, k, cfg.gamma, cfg.eps, cfg.saturation, o),
            arr, out, threads)
    return out


def enhance_v_plane(v, k: int, eps: float = tone.DEFAULT_EPS, threads: int = 1,
                    backend: str = "auto"):
    """Elementwise exp(cascade(ln max(v, eps), k)) over a plane of values.

    The bare tone kernel, exposed so the benchmark can time it without the
    color-conversion stages.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError("k must be an integer >= 1")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    kernels = _backend.get_kernels(backend)
    arr = np.asarray(v, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("plane values must lie in [0, 1]")
    scalar = arr.ndim == 0
    plane = np.ascontiguousarray(np.atleast_2d(arr))
    out = np.empty_like(plane)
    _run_rows(lambda s, o: kernels.enhance_v_into(s, int(k), eps, o),
              plane, out, threads)
    if scalar:
        return float(out[0, 0])
    return out.reshape(arr.shape)
