"""Full-reference image quality metrics: PSNR and windowed SSIM.

Inputs are float arrays on a [0, peak] scale with matching shapes; values
are not range-checked so that shifted or perturbed comparisons stay legal.
PSNR averages squared error over all pixels and channels jointly. SSIM
runs on the Rec. 601 luma plane with the canonical 11x11 Gaussian window
(sigma 1.5, K1 = 0.01, K2 = 0.03) over valid window positions only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

WINDOW_SIZE = 11
WINDOW_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03

_LUMA_WEIGHTS = (0.299, 0.587, 0.114)


@dataclass(frozen=True)
class MetricsResult:
    """PSNR (dB, +inf for identical inputs) and SSIM for one comparison."""

    psnr_db: float
    ssim: float


def _pair(a, b):
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    if x.size == 0:
        raise ValueError("images are empty")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("images must be finite")
    return x, y


def psnr(a, b, peak: float = 1.0) -> float:
    """Peak signal-to-noise ratio 10*log10(peak^2 / MSE) in decibels.

    Returns math.inf when the images are identical (zero MSE).
    """
    if not peak > 0.0:
        raise ValueError("peak must be > 0")
    x, y = _pair(a, b)
    mse = float(np.mean((x - y) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def _gaussian_taps():
    offsets = np.arange(WINDOW_SIZE, dtype=np.float64) - (WINDOW_SIZE - 1) / 2.0
    g = np.exp(-(offsets ** 2) / (2.0 * WINDOW_SIGMA ** 2))
    return g / g.sum()


_TAPS = _gaussian_taps()


def _window_mean(plane):
    # separable valid-mode correlation with the normalized Gaussian window
    n = _TAPS.size
    h, w = plane.shape
    rows = np.zeros((h - n + 1, w), dtype=np.float64)
    for t in range(n):
        rows += _TAPS[t] * plane[t:t + h - n + 1, :]
    out = np.zeros((h - n + 1, w - n + 1), dtype=np.float64)
    for t in range(n):
        out += _TAPS[t] * rows[:, t:t + w - n + 1]
    return out


def _to_plane(img):
    if img.ndim == 2:
        return img
    if img.ndim == 3 and img.shape[-1] == 3:
        r, g, b = _LUMA_WEIGHTS
        return img[..., 0] * r + img[..., 1] * g + img[..., 2] * b
    if img.ndim == 3 and img.shape[-1] == 1:
        return img[..., 0]
    raise ValueError(f"expected a 2-D plane or (H, W, 3) image, got shape {img.shape}")


def ssim(a, b, peak: float = 1.0) -> float:
    """Mean structural similarity over sliding 11x11 Gaussian windows.

    Color images are reduced to luma first. Both dimensions must be at
    least the window size. Symmetric in its arguments; 1.0 exactly for
    identical inputs.
    """
    if not peak > 0.0:
        raise ValueError("peak must be > 0")
    x, y = _pair(a, b)
    px, py = _to_plane(x), _to_plane(y)
    if min(px.shape) < WINDOW_SIZE:
        raise ValueError(
            f"image too small for SSIM: needs both dimensions >= {WINDOW_SIZE}, "
            f"got {px.shape}")

    c1 = (SSIM_K1 * peak) ** 2
    c2 = (SSIM_K2 * peak) ** 2

    mu_x = _window_mean(px)
    mu_y = _window_mean(py)
    var_x = _window_mean(px * px) - mu_x * mu_x
    var_y = _window_mean(py * py) - mu_y * mu_y
    cov = _window_mean(px * py) - mu_x * mu_y

    num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))


def compute_metrics(a, b, peak: float = 1.0) -> MetricsResult:
    """Both metrics for one image pair."""
    return MetricsResult(psnr_db=psnr(a, b, peak), ssim=ssim(a, b, peak))
