"""RGB <-> HSV conversion (hexcone model) and Rec. 601 luma.

Arrays carry channels on the last axis. Hue is stored normalized in
[0, 1) turns rather than degrees; achromatic pixels get hue 0. All math
is float64; 8-bit buffers cross the boundary through from_uint8/to_uint8.
"""

from __future__ import annotations

import numpy as np


def _channels(arr, name):
    out = np.asarray(arr, dtype=np.float64)
    if out.shape[-1:] != (3,):
        raise ValueError(f"{name} must have 3 channels on the last axis")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} channels must be finite")
    return out


def rgb_to_hsv(rgb):
    """Convert RGB in [0, 1] to HSV with h in [0, 1) turns.

    v = max(r, g, b) exactly; s = (v - min) / v for v > 0, else 0; hue by
    the standard piecewise sextant formula, with ties resolved in r, g, b
    order and achromatic hue defined as 0.
    """
    arr = _channels(rgb, "rgb")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("rgb channels must lie in [0, 1]")
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    v = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    c = v - mn

    safe_v = np.where(v > 0.0, v, 1.0)
    s = np.where(v > 0.0, c / safe_v, 0.0)

    safe_c = np.where(c > 0.0, c, 1.0)
    h = np.where(
        c == 0.0,
        0.0,
        np.where(
            v == r,
            ((g - b) / safe_c) % 6.0,
            np.where(v == g, (b - r) / safe_c + 2.0, (r - g) / safe_c + 4.0),
        ),
    ) / 6.0
    # float rounding in the modulo can land exactly on 1.0; wrap it back
    h = np.where(h >= 1.0, 0.0, h)
    return np.stack([h, s, v], axis=-1)


def hsv_to_rgb(hsv):
    """Inverse hexcone conversion; h in [0, 1), s and v in [0, 1]."""
    arr = _channels(hsv, "hsv")
    h, s, v = arr[..., 0], arr[..., 1], arr[..., 2]
    if np.any(h < 0.0) or np.any(h >= 1.0):
        raise ValueError("hue must lie in [0, 1)")
    if np.any(s < 0.0) or np.any(s > 1.0) or np.any(v < 0.0) or np.any(v > 1.0):
        raise ValueError("saturation and value must lie in [0, 1]")
    h6 = h * 6.0
    sextant = np.floor(h6)
    f = h6 - sextant
    idx = sextant.astype(np.int64) % 6

    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))

    conds = [idx == i for i in range(6)]
    r = np.select(conds, [v, q, p, p, t, v])
    g = np.select(conds, [t, v, v, q, p, p])
    b = np.select(conds, [p, p, t, v, v, q])
    return np.stack([r, g, b], axis=-1)


def luma(rgb):
    """Rec. 601 grayscale reduction 0.299 r + 0.587 g + 0.114 b."""
    arr = _channels(rgb, "rgb")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("rgb channels must lie in [0, 1]")
    return arr[..., 0] * 0.299 + arr[..., 1] * 0.587 + arr[..., 2] * 0.114


def from_uint8(arr):
    """Normalize an 8-bit buffer to float64 by exact division by 255."""
    data = np.asarray(arr)
    if data.dtype != np.uint8:
        raise TypeError("expected a uint8 buffer")
    return data.astype(np.float64) / 255.0


def to_uint8(arr):
    """Quantize [0, 1] floats: round half away from zero, clamp to [0, 255]."""
    data = np.asarray(arr, dtype=np.float64)
    if not np.all(np.isfinite(data)):
        raise ValueError("cannot quantize non-finite values")
    scaled = np.floor(data * 255.0 + 0.5)
    return np.clip(scaled, 0.0, 255.0).astype(np.uint8)
