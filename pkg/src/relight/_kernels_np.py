"""NumPy kernels, the fallback when the compiled extension is unavailable.

Same call surface as the compiled module: callers pass a preallocated
output buffer and C-contiguous float64 inputs.
"""

import numpy as np

from . import colorspace

NAME = "numpy"


def enhance_v_into(v, k, eps, out):
    """Elementwise exp(f^k(ln max(v, eps))) with the V = 1 short circuit."""
    x = np.log(np.maximum(v, eps))
    for _ in range(k):
        x = x * x / (x - 1.0)
    np.exp(x, out=x)
    np.copyto(out, np.where(v >= 1.0, 1.0, x))
    np.clip(out, 0.0, 1.0, out=out)


def enhance_rgb_into(img, k, gamma, eps, apply_saturation, out):
    """Boost V, gamma-compress S, keep hue; round-trips through HSV."""
    hsv = colorspace.rgb_to_hsv(img)
    v2 = np.empty_like(hsv[..., 2])
    enhance_v_into(hsv[..., 2], k, eps, v2)
    hsv[..., 2] = v2
    if apply_saturation:
        hsv[..., 1] **= 1.0 + gamma
    np.copyto(out, colorspace.hsv_to_rgb(hsv))
    np.clip(out, 0.0, 1.0, out=out)
