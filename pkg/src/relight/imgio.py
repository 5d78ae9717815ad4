"""PNG/JPEG decode to normalized float64 arrays and PNG encode back."""

from __future__ import annotations

import numpy as np
from PIL import Image

from . import colorspace


def load_image(path):
    """Decode an 8-bit PNG/JPEG as an RGB float64 array in [0, 1]."""
    try:
        with Image.open(path) as im:
            data = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except Exception as exc:
        raise ValueError(f"cannot decode image {path}: {exc}") from exc
    return colorspace.from_uint8(data)


def save_png(path, img):
    """Quantize a [0, 1] float array to 8 bits and write a PNG."""
    data = colorspace.to_uint8(img)
    try:
        Image.fromarray(data).save(path, format="PNG")
    except Exception as exc:
        raise OSError(f"cannot write image {path}: {exc}") from exc
