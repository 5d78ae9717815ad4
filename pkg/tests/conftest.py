import numpy as np
import pytest
from PIL import Image


def smooth_field(rng, height, width):
    """Smooth random scalar field in [0, 1] built from low-frequency waves."""
    y = np.linspace(0.0, 1.0, height)[:, None]
    x = np.linspace(0.0, 1.0, width)[None, :]
    field = np.zeros((height, width))
    for _ in range(4):
        fy, fx = rng.uniform(0.5, 3.0, size=2)
        py, px = rng.uniform(0.0, 1.0, size=2)
        field += rng.uniform(0.3, 1.0) * np.sin(2 * np.pi * (fy * y + py)) \
            * np.sin(2 * np.pi * (fx * x + px))
    field -= field.min()
    peak = field.max()
    if peak > 0:
        field /= peak
    return field


def natural_image(rng, height=64, width=64, lo=0.2, hi=1.0):
    """Smooth 3-channel image with every channel inside [lo, hi]."""
    planes = [smooth_field(rng, height, width) for _ in range(3)]
    return lo + (hi - lo) * np.stack(planes, axis=-1)


def write_png(path, img01):
    """Quantize a [0, 1] float array and write it as PNG (test-side writer)."""
    data = np.clip(np.floor(np.asarray(img01) * 255.0 + 0.5), 0, 255).astype(np.uint8)
    Image.fromarray(data).save(path, format="PNG")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
