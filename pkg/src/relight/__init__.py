"""Low-light image enhancement via a closed-form log-domain tone transfer.

The V channel of each pixel is boosted through cascaded applications of
the transfer map x^2 / (x - 1) on x = ln V, with the cascade depth picked
from the image's mean V; saturation is gamma-compressed and hue preserved.
Ships a compiled per-pixel kernel with a NumPy fallback selected at
import, PSNR/SSIM evaluation, and a throughput benchmark.
"""

from ._backend import DEFAULT_BACKEND, HAVE_COMPILED, available_backends
from .bench import BenchRecord, run_bench
from .colorspace import from_uint8, hsv_to_rgb, luma, rgb_to_hsv, to_uint8
from .dataset import (EvalReport, EvalRow, PairedSample, discover_pairs,
                      evaluate, read_manifest, write_report)
from .imgio import load_image, save_png
from .metrics import MetricsResult, compute_metrics, psnr, ssim
from .pipeline import (EnhancementConfig, ImageStats, compute_mean_v, enhance,
                       enhance_v_plane, saturation_gamma)
from .tone import (IterationState, cascade, partial_sum_oracle,
                   retinex_fixed_point, retinex_step, select_levels, to_log)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "DEFAULT_BACKEND",
    "EnhancementConfig",
    "EvalReport",
    "EvalRow",
    "HAVE_COMPILED",
    "ImageStats",
    "IterationState",
    "MetricsResult",
    "PairedSample",
    "available_backends",
    "cascade",
    "compute_mean_v",
    "compute_metrics",
    "discover_pairs",
    "enhance",
    "enhance_v_plane",
    "evaluate",
    "from_uint8",
    "hsv_to_rgb",
    "load_image",
    "luma",
    "partial_sum_oracle",
    "psnr",
    "read_manifest",
    "retinex_fixed_point",
    "retinex_step",
    "rgb_to_hsv",
    "run_bench",
    "save_png",
    "saturation_gamma",
    "select_levels",
    "ssim",
    "to_log",
    "to_uint8",
    "write_report",
]
