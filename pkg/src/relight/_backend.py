"""Kernel backend selection, resolved once at import time.

The compiled extension is preferred when built; otherwise the NumPy
fallback takes over. Set RELIGHT_FORCE_NUMPY=1 to skip the extension
even when it is present.
"""

import os

from . import _kernels_np

if os.environ.get("RELIGHT_FORCE_NUMPY"):
    _default = _kernels_np
else:
    try:
        from . import _kernels as _default
    except ImportError:
        _default = _kernels_np

DEFAULT_BACKEND = _default.NAME
HAVE_COMPILED = DEFAULT_BACKEND == "compiled"


def available_backends():
    """Backend names usable on this install, preferred first."""
    names = []
    try:
        from . import _kernels  # noqa: F401
        names.append("compiled")
    except ImportError:
        pass
    names.append("numpy")
    return names


def get_kernels(backend="auto"):
    """Resolve a backend name to its kernel module."""
    if backend in (None, "auto"):
        return _default
    if backend == "numpy":
        return _kernels_np
    if backend == "compiled":
        try:
            from . import _kernels
        except ImportError as exc:
            raise RuntimeError(
                "compiled kernels are not available; build them with "
                "'python setup.py build_ext --inplace'"
            ) from exc
        return _kernels
    raise ValueError(f"unknown backend {backend!r}")
