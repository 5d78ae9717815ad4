"""Log-domain tone transfer for low-light V-channel boosting.

All per-pixel math happens on x = ln(V) <= 0. The production tone curve is
the transfer map f(x) = x^2 / (x - 1), the limit of the recursion
x_{n+1} = x_n / x0 + x0 started at x0. The recursion and its geometric
partial-sum form are kept around as cross-check oracles; they only converge
for x0 < -1 ( V < 1/e ), while the closed form is well defined on the whole
domain and is what gets cascaded in production.

Functions accept scalars or ndarrays and compute in float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

THRESHOLD_LOW = 0.08
THRESHOLD_HIGH = 0.16
DEFAULT_EPS = 1e-12


def _as_float64(value, name):
    arr = np.asarray(value, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def _as_unit(value, name):
    arr = _as_float64(value, name)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"{name} must lie in [0, 1]")
    return arr


def _as_log_domain(value, name="x0"):
    arr = _as_float64(value, name)
    if np.any(arr > 0.0):
        raise ValueError(f"{name} must be <= 0 (log of a [0, 1] intensity)")
    return arr


def _unwrap(result, original):
    if np.ndim(original) == 0:
        return float(result)
    return result


def to_log(v, eps=DEFAULT_EPS):
    """Map a [0, 1] intensity to the log domain, clamping at eps.

    ln(max(v, eps)); the clamp keeps V = 0 pixels out of -inf arithmetic.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    arr = _as_unit(v, "v")
    return _unwrap(np.log(np.maximum(arr, eps)), v)


def retinex_fixed_point(x0):
    """Converged illumination transfer f(x) = x^2 / (x - 1).

    For x <= 0 the denominator is <= -1, so the map is defined everywhere,
    stays <= 0, and brightens: f(x) - x = x / (x - 1) > 0 for x < 0.
    """
    arr = _as_log_domain(x0)
    return _unwrap(arr * arr / (arr - 1.0), x0)


def cascade(x0, k):
    """Apply the converged transfer k times (k >= 1).

    cascade(x, 1) == retinex_fixed_point(x); domain closure keeps every
    intermediate <= 0.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError("k must be an integer >= 1")
    arr = _as_log_domain(x0)
    for _ in range(k):
        arr = arr * arr / (arr - 1.0)
    return _unwrap(arr, x0)


def select_levels(mu_v, threshold_low=THRESHOLD_LOW, threshold_high=THRESHOLD_HIGH):
    """Pick the cascade depth from the mean V of the input image.

    1 above threshold_high, 3 below threshold_low, 2 in the inclusive band
    between them (both boundaries map to 2).
    """
    mu = float(_as_unit(mu_v, "mu_v"))
    if mu > threshold_high:
        return 1
    if mu >= threshold_low:
        return 2
    return 3


@dataclass(frozen=True)
class IterationState:
    """One step of the log-domain recursion: fixed start x0, current x_n."""

    x0: float
    x_n: float
    n: int = 0

    @classmethod
    def initial(cls, x0):
        x = float(_as_log_domain(x0))
        return cls(x0=x, x_n=x, n=0)


def retinex_step(state: IterationState) -> IterationState:
    """Single recursion update x_{n+1} = x_n / x0 + x0.

    Validation/trace path only; the production pipeline uses the closed
    form. Raises ZeroDivisionError at x0 = 0 (a V = 1 pixel is already a
    fixed point and must be short-circuited by the caller).
    """
    if state.x0 == 0.0:
        raise ZeroDivisionError("recursion undefined at x0 = 0; V = 1 is a fixed point")
    return IterationState(
        x0=state.x0,
        x_n=state.x_n / state.x0 + state.x0,
        n=state.n + 1,
    )


def partial_sum_oracle(x0, n_last):
    """Geometric partial-sum form: sum_{n=0}^{N} x0^(-n) + x0.

    Equals N + 1 applications of retinex_step started at x0. Raises
    OverflowError when the powers leave the representable range (possible
    for |x0| < 1 where the terms grow).
    """
    x = float(_as_log_domain(x0))
    if x == 0.0:
        raise ValueError("x0 must be nonzero")
    if not isinstance(n_last, (int, np.integer)) or n_last < 0:
        raise ValueError("N must be an integer >= 0")
    total = 0.0
    term = 1.0
    for _ in range(int(n_last) + 1):
        total += term
        term /= x
        if not np.isfinite(total):
            raise OverflowError("partial sum left the representable range")
    return total + x
