"""Grid evaluation of real trigonometric polynomials.

The hot loop evaluates f(t_j) = d_0 + 2 * sum_{m>0} Re(d_m e^{i m t_j}) on a
uniform grid. A numba kernel is used when numba is importable and the
environment variable CWQ_DISABLE_NUMBA is unset; otherwise a chunked numpy
path computes the same sums in the same order.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False


def numba_enabled() -> bool:
    return NUMBA_AVAILABLE and not os.environ.get("CWQ_DISABLE_NUMBA")


def optional_njit(*args, **kwargs):
    def decorator(func):
        if NUMBA_AVAILABLE:
            return njit(*args, **kwargs)(func)
        return func

    return decorator


@optional_njit(cache=False)
def _grid_values_jit(exps, re, im, d0, n_points):
    out = np.empty(n_points)
    two_pi = 2.0 * np.pi
    for j in range(n_points):
        t = two_pi * j / n_points
        acc = d0
        for k in range(exps.shape[0]):
            mt = exps[k] * t
            acc += 2.0 * (re[k] * np.cos(mt) - im[k] * np.sin(mt))
        out[j] = acc
    return out


def _grid_values_numpy(exps, re, im, d0, n_points, chunk=1 << 15):
    out = np.empty(n_points)
    two_pi = 2.0 * np.pi
    for start in range(0, n_points, chunk):
        j = np.arange(start, min(start + chunk, n_points), dtype=np.float64)
        t = two_pi * j / n_points
        acc = np.full(j.shape, d0)
        for k in range(exps.shape[0]):
            mt = exps[k] * t
            acc += 2.0 * (re[k] * np.cos(mt) - im[k] * np.sin(mt))
        out[start : start + len(j)] = acc
    return out


def grid_values(exps, re, im, d0: float, n_points: int, use_numba: bool | None = None) -> np.ndarray:
    """Values of the trig polynomial at t_j = 2 pi j / n_points.

    exps holds the positive exponents m, re/im the real and imaginary parts
    of d_m; d0 is the (real) constant coefficient.
    """
    exps = np.ascontiguousarray(exps, dtype=np.float64)
    re = np.ascontiguousarray(re, dtype=np.float64)
    im = np.ascontiguousarray(im, dtype=np.float64)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba and NUMBA_AVAILABLE:
        return _grid_values_jit(exps, re, im, float(d0), int(n_points))
    return _grid_values_numpy(exps, re, im, float(d0), int(n_points))
