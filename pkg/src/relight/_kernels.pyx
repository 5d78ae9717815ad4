# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels: fused HSV round trip plus tone transfer.

One pass over the pixels, no intermediate planes. Arithmetic mirrors the
NumPy fallback (same hue tie-break order, same clamps) so the two backends
agree to float rounding.
"""

from libc.math cimport exp, floor, fmod, log, pow

NAME = "compiled"


cdef inline double _clamp01(double x) nogil:
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


cdef inline double _tone(double v, int k, double eps) nogil:
    # V = 1 is a fixed point; short-circuit it past the log/exp round trip.
    cdef double x
    cdef int i
    if v >= 1.0:
        return 1.0
    x = log(v if v > eps else eps)
    for i in range(k):
        x = x * x / (x - 1.0)
    return _clamp01(exp(x))


def enhance_v_into(double[:, ::1] v, int k, double eps, double[:, ::1] out):
    cdef Py_ssize_t i, j
    cdef Py_ssize_t h = v.shape[0]
    cdef Py_ssize_t w = v.shape[1]
    with nogil:
        for i in range(h):
            for j in range(w):
                out[i, j] = _tone(v[i, j], k, eps)


def enhance_rgb_into(double[:, :, ::1] img, int k, double gamma, double eps,
                     bint apply_saturation, double[:, :, ::1] out):
    cdef Py_ssize_t i, j
    cdef Py_ssize_t rows = img.shape[0]
    cdef Py_ssize_t cols = img.shape[1]
    cdef double r, g, b, v, mn, c, s, hue, f, p, q, t
    cdef double s_exponent = 1.0 + gamma
    cdef int sextant
    with nogil:
        for i in range(rows):
            for j in range(cols):
                r = img[i, j, 0]
                g = img[i, j, 1]
                b = img[i, j, 2]

                v = r
                if g > v:
                    v = g
                if b > v:
                    v = b
                mn = r
                if g < mn:
                    mn = g
                if b < mn:
                    mn = b
                c = v - mn

                s = c / v if v > 0.0 else 0.0
                if c == 0.0:
                    hue = 0.0
                elif v == r:
                    hue = fmod((g - b) / c, 6.0)
                    if hue < 0.0:
                        hue += 6.0
                elif v == g:
                    hue = (b - r) / c + 2.0
                else:
                    hue = (r - g) / c + 4.0
                hue /= 6.0
                if hue >= 1.0:
                    hue = 0.0

                v = _tone(v, k, eps)
                if apply_saturation:
                    s = pow(s, s_exponent)

                f = hue * 6.0
                sextant = <int>floor(f)
                f -= sextant
                if sextant > 5:
                    sextant = 5
                p = v * (1.0 - s)
                q = v * (1.0 - s * f)
                t = v * (1.0 - s * (1.0 - f))
                if sextant == 0:
                    r = v; g = t; b = p
                elif sextant == 1:
                    r = q; g = v; b = p
                elif sextant == 2:
                    r = p; g = v; b = t
                elif sextant == 3:
                    r = p; g = q; b = v
                elif sextant == 4:
                    r = t; g = p; b = v
                else:
                    r = v; g = p; b = q

                out[i, j, 0] = _clamp01(r)
                out[i, j, 1] = _clamp01(g)
                out[i, j, 2] = _clamp01(b)
