# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``.

Counts are held in int64; any addition that would overflow raises
``OverflowError`` so the caller can rerun on the arbitrary-precision path.
"""
import numpy as np

from libc.stdint cimport int64_t, INT64_MAX
from libc.math cimport cos, sin

from ._kernels_py import column_shapes, strip_successors

BACKEND = "cython"


cdef int _advance(int64_t[:] src, int64_t src_off, int64_t[:] dst, int64_t dst_off,
                  int64_t[:] ptr, int64_t[:] idx) nogil:
    cdef Py_ssize_t i, k
    cdef int64_t v, j
    for i in range(src.shape[0]):
        v = src[i]
        if v == 0:
            continue
        for k in range(ptr[src_off + i], ptr[src_off + i + 1]):
            j = idx[k] - dst_off
            if dst[j] > INT64_MAX - v:
                return 1
            dst[j] += v
    return 0


def _step(layer, int64_t n, int64_t r, int64_t maxsize, int64_t[:] off, int64_t[:] ptr, int64_t[:] idx):
    if n + r > maxsize:
        return None
    cdef int64_t[:] src = layer
    dst_np = np.zeros(off[n + r + 1] - off[n + r], dtype=np.int64)
    cdef int64_t[:] dst = dst_np
    cdef int bad
    cdef int64_t src_off = off[n]
    cdef int64_t dst_off = off[n + r]
    with nogil:
        bad = _advance(src, src_off, dst, dst_off, ptr, idx)
    if bad:
        raise OverflowError("Kostka count exceeds int64")
    if not dst_np.any():
        return None
    return dst_np


def kostka_strip_dp(bounds, int max_len):
    shapes = column_shapes(tuple(bounds))
    cdef Py_ssize_t S = len(shapes)
    index = {c: i for i, c in enumerate(shapes)}
    cdef int64_t maxsize = sum(shapes[S - 1])
    counts = np.zeros(maxsize + 3, dtype=np.int64)
    for c in shapes:
        counts[sum(c) + 1] += 1
    off = np.cumsum(counts).astype(np.int64)

    succ = strip_successors(tuple(bounds))
    ptrs = {}
    idxs = {}
    for r in (1, 2, 3):
        p = np.zeros(S + 1, dtype=np.int64)
        flat = []
        for i, c in enumerate(shapes):
            nexts = succ[r][c]
            p[i + 1] = p[i] + len(nexts)
            flat.extend(index[n] for n in nexts)
        ptrs[r] = p
        idxs[r] = np.asarray(flat if flat else [0], dtype=np.int64)

    out = {}
    layer3 = np.ones(1, dtype=np.int64)
    cdef int64_t n3 = 0, n2, n1, size
    while layer3 is not None and n3 <= max_len:
        layer2 = layer3
        n2 = 0
        while layer2 is not None and n3 + n2 <= max_len:
            layer1 = layer2
            n1 = 0
            while layer1 is not None and n3 + n2 + n1 <= max_len:
                size = 3 * n3 + 2 * n2 + n1
                base = off[size]
                out[(n3, n2, n1)] = {shapes[base + i]: int(layer1[i]) for i in np.flatnonzero(layer1)}
                layer1 = _step(layer1, size, 1, maxsize, off, ptrs[1], idxs[1])
                n1 += 1
            layer2 = _step(layer2, 3 * n3 + 2 * n2, 2, maxsize, off, ptrs[2], idxs[2])
            n2 += 1
        layer3 = _step(layer3, 3 * n3, 3, maxsize, off, ptrs[3], idxs[3])
        n3 += 1
    return out


cdef inline double complex _det(double complex[:, :] m, int g) nogil:
    if g == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def det_product_sums(rep, x, theta):
    cdef double complex[:, :] R = np.ascontiguousarray(rep, dtype=np.complex128)
    cdef double complex[:] X = np.ascontiguousarray(x, dtype=np.complex128)
    cdef double[:] T = np.ascontiguousarray(theta, dtype=np.float64)
    cdef int g = R.shape[0]
    cdef double complex[:, :] gam = np.zeros((g, g), dtype=np.complex128)
    cdef double complex[:, :] work = np.zeros((g, g), dtype=np.complex128)
    cdef Py_ssize_t n, i, j, k
    cdef double complex t, tinv, val
    cdef double sr = 0, si = 0, qr = 0, qi = 0
    with nogil:
        for n in range(T.shape[0]):
            t = cos(T[n]) + 1j * sin(T[n])
            tinv = t.conjugate()
            for i in range(g):
                gam[i, 0] = R[i, 0] * t
                gam[i, 1] = R[i, 1] * tinv
                if g == 3:
                    gam[i, 2] = R[i, 2]
            val = 1
            for k in range(X.shape[0]):
                for i in range(g):
                    for j in range(g):
                        work[i, j] = X[k] * gam[i, j]
                    work[i, i] = work[i, i] + 1
                val = val * _det(work, g)
            sr += val.real
            si += val.imag
            qr += val.real * val.real
            qi += val.imag * val.imag
    return sr, si, qr, qi
