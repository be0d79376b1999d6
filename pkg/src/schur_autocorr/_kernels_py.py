"""Pure-Python implementations of the hot kernels.

These are the reference versions. The Cython module ``_kernels_c`` exposes the
same functions with the same return values; :mod:`schur_autocorr.kernels`
picks one at import time.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

BACKEND = "python"

Shape = tuple[int, int, int]
Node = tuple[int, int, int]


def column_shapes(bounds: Shape) -> list[Shape]:
    """Column-length triples ``c1 >= c2 >= c3 >= 0`` with ``c_j <= bounds[j]``."""
    b1, b2, b3 = bounds
    out = []
    for c1 in range(b1 + 1):
        for c2 in range(min(c1, b2) + 1):
            for c3 in range(min(c2, b3) + 1):
                out.append((c1, c2, c3))
    out.sort(key=lambda c: (sum(c), c))
    return out


def strip_successors(bounds: Shape) -> dict[int, dict[Shape, list[Shape]]]:
    """Shapes reachable by adding a horizontal strip of 1, 2 or 3 boxes.

    A horizontal strip has at most one box per column, so with three columns
    it is a subset of the columns, each lengthened by one.
    """
    shapes = column_shapes(bounds)
    succ: dict[int, dict[Shape, list[Shape]]] = {1: {}, 2: {}, 3: {}}
    for c in shapes:
        for r in (1, 2, 3):
            nexts = []
            for cols in combinations(range(3), r):
                n = list(c)
                for j in cols:
                    n[j] += 1
                if n[0] >= n[1] >= n[2] and all(n[j] <= bounds[j] for j in range(3)):
                    nexts.append(tuple(n))
            succ[r][c] = nexts
    return succ


def _advance(layer: dict[Shape, int], succ: dict[Shape, list[Shape]]) -> dict[Shape, int]:
    out: dict[Shape, int] = {}
    for c, v in layer.items():
        for n in succ[c]:
            out[n] = out.get(n, 0) + v
    return out


def kostka_strip_dp(bounds: Shape, max_len: int) -> dict[Node, dict[Shape, int]]:
    """Kostka numbers for every content with parts in {1, 2, 3}, all at once.

    Entries are filled in the order 3-strips, then 2-strips, then 1-strips.
    The result maps a content node ``(n3, n2, n1)``, meaning the content
    ``(3^n3, 2^n2, 1^n1)`` with ``n3 + n2 + n1 <= max_len``, to the map
    ``column shape -> K_{shape, content}``. Only nonzero entries appear.
    """
    succ = strip_successors(bounds)
    out: dict[Node, dict[Shape, int]] = {}
    layer3: dict[Shape, int] = {(0, 0, 0): 1}
    n3 = 0
    while layer3 and n3 <= max_len:
        layer2 = layer3
        n2 = 0
        while layer2 and n3 + n2 <= max_len:
            layer1 = layer2
            n1 = 0
            while layer1 and n3 + n2 + n1 <= max_len:
                out[(n3, n2, n1)] = layer1
                layer1 = _advance(layer1, succ[1])
                n1 += 1
            layer2 = _advance(layer2, succ[2])
            n2 += 1
        layer3 = _advance(layer3, succ[3])
        n3 += 1
    return out


def _torus(theta: np.ndarray, g: int) -> np.ndarray:
    t = np.exp(1j * theta)
    d = np.zeros((theta.size, g, g), dtype=complex)
    d[:, 0, 0] = t
    d[:, 1, 1] = 1 / t
    if g == 3:
        d[:, 2, 2] = 1
    return d


def det_product_sums(
    rep: np.ndarray, x: np.ndarray, theta: np.ndarray
) -> tuple[float, float, float, float]:
    """Accumulate ``prod_i det(I + x_i * rep @ T(theta))`` over a batch of angles.

    Returns ``(sum_re, sum_im, sumsq_re, sumsq_im)``.
    """
    rep = np.asarray(rep, dtype=complex)
    g = rep.shape[0]
    gamma = rep[None, :, :] @ _torus(np.asarray(theta, dtype=float), g)
    eye = np.eye(g, dtype=complex)
    val = np.ones(theta.size, dtype=complex)
    for xi in np.asarray(x, dtype=complex):
        val *= np.linalg.det(eye + xi * gamma)
    re, im = val.real, val.imag
    return float(re.sum()), float(im.sum()), float((re * re).sum()), float((im * im).sum())
