"""Backend selection for the hot kernels.

The compiled module is used when it imports; set ``SCHUR_AUTOCORR_PURE=1``
to force the pure-Python versions.
"""
from __future__ import annotations

import logging
import os

from . import _kernels_py

log = logging.getLogger(__name__)

_compiled = None
if not os.environ.get("SCHUR_AUTOCORR_PURE"):
    try:
        from . import _kernels_c as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py
BACKEND: str = _impl.BACKEND


def compiled_available() -> bool:
    return _compiled is not None


def kostka_strip_dp(bounds, max_len):
    """Dispatch to the active backend; int64 overflow reruns on Python ints."""
    if _impl is not _kernels_py:
        try:
            return _impl.kostka_strip_dp(tuple(bounds), max_len)
        except OverflowError:
            log.info("int64 overflow in compiled Kostka kernel, using bigint path")
    return _kernels_py.kostka_strip_dp(tuple(bounds), max_len)


def det_product_sums(rep, x, theta):
    return _impl.det_product_sums(rep, x, theta)


def backend_module(name: str):
    """Return a specific backend module (``"python"`` or ``"cython"``)."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")
