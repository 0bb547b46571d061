"""Numba availability and backend selection.

Set ``RSWALK_BACKEND=numpy`` (or ``RSWALK_DISABLE_NUMBA=1``) before import to
force the pure-numpy kernels; the default uses numba when it imports cleanly.
Both backends are exact for the integer kernels and agree to rounding for
the floating-point ones.
"""
from __future__ import annotations

import os
import warnings

_requested = os.environ.get("RSWALK_BACKEND", "").strip().lower()
_disabled = os.environ.get("RSWALK_DISABLE_NUMBA", "").strip() not in ("", "0")

NUMBA_AVAILABLE = False
if _requested != "numpy" and not _disabled:
    try:
        import numba as _nb  # noqa: F401

        NUMBA_AVAILABLE = True
    except ImportError:  # pragma: no cover - depends on environment
        if _requested == "numba":
            warnings.warn("RSWALK_BACKEND=numba requested but numba is not installed")

BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if NUMBA_AVAILABLE:
        import numba

        return numba.njit(*args, **kwargs)

    def wrap(func):
        return func

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrap
