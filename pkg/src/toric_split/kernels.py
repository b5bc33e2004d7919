"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``TORIC_SPLIT_PURE=1`` to force the pure-Python path.
"""
from __future__ import annotations

import os

BACKEND = "python"

if os.environ.get("TORIC_SPLIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._ckernels import divides, find_divisor, int_rank  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import divides, find_divisor, int_rank  # noqa: F401
