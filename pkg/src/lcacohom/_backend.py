"""Selects the term-arithmetic backend at import time.

The compiled extension is preferred when present; the pure-Python module
is a behavioural twin used as fallback.  Set ``LCACOHOM_BACKEND=pure`` to
force the fallback (useful for benchmarking and debugging) or
``LCACOHOM_BACKEND=compiled`` to fail loudly if the extension is missing.
"""

from __future__ import annotations

import os

from . import _poly_py

_requested = os.environ.get("LCACOHOM_BACKEND", "").strip().lower()

if _requested == "pure":
    kernels = _poly_py
    BACKEND = "pure"
elif _requested == "compiled":
    from . import _poly_cy as kernels  # raises ImportError if not built

    BACKEND = "compiled"
elif _requested == "":
    try:
        from . import _poly_cy as kernels

        BACKEND = "compiled"
    except ImportError:
        kernels = _poly_py
        BACKEND = "pure"
else:
    raise RuntimeError(
        f"unknown LCACOHOM_BACKEND={_requested!r} (expected 'pure' or 'compiled')"
    )
