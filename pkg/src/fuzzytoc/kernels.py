"""Backend selection for the batch minimum-time kernel.

The compiled extension is used when it imports; otherwise (or when the
environment variable ``FUZZYTOC_PURE_PYTHON`` is set) the numpy fallback is.
"""

from __future__ import annotations

import os

from . import _fallback

try:
    if os.environ.get("FUZZYTOC_PURE_PYTHON"):
        raise ImportError("pure-Python backend forced")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _fallback}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"


def get_backend(name: str | None = None):
    """Kernel module for ``name`` (default: the one selected at import)."""
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def pair_times(P, Q, verify_tol=1e-6, radius_tol=1e-9, num_threads=0, backend=None):
    return get_backend(backend).pair_times(P, Q, verify_tol, radius_tol, num_threads)
