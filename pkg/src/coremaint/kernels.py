"""Kernel backend selection.

The compiled Cython kernels are preferred when the extension built; the
pure-Python module is always available.  Override with the environment
variable COREMAINT_BACKEND=c|python, or pass backend="..." to the
operations that accept one.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels_c

    BACKENDS["c"] = _kernels_c
except ImportError:
    _kernels_c = None

_ENV_VAR = "COREMAINT_BACKEND"


def available_backends() -> list[str]:
    return sorted(BACKENDS)


def get_backend(name: str | None = None):
    """Resolve a backend module by name (None picks the default)."""
    if name is None:
        name = os.environ.get(_ENV_VAR)
    if name is None:
        return BACKENDS.get("c", _kernels_py)
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        ) from None


def default_backend_name() -> str:
    return get_backend().NAME
