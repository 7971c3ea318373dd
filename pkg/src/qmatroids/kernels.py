"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it was built and imports
cleanly; otherwise the pure-Python ``_pykernels`` is used. Set
``QMATROIDS_BACKEND=python`` to force the fallback, or call
:func:`set_backend` at runtime (the benchmark and the cross-backend tests do).
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

# compiled keys are int64; larger lattices always use the fallback
KEY_BITS = 62

_active = _pykernels


def available() -> list[str]:
    return sorted(_BACKENDS)


def get(name: str):
    if name not in _BACKENDS:
        raise ValueError(f"kernel backend {name!r} unavailable; have {available()}")
    return _BACKENDS[name]


def set_backend(name: str) -> None:
    global _active
    if name == "auto":
        name = "cython" if "cython" in _BACKENDS else "python"
    _active = get(name)


def backend() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def for_lattice(q: int, n: int):
    """Backend module suited to a lattice over ``GF(q)^n``."""
    if _active is not _pykernels and (q ** (n * n)).bit_length() <= KEY_BITS and 2 * n <= 64:
        return _active
    return _pykernels


set_backend(os.environ.get("QMATROIDS_BACKEND", "auto"))
