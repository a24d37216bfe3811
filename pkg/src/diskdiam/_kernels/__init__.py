"""Kernel backend selection.

The hot loops (batched Horner evaluation, hull/calipers diameter) have a
compiled Cython implementation and a numpy/scipy fallback with identical
semantics.  The compiled core is preferred when it imported successfully;
set DISKDIAM_FORCE_FALLBACK=1 to force the pure-Python path.
"""

import contextlib
import os

from . import _fallback

BACKEND = "fallback"
_IMPLS = {"fallback": _fallback}

if not os.environ.get("DISKDIAM_FORCE_FALLBACK"):
    try:
        from . import _core

        _IMPLS["compiled"] = _core
        BACKEND = "compiled"
    except ImportError:
        pass

_active = _IMPLS[BACKEND]


def horner_eval(coeffs, z):
    return _active.horner_eval(coeffs, z)


def hull_diameter(xs, ys):
    return _active.hull_diameter(xs, ys)


def available_backends():
    return tuple(sorted(_IMPLS))


def active_backend():
    return BACKEND


@contextlib.contextmanager
def forced_backend(name):
    """Temporarily route kernel calls through the named backend."""
    global _active, BACKEND
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}; have {available_backends()}")
    prev, prev_name = _active, BACKEND
    _active, BACKEND = _IMPLS[name], name
    try:
        yield
    finally:
        _active, BACKEND = prev, prev_name
