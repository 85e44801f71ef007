"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Both expose ``threshold_step(a, t)`` and ``match_counts(bits)``
on C-contiguous ``uint8`` arrays.
"""

from contextlib import contextmanager

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def available_backends():
    return sorted(_BACKENDS)


def backend_name() -> str:
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}")


@contextmanager
def backend(name: str):
    previous = backend_name()
    use_backend(name)
    try:
        yield
    finally:
        use_backend(previous)


def threshold_step(a, t):
    return _active.threshold_step(a, int(t))


def match_counts(bits):
    return _active.match_counts(bits)
