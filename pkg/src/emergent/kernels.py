"""Selects the chain kernel at import time.

The compiled extension is used when it was built; otherwise, or when
``EMERGENT_PURE_PYTHON`` is set to a non-empty value, the pure-Python
kernel is used. Both produce identical results for identical inputs.
"""
import os

from . import _pykernels

try:
    if os.environ.get("EMERGENT_PURE_PYTHON"):
        raise ImportError("pure-Python kernel requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

advance_chain = _impl.advance_chain


def available_backends() -> dict:
    backends = {"python": _pykernels.advance_chain}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        backends["cython"] = _ckernels.advance_chain
    return backends


def get_kernel(name: str | None = None):
    if name is None:
        return advance_chain
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
