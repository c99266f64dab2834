"""Backend selection for the term-map kernels.

The compiled module is used when it imports; ``WREATHREP_PURE=1`` forces the
pure-Python fallback. Compiled calls that overflow C exponents are retried on
the pure path, so results never depend on the backend.
"""

import os

from . import _kernels_py as _py

_NAMES = ("add_terms", "sub_terms", "scale_terms", "mul_terms", "shift_terms", "subst_terms")

try:
    if os.environ.get("WREATHREP_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _ext
except ImportError:
    _ext = None

BACKEND = "compiled" if _ext is not None else "python"


def _guarded(name):
    fast = getattr(_ext, name)
    slow = getattr(_py, name)

    def call(*args):
        try:
            return fast(*args)
        except OverflowError:
            return slow(*args)

    call.__name__ = name
    return call


def backends():
    """Map of available backend name -> module-like namespace."""
    out = {"python": _py}
    if _ext is not None:
        out["compiled"] = _ext
    return out


if _ext is not None:
    add_terms = _guarded("add_terms")
    sub_terms = _guarded("sub_terms")
    scale_terms = _guarded("scale_terms")
    mul_terms = _guarded("mul_terms")
    shift_terms = _guarded("shift_terms")
    subst_terms = _guarded("subst_terms")
else:
    add_terms = _py.add_terms
    sub_terms = _py.sub_terms
    scale_terms = _py.scale_terms
    mul_terms = _py.mul_terms
    shift_terms = _py.shift_terms
    subst_terms = _py.subst_terms
