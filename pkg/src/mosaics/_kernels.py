"""Kernel backend selection.

The compiled extension is used when it was built and MOSAICS_PURE_PYTHON is
not set; otherwise the numpy fallback is used.
"""

import os

from . import _pykernels

_FORCE_PURE = os.environ.get("MOSAICS_PURE_PYTHON", "").lower() in ("1", "true", "yes")

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and not _FORCE_PURE:
    _impl = _ckernels
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"

canonical_simplices = _impl.canonical_simplices
insphere_count = _impl.insphere_count
encode = _impl.encode


def available_backends() -> dict:
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out
