"""Backend selection for the hot loops.

The Cython extension ``projprod._kernels`` is used when it has been built;
otherwise, or when ``PROJPROD_PURE_PYTHON=1`` is set, the numpy version is used.
"""

import os

from . import _kernels_py

if os.environ.get("PROJPROD_PURE_PYTHON", "") not in ("", "0"):
    _ext = None
else:
    try:
        from . import _kernels as _ext
    except ImportError:
        _ext = None

BACKEND = "cython" if _ext is not None else "python"
power_norms = _ext.power_norms if _ext is not None else _kernels_py.power_norms

__all__ = ["BACKEND", "power_norms"]
