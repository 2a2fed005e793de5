"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``RANDCOMPLEX_PURE_PYTHON`` is set to a non-empty
value, the pure-Python kernels are used.  Both expose the same functions.
"""

import os

from . import _kernels_py

if os.environ.get("RANDCOMPLEX_PURE_PYTHON"):
    kernels = _kernels_py
    NAME = "python"
else:
    try:
        from . import _kernels as kernels
        NAME = "cython"
    except ImportError:
        kernels = _kernels_py
        NAME = "python"


def available() -> dict:
    """Every backend importable in this process, by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
