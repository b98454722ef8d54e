"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
implementation is used. Setting ``STMCIRC_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("STMCIRC_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if _active is compiled_backend and compiled_backend is not None else "python"

junction_y = _active.junction_y
cyclic_convert = _active.cyclic_convert
mason = _active.mason
