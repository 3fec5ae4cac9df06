"""Backend selection for the hot loops.

The Cython extension is used when it was built; otherwise the pure-Python
module takes over. Set ``SIGMAU_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("SIGMAU_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

min_enclosing_circle = _active.min_enclosing_circle
log_abs_product = _active.log_abs_product
