"""Step-kernel backend selection.

The compiled extension (`bloodfv._kernels_c`) is preferred when it imports;
the numpy implementation is the fallback.  Set BLOODFV_BACKEND=python or
=compiled to force one (the latter raises if the extension is missing).
Both expose: max_wavespeed, step_hydro_first, step_naive_first, phi_second.
"""

import os

from . import _kernels_py

_choice = os.environ.get("BLOODFV_BACKEND", "").strip().lower()

if _choice in ("python", "numpy"):
    kernels = _kernels_py
elif _choice in ("compiled", "c", "cython"):
    from . import _kernels_c as kernels  # raises ImportError if not built
else:
    try:
        from . import _kernels_c as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND_NAME = kernels.NAME
HAS_COMPILED: bool
try:
    from . import _kernels_c as _compiled  # noqa: F401
    HAS_COMPILED = True
except ImportError:
    HAS_COMPILED = False
