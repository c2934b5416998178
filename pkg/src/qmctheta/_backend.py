"""Backend selection for the compute kernels.

QMCTHETA_BACKEND controls which kernel module is active:

* ``auto`` (default): numba-compiled kernels when numba imports, else numpy.
* ``numba``: require the compiled kernels; raise if numba is unavailable.
* ``numpy``: force the pure-numpy fallback.

Both modules expose the same functions and random streams; results agree to
floating-point library precision (a few ulp), and each backend reproduces
itself bit for bit under fixed seeds.
"""

from __future__ import annotations

import os

_ENV_VAR = "QMCTHETA_BACKEND"
_requested = os.environ.get(_ENV_VAR, "auto").strip().lower()

if _requested not in {"auto", "numba", "numpy"}:
    raise RuntimeError(
        f"{_ENV_VAR} must be one of 'auto', 'numba', 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from . import _kernels_numpy as kernels

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as kernels

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as kernels

        BACKEND = "numpy"
