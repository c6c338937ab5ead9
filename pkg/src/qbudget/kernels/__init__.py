"""Hot statevector kernels with selectable backend.

The backend is chosen once at import time from the ``QBUDGET_KERNELS``
environment variable:

  * ``numba`` — require the JIT kernels (ImportError if numba is missing)
  * ``numpy`` — force the pure-numpy fallback
  * ``auto`` (default) — numba if importable, numpy otherwise

Both backends expose the same in-place functions:

  apply_1q(state, u, q)        2x2 unitary on qubit ``q``
  apply_2q(state, u, q1, q2)   4x4 unitary, ``q1`` the first tensor factor

``state`` is a 1-D complex128 array of 2**n amplitudes with qubit 0 the
least-significant bit of the amplitude index.
"""

import os

_requested = os.environ.get("QBUDGET_KERNELS", "auto").lower()

if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(f"QBUDGET_KERNELS must be auto|numba|numpy, got {_requested!r}")

if _requested == "numpy":
    from . import _numpy as _impl

    BACKEND = "numpy"
elif _requested == "numba":
    from . import _numba as _impl

    BACKEND = "numba"
else:
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:
        from . import _numpy as _impl

        BACKEND = "numpy"

apply_1q = _impl.apply_1q
apply_2q = _impl.apply_2q

__all__ = ["apply_1q", "apply_2q", "BACKEND"]
