"""Backend selection for the series kernels.

The environment variable DFSTATES_BACKEND picks the implementation:

  numba  - compiled kernels (default when numba imports cleanly)
  numpy  - pure numpy/python reference kernels

The variable is read once at import.  Everything downstream calls
``moment_sum``, ``husimi_amp``, ``husimi_grid`` and ``husimi_terms`` from
this module and never touches the twins directly.
"""

from __future__ import annotations

import os

from .errors import DfstatesError
from ._series_numpy import husimi_terms  # backend-independent

_requested = os.environ.get("DFSTATES_BACKEND", "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise DfstatesError(
        f"DFSTATES_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    BACKEND = "numpy"
elif _requested == "numba":
    from . import _series_numba as _impl  # noqa: F401  (ImportError is the contract)

    BACKEND = "numba"
else:
    try:
        from . import _series_numba as _impl  # noqa: F401
        BACKEND = "numba"
    except ImportError:
        BACKEND = "numpy"

if BACKEND == "numba":
    from ._series_numba import husimi_amp, husimi_grid, moment_sum
else:
    from ._series_numpy import husimi_amp, husimi_grid, moment_sum

__all__ = ["BACKEND", "moment_sum", "husimi_amp", "husimi_grid", "husimi_terms"]
