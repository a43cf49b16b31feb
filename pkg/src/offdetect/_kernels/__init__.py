"""Backend selection for the numeric hot kernels.

The environment variable ``OFFDETECT_BACKEND`` picks the implementation:

* ``numba`` - jitted kernels (the default when numba imports cleanly)
* ``numpy`` - pure-numpy fallback, always available

Selection happens once at import time. ``benchmarks/bench_kernels.py``
imports both modules directly to compare them.
"""

from __future__ import annotations

import os

from ..errors import UsageError

_ENV_VAR = "OFFDETECT_BACKEND"


def _load_backend():
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise UsageError(
            f"{_ENV_VAR} must be 'numba' or 'numpy', not {choice!r}"
        )
    if choice == "numpy":
        from . import numpy_impl
        return numpy_impl
    try:
        from . import numba_impl
        return numba_impl
    except ImportError:
        if choice == "numba":
            raise
        from . import numpy_impl
        return numpy_impl


_backend = _load_backend()

BACKEND = _backend.BACKEND
csr_matvec = _backend.csr_matvec
csr_rmatvec = _backend.csr_rmatvec
csr_class_sums = _backend.csr_class_sums
column_values = _backend.column_values
best_split = _backend.best_split
forest_off_votes = _backend.forest_off_votes
adam_step = _backend.adam_step
nn_batch_grads = _backend.nn_batch_grads
