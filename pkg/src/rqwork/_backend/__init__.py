"""Kernel selection: compiled extension if present, pure Python otherwise.

Set ``RQWORK_PURE=1`` in the environment to force the Python fallback
(used by the benchmark to compare both).
"""

import os

if os.environ.get("RQWORK_PURE"):
    from . import pykernels as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pykernels as _impl

BACKEND = _impl.BACKEND
convolve = _impl.convolve
reciprocal = _impl.reciprocal
bareiss_rows = _impl.bareiss_rows
