"""Select the compiled kernel when available, numpy fallback otherwise.

Set ENTROSKETCH_FORCE_PYTHON=1 to force the fallback (used by the
backend parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import hashing

if os.environ.get("ENTROSKETCH_FORCE_PYTHON") == "1":
    _kernel = None
else:
    try:
        from . import _kernel  # type: ignore[attr-defined]
    except ImportError:
        _kernel = None

if _kernel is not None:
    BACKEND = "compiled"
    variates = _kernel.variates
    accumulate = _kernel.accumulate
else:
    BACKEND = "python"
    variates = hashing.variates_np
    accumulate = hashing.accumulate_np
