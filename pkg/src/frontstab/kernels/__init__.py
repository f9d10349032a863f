"""Time-stepping kernels: compiled core with a NumPy fallback.

The compiled extension is selected at import time when available; set
the environment variable FRONTSTAB_PURE_PYTHON=1 to force the fallback.
Both implementations share one signature and bitwise-comparable
semantics (see benchmarks/bench_kernels.py for the speed comparison).
"""

import os

from . import _ref

reference = _ref
compiled = None
if not os.environ.get("FRONTSTAB_PURE_PYTHON"):
    try:
        from . import _core as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

BACKEND = "cython" if compiled is not None else "numpy"
run_steps = compiled.run_steps if compiled is not None else _ref.run_steps
BLOWUP_LIMIT = _ref.BLOWUP_LIMIT

__all__ = ["run_steps", "reference", "compiled", "BACKEND", "BLOWUP_LIMIT"]
