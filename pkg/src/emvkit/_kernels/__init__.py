"""Table kernels: the compiled module when it was built, pure Python otherwise.

Set ``EMVKIT_PURE_PYTHON=1`` before import to force the fallback.
"""

import os

from . import _pykernels as python

if os.environ.get("EMVKIT_PURE_PYTHON", "") not in ("", "0"):
    compiled = None
else:
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

active = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

comm_violation = active.comm_violation
assoc_violation = active.assoc_violation
distrib_violation = active.distrib_violation
lambda_row = active.lambda_row
closure = active.closure
mv_law_violation = active.mv_law_violation

__all__ = [
    "BACKEND",
    "assoc_violation",
    "closure",
    "comm_violation",
    "compiled",
    "distrib_violation",
    "lambda_row",
    "mv_law_violation",
    "python",
]
