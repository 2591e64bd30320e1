"""Backend selection for the reduction kernel.

The compiled extension is used when importable; set ``PCUP_PURE_PYTHON=1``
to force the fallback.
"""

import os

from . import _reduce_py

BACKEND = "python"
reduce_columns = _reduce_py.reduce_columns

if os.environ.get("PCUP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _reduce  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        pass
    else:
        reduce_columns = _reduce.reduce_columns
        BACKEND = "cython"
