"""Valuation kernel selection: compiled extension if available, else pure Python.

Set ANSCOUNT_KERNEL=python to force the fallback (used by the benchmark
to compare both).
"""

import os

from . import _evalpy

KERNEL_NAME = "python"
evaluate_graph = _evalpy.evaluate_graph

if os.environ.get("ANSCOUNT_KERNEL", "").lower() not in ("python", "py"):
    try:
        from . import _evalcore

        evaluate_graph = _evalcore.evaluate_graph
        KERNEL_NAME = "cython"
    except ImportError:
        pass

SIGN_FREE = _evalpy.SIGN_FREE
SIGN_TRUE = _evalpy.SIGN_TRUE
SIGN_FALSE = _evalpy.SIGN_FALSE
