"""Dispatch kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernel. Set ``HYBRID_SIZING_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _dispatch_py

dispatch_year_python = _dispatch_py.dispatch_year

try:
    if os.environ.get("HYBRID_SIZING_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernel requested")
    from ._dispatch_ext import dispatch_year as dispatch_year_compiled
except ImportError:
    dispatch_year_compiled = None

if dispatch_year_compiled is not None:
    dispatch_year = dispatch_year_compiled
    BACKEND = "cython"
else:
    dispatch_year = dispatch_year_python
    BACKEND = "python"

__all__ = ["BACKEND", "dispatch_year", "dispatch_year_python", "dispatch_year_compiled"]
