"""Kernel selection: compiled extension when built, pure Python otherwise.

Set ``ALGINDEP_PURE=1`` to force the pure-Python kernels.
"""

import os

from . import _kernels_py

BACKEND = "python"
if not os.environ.get("ALGINDEP_PURE"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py
    else:
        BACKEND = "cython"
else:
    _impl = _kernels_py

add_terms = _impl.add_terms
mul_terms = _impl.mul_terms
scale_terms = _impl.scale_terms
diff_terms = _impl.diff_terms
eval_terms = _impl.eval_terms

__all__ = ["BACKEND", "add_terms", "mul_terms", "scale_terms", "diff_terms", "eval_terms"]
