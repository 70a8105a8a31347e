"""Kernel selection: the compiled extension when built, numpy otherwise.

Set ``HOPF_FORGE_PURE=1`` to force the numpy implementation.
"""

import os

from . import _fallback

IMPLEMENTATION = "python"
apply_sparse = _fallback.apply_sparse

if os.environ.get("HOPF_FORGE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        apply_sparse = _kernels.apply_sparse
        IMPLEMENTATION = "compiled"

__all__ = ["apply_sparse", "IMPLEMENTATION"]
