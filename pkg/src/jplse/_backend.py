"""Kernel backend selection.

The compiled extension is used when it imports; setting ``JPLSE_PURE_PYTHON=1``
forces the numpy fallback.
"""

import os

from . import _fallback

BACKEND = "python"
kernels = _fallback

if os.environ.get("JPLSE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # extension not built
        kernels = _fallback
