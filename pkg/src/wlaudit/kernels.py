"""Backend selection: compiled kernels when available, pure Python otherwise.

Set WLAUDIT_PURE=1 to force the pure backend (used by the benchmark and the
backend-equivalence tests).
"""

import os

from . import _pykernels

_FORCE_PURE = os.environ.get("WLAUDIT_PURE", "") not in ("", "0")

if _FORCE_PURE:
    _impl = _pykernels
    BACKEND = "pure"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "pure"

refine_pass = _impl.refine_pass
motif_census = _impl.motif_census
MASK_TABLE4 = _pykernels.MASK_TABLE4


def available_backends():
    """Names of importable kernel backends (for benchmarks and tests)."""
    names = ["pure"]
    try:
        from . import _ckernels  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names
