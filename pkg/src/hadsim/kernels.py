"""Kernel backend selection.

The compiled Cython extension is preferred when it imported cleanly; the
numpy fallback is mathematically and bitwise identical, just slower for the
deep butterfly passes.  Set ``HADSIM_PURE_PYTHON=1`` to force the fallback
(used by the benchmark and the backend-agreement tests).
"""

import os

from . import _kernels_fallback

if os.environ.get("HADSIM_PURE_PYTHON"):
    _impl = _kernels_fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_fallback
        BACKEND = "python"

fwht_inplace = _impl.fwht_inplace
toffoli_inplace = _impl.toffoli_inplace
permute = _impl.permute
fwht_rows = _impl.fwht_rows


def backend_pair():
    """Return (active module, fallback module) for agreement tests and benchmarks."""
    return _impl, _kernels_fallback
