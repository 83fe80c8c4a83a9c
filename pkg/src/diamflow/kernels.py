"""Backend selection for the O(n^2) pair kernels.

The compiled extension is used when it was built; otherwise the numpy
fallback is imported. Set ``DIAMFLOW_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

_ckernels = None
if os.environ.get("DIAMFLOW_PURE_PYTHON") != "1":
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        _ckernels = None

_backend = _ckernels if _ckernels is not None else _pykernels

#: ``"cython"`` or ``"python"``
BACKEND = "cython" if _ckernels is not None else "python"

pair_log_sum = _backend.pair_log_sum
max_pair_dist2 = _backend.max_pair_dist2
any_pair_exceeds = _backend.any_pair_exceeds
rho_sums = _backend.rho_sums


def available_backends():
    """Mapping of backend name to kernel module, compiled one first if present."""
    out = {}
    if _ckernels is not None:
        out["cython"] = _ckernels
    out["python"] = _pykernels
    return out
