"""Kernel dispatch: compiled extension when built, NumPy/Python fallback otherwise.

``BACKEND`` names the active implementation ("compiled" or "python").  Set
``ISOLOOP_PURE_PYTHON=1`` to force the fallback.  Both implementations share
contracts; ``tests/test_kernels.py`` asserts they agree, and
``benchmarks/bench_kernels.py`` compares their speed.

Word kernels take any integer sequence and return lists.  Geometry kernels
take and return float64 NumPy arrays.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("ISOLOOP_PURE_PYTHON"):
    from . import _purepy as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _purepy as _impl

        BACKEND = "python"


def _as_word_array(word):
    return np.asarray(word, dtype=np.int64)


if BACKEND == "compiled":

    def free_reduce(word):
        return _impl.free_reduce(_as_word_array(word)).tolist()

    def cyclic_canonical(word):
        return _impl.cyclic_canonical(_as_word_array(word)).tolist()

    def apply_braid(word, braid, cap):
        return _impl.apply_braid(
            _as_word_array(word), _as_word_array(braid), cap
        ).tolist()

else:
    free_reduce = _impl.free_reduce
    cyclic_canonical = _impl.cyclic_canonical
    apply_braid = _impl.apply_braid

bump_displace = _impl.bump_displace
resample_closed = _impl.resample_closed


def ray_word(verts, ray_x, ray_y):
    letters, degenerate = _impl.ray_word(
        np.ascontiguousarray(verts, dtype=np.float64),
        np.ascontiguousarray(ray_x, dtype=np.float64),
        np.ascontiguousarray(ray_y, dtype=np.float64),
    )
    if degenerate:
        return None, True
    return list(letters), False
