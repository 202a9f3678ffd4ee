"""Backend selection for the hot inner loops.

The compiled extension (latgen._fastpath, Cython) is used when present; the
vectorized numpy fallback (latgen._slowpath) is always available. Setting the
environment variable LATGEN_PURE=1 forces the fallback, which is also what
benchmarks/bench_kernels.py uses to compare the two.
"""

import os

if os.environ.get("LATGEN_PURE", "0") not in ("", "0"):
    from . import _slowpath as _impl
else:
    try:
        from . import _fastpath as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _slowpath as _impl

BACKEND = _impl.BACKEND
dbd_score_pair = _impl.dbd_score_pair
dbd_update = _impl.dbd_update
accumulate_product = _impl.accumulate_product
gather_score = _impl.gather_score
