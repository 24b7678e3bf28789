"""Hot loops behind a backend switch.

``MRLC_BACKEND=numpy`` forces the pure-numpy path; the default is numba when
it imports cleanly.  Both backends expose ``gf_mul``, ``gf2_independent``,
``first_singular`` and ``combination_table``.
"""
import os

from . import _numpy

BACKEND = os.environ.get("MRLC_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"MRLC_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

if BACKEND == "numba":
    try:
        from . import _numba as _impl
    except ImportError:  # pragma: no cover - numba missing
        BACKEND = "numpy"
        _impl = _numpy
else:
    _impl = _numpy

gf_mul = _impl.gf_mul
gf2_independent = _impl.gf2_independent
first_singular = _impl.first_singular
combination_table = _numpy.combination_table

__all__ = ["BACKEND", "gf_mul", "gf2_independent", "first_singular", "combination_table"]
