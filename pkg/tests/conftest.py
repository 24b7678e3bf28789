import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from mrlc.kernels import _numpy  # noqa: E402

BACKENDS = {"numpy": _numpy}
try:
    from mrlc.kernels import _numba
    BACKENDS["numba"] = _numba
except ImportError:  # pragma: no cover
    pass


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]
