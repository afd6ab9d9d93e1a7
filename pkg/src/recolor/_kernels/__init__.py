"""Hot-loop scan kernels with a compiled core and a pure-Python fallback.

The compiled extension is optional; set ``RECOLOR_PURE=1`` to force the
fallback (useful for benchmarking and for debugging kernel parity).
``BACKEND`` records which implementation won.
"""

import os

from . import _scan_py

if os.environ.get("RECOLOR_PURE"):
    BACKEND = "pure"
    first_equal = _scan_py.first_equal
    first_repetition = _scan_py.first_repetition
    first_bicolored = _scan_py.first_bicolored
else:
    try:
        from . import _scan_c

        BACKEND = "compiled"
        first_equal = _scan_c.first_equal
        first_repetition = _scan_c.first_repetition
        first_bicolored = _scan_c.first_bicolored
    except ImportError:
        BACKEND = "pure"
        first_equal = _scan_py.first_equal
        first_repetition = _scan_py.first_repetition
        first_bicolored = _scan_py.first_bicolored

__all__ = ["BACKEND", "first_equal", "first_repetition", "first_bicolored"]
