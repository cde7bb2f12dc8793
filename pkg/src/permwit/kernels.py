"""Kernel backend selection.

The compiled lane (`_kernels_c`, Cython) is preferred when its extension
module was built; otherwise the pure-Python lane is used.  Override with
the environment variable PERMWIT_KERNEL_BACKEND=c|py|auto (default auto).
Both lanes are contract-identical; `benchmarks/bench_kernels.py` compares
their speed.
"""

from __future__ import annotations

import os

_choice = os.environ.get("PERMWIT_KERNEL_BACKEND", "auto")
if _choice not in ("auto", "c", "py"):
    raise RuntimeError(
        f"PERMWIT_KERNEL_BACKEND must be one of auto/c/py, got {_choice!r}"
    )

if _choice == "py":
    from permwit import _kernels_py as _impl

    BACKEND = "py"
else:
    try:
        from permwit import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise
        from permwit import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "py"

compose = _impl.compose
inverse = _impl.inverse
orbit = _impl.orbit
close_elements = _impl.close_elements
conjugacy_orbit = _impl.conjugacy_orbit
