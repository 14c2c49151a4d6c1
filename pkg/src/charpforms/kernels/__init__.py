"""Scan kernels with a compiled fast path and a pure-python fallback.

Importing this package picks the compiled extension when it is available
and falls back to the reference implementation otherwise.  Setting the
environment variable CHARPFORMS_PURE to a non-empty value forces the pure
backend, which is handy for benchmarking and for debugging the extension.
"""

import os

from . import _ref

if os.environ.get("CHARPFORMS_PURE"):
    _impl = _ref
    backend = "pure"
else:
    try:
        from . import _fast as _impl

        backend = "compiled"
    except ImportError:
        _impl = _ref
        backend = "pure"
    if backend == "compiled" and not hasattr(_impl, "inner_sweep"):
        # a stale or partial build; fall back rather than break
        _impl = _ref
        backend = "pure"

decode_point = _impl.decode_point
linear_zero_scan = _impl.linear_zero_scan
const_zero_scan = _impl.const_zero_scan
inner_sweep = _impl.inner_sweep

__all__ = [
    "backend",
    "decode_point",
    "linear_zero_scan",
    "const_zero_scan",
    "inner_sweep",
]
