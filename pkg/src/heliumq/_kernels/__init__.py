"""Kernel backend selection: compiled Cython core with NumPy fallback.

The compiled module is used when the extension built successfully;
set HELIUMQ_FORCE_FALLBACK=1 to force the pure-Python kernels (useful
for benchmarking and backend-equivalence tests).
"""
import os

from . import fallback
from .records import (  # noqa: F401
    KIND_CONST, KIND_GAUSSIAN, KIND_LINEAR, KIND_WINDOW,
    const_record, eval_records, eval_records_vec, gaussian_record,
    linear_record, pack, pulse_record, window_record,
)

if os.environ.get("HELIUMQ_FORCE_FALLBACK"):
    _impl = fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = fallback

BACKEND = _impl.NAME
propagate_terms = _impl.propagate_terms
propagate_euler = _impl.propagate_euler

__all__ = [
    "BACKEND", "propagate_terms", "propagate_euler", "fallback",
    "pack", "const_record", "linear_record", "gaussian_record",
    "window_record", "pulse_record", "eval_records", "eval_records_vec",
]
