"""Backend dispatch for the hot array kernels.

The environment variable ``DISKCHORDS_BACKEND`` picks the implementation:

* ``auto``  (default) use the numba-compiled kernels when numba imports,
  otherwise fall back to pure NumPy;
* ``numba`` require the compiled kernels, raise if numba is unavailable;
* ``numpy`` force the pure NumPy implementations.

Both backends compute identical expressions per element.  Distances, offsets,
crossing flags, and grid sums are bit-identical across backends; the foot
angle (and the pair angle derived from it) may differ by one ulp on a few
percent of inputs because NumPy's vectorized ``arctan2`` and libm's ``atan2``
(used by the compiled path) round differently on some arguments.  Outputs are
bit-stable across runs and thread counts *within* a backend; see the
benchmark script under ``benchmarks/`` for the throughput difference.
"""

from __future__ import annotations

import os

from . import _reference

_CHOICE = os.environ.get("DISKCHORDS_BACKEND", "auto").strip().lower()
if _CHOICE not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"DISKCHORDS_BACKEND must be auto, numba, or numpy, got {_CHOICE!r}")

_impl = _reference
_BACKEND_NAME = "numpy"
if _CHOICE in ("auto", "numba"):
    try:
        from . import _numba as _numba_impl
    except ImportError:
        if _CHOICE == "numba":
            raise ImportError(
                "DISKCHORDS_BACKEND=numba but numba is not installed")
    else:
        _impl = _numba_impl
        _BACKEND_NAME = "numba"

segment_frames = _impl.segment_frames
pair_stats = _impl.pair_stats
predicate_stats = _impl.predicate_stats
grid_angle_kernel_sum = _impl.grid_angle_kernel_sum


def backend_name() -> str:
    """Identifier of the active kernel backend, 'numba' or 'numpy'."""
    return _BACKEND_NAME


__all__ = [
    "backend_name",
    "segment_frames",
    "pair_stats",
    "predicate_stats",
    "grid_angle_kernel_sum",
]
