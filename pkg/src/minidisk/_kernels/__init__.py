"""Kernel lane selection.

Prefers the compiled Cython extension and falls back to the NumPy lane when
the extension is absent.  Override with MINIDISK_KERNELS=compiled|pure
(``compiled`` raises if the extension was not built).  ``BACKEND`` names the
active lane; both lanes stay importable for parity tests and benchmarks.
"""

import importlib
import os

from . import pure

_AVAILABLE = {"pure": pure}
try:
    _core = importlib.import_module("minidisk._kernels._core")
    _AVAILABLE["compiled"] = _core
except ImportError:
    _core = None

_requested = os.environ.get("MINIDISK_KERNELS", "auto").strip().lower()
if _requested in ("", "auto"):
    BACKEND = "compiled" if _core is not None else "pure"
elif _requested in _AVAILABLE:
    BACKEND = _requested
else:
    raise ImportError(
        f"MINIDISK_KERNELS={_requested!r} not available; "
        f"choices: {sorted(_AVAILABLE)} or 'auto'"
    )

_impl = _AVAILABLE[BACKEND]

dzh_batch = _impl.dzh_batch
h_axis_batch = _impl.h_axis_batch
dxu_axis_batch = _impl.dxu_axis_batch
dzh_point = _impl.dzh_point
h_axis_point = _impl.h_axis_point
dxu_axis_point = _impl.dxu_axis_point


def available_backends():
    """Names of the importable kernel lanes on this install."""
    return sorted(_AVAILABLE)


def get_backend(name):
    """Return the kernel module for an explicit lane (parity tests, benchmarks)."""
    return _AVAILABLE[name]
