"""Backend selection for the GF(2) hot kernels.

The compiled ``qtd._gf2`` extension is used when it imports; otherwise the
pure-Python ``qtd._gf2_py`` module.  Setting ``QTD_PURE_PYTHON=1`` forces
the fallback.
"""

from __future__ import annotations

import os

from . import _gf2_py

if os.environ.get("QTD_PURE_PYTHON", "") not in ("", "0"):
    _impl = _gf2_py
else:
    try:
        from . import _gf2 as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _gf2_py

BACKEND = "cython" if _impl is not _gf2_py else "python"

rref_rows = _impl.rref_rows
pack_rows = _impl.pack_rows
unpack_key = _impl.unpack_key
orbit_ids = _impl.orbit_ids
lambda_counts = _impl.lambda_counts


def backends() -> dict:
    """All importable backends by name (for cross-checking and benchmarks)."""
    out = {"python": _gf2_py}
    try:
        from . import _gf2  # type: ignore[attr-defined]

        out["cython"] = _gf2
    except ImportError:
        pass
    return out
