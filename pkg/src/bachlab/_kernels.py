"""Backend selection for the jet kernels.

Prefers the compiled extension; falls back to the NumPy implementation if
it is absent.  Set BACHLAB_FORCE_PY=1 to force the fallback (used by the
backend-parity tests and the benchmark script).
"""

from __future__ import annotations

import os

if os.environ.get("BACHLAB_FORCE_PY", "0") not in ("", "0"):
    from . import _jetcore_py as _impl
else:
    try:
        from . import _jetcore as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _jetcore_py as _impl  # type: ignore[no-redef]

BACKEND_NAME: str = _impl.BACKEND_NAME
mul_into = _impl.mul_into
