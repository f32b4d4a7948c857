"""Kernel selection: compiled extension if importable, numpy fallback otherwise.

Set ``L2ALEX_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
by tests that exercise both paths). ``KERNEL_BACKEND`` records the choice.
"""

import os

from . import _jensen_py

if os.environ.get("L2ALEX_PURE_PYTHON", "") not in ("", "0"):
    _impl = _jensen_py
    KERNEL_BACKEND = "python"
else:
    try:
        from . import _jensen_cy as _impl
        KERNEL_BACKEND = "compiled"
    except ImportError:
        _impl = _jensen_py
        KERNEL_BACKEND = "python"

batch_log_mahler = _impl.batch_log_mahler


def backends():
    """All importable kernel backends, for cross-checks and benchmarks."""
    out = {"python": _jensen_py.batch_log_mahler}
    try:
        from . import _jensen_cy
        out["compiled"] = _jensen_cy.batch_log_mahler
    except ImportError:
        pass
    return out
