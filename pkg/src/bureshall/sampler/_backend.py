"""Backend selection for the Metropolis hot loop.

The compiled extension is used when it imported cleanly; setting
BURES_FORCE_FALLBACK=1 pins the pure-numpy implementation (the benchmark
and the equivalence test use this).  Both backends implement the identical
algorithm on the identical random stream.
"""

import os

from . import _fallback

try:
    from . import _core
except ImportError:
    _core = None


def active_backend():
    if _core is not None and os.environ.get("BURES_FORCE_FALLBACK", "") != "1":
        return _core
    return _fallback


def backend_name() -> str:
    return "compiled" if active_backend() is not _fallback else "fallback"


def compiled_available() -> bool:
    return _core is not None
