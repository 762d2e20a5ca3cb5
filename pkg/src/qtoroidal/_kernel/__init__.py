"""Monomial-arithmetic kernel with compiled/pure twin selection.

At import time the Cython extension is preferred when it has been built;
``QTOROIDAL_PURE=1`` in the environment forces the pure-Python fallback.
Both implementations share an exact contract (see ``pure.py``) and the
test suite cross-checks them whenever the extension is available.
"""

import os

from . import pure

if os.environ.get("QTOROIDAL_PURE") == "1":
    _impl = pure
else:
    try:
        from . import _speedups as _impl   # type: ignore[attr-defined]
    except ImportError:
        _impl = pure

IMPL = _impl.IMPL
kmerge = _impl.kmerge
kmerge_scaled = _impl.kmerge_scaled
kscale = _impl.kscale
