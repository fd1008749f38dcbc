"""Kernel backend selection.

Binds to the compiled extension when it was built, otherwise to the
numpy fallback.  Callers go through this module's attributes at call
time (``_backend.jacobi_eigh(...)``), so tests and benchmarks can swap
implementations by assignment without re-importing the package.
"""

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None
_active = _compiled if HAVE_COMPILED else _fallback

jacobi_eigh = _active.jacobi_eigh
moments_pure = _active.moments_pure
moments_density = _active.moments_density


def backend_name() -> str:
    """Which kernel set is currently bound ("compiled" or "fallback")."""
    if jacobi_eigh is _fallback.jacobi_eigh:
        return "fallback"
    return "compiled"
