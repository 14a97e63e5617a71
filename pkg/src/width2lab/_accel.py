"""JIT switch for the hot kernels.

Set ``WIDTH2LAB_NUMBA=0`` to force the pure-Python/numpy kernels even when
numba is importable.
"""
import os

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None


def _flag() -> bool:
    raw = os.environ.get("WIDTH2LAB_NUMBA", "1").strip().lower()
    return raw not in ("0", "false", "no", "off")


USE_NUMBA = _numba is not None and _flag()


def njit(func):
    """``numba.njit(cache=True)`` when available, identity otherwise."""
    if _numba is None:
        return func
    return _numba.njit(cache=True)(func)
