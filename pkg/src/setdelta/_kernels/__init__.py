"""Backend selection for the hot inner loops.

Two interchangeable implementations exist: ``numba_impl`` (scalar loops under
``@njit``) and ``numpy_impl`` (vectorised over the live edge arrays).  The
default is numba when importable; set ``SETDELTA_NO_NUMBA=1`` to force the
numpy path.  Both backends produce bit-identical results.
"""

from __future__ import annotations

import os

ENV_FLAG = "SETDELTA_NO_NUMBA"
BACKENDS = ("numba", "numpy")


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def default_backend(env=None) -> str:
    env = os.environ if env is None else env
    if env.get(ENV_FLAG, "").strip() not in ("", "0"):
        return "numpy"
    return "numba" if numba_available() else "numpy"


def get_kernels(backend: str | None = None):
    """Return the kernel module for ``backend`` (default per environment)."""
    name = backend or default_backend()
    if name == "numba":
        from . import numba_impl

        return numba_impl
    if name == "numpy":
        from . import numpy_impl

        return numpy_impl
    raise ValueError(f"unknown kernel backend: {name}")
