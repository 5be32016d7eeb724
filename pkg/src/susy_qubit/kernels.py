"""Kernel selection: the compiled RK4 extension when built, otherwise the
pure-Python fallback.  Both expose the same ``run_rk4`` contract; the test
suite pins their agreement and the benchmark in ``benchmarks/`` compares
their throughput.
"""

from __future__ import annotations

from types import ModuleType

from . import _rk4_py

try:
    from . import _rk4 as _compiled
except ImportError:  # extension not built; fall back to the Python loop
    _compiled = None

_active: ModuleType = _compiled if _compiled is not None else _rk4_py

KERNEL_BACKEND: str = _active.BACKEND_NAME

run_rk4 = _active.run_rk4

FRAME_A = _rk4_py.FRAME_A
FRAME_C = _rk4_py.FRAME_C
STATUS_OK = _rk4_py.STATUS_OK
STATUS_POLE = _rk4_py.STATUS_POLE
STATUS_OVERFLOW = _rk4_py.STATUS_OVERFLOW


def available_backends() -> dict[str, ModuleType]:
    """All importable kernel implementations, keyed by backend name."""
    backends = {_rk4_py.BACKEND_NAME: _rk4_py}
    if _compiled is not None:
        backends[_compiled.BACKEND_NAME] = _compiled
    return backends
