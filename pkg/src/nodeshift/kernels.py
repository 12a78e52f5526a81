"""Hot-kernel dispatch.

Uses the compiled ``nodeshift._core`` extension when it was built, and the
numpy fallback in ``nodeshift._pycore`` otherwise. Set
``NODESHIFT_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from nodeshift import _pycore

__all__ = ["BACKEND", "available_backends", "get_backend",
           "dc_decode_many", "nse_decode_many", "order_crossover",
           "swap_mutation", "tour_costs"]


def _load_compiled() -> ModuleType | None:
    try:
        from nodeshift import _core
    except ImportError:
        return None
    return _core


_compiled = _load_compiled()


def available_backends() -> dict[str, ModuleType]:
    found = {"python": _pycore}
    if _compiled is not None:
        found["cython"] = _compiled
    return found


def get_backend(name: str | None = None) -> ModuleType:
    """Kernel module by name; ``None`` picks the import-time default."""
    if name is None:
        return _impl
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available") from None


_requested = os.environ.get("NODESHIFT_BACKEND", "").strip().lower()
if _requested == "python" or _compiled is None:
    _impl, BACKEND = _pycore, "python"
else:
    _impl, BACKEND = _compiled, "cython"

tour_costs = _impl.tour_costs
nse_decode_many = _impl.nse_decode_many
dc_decode_many = _impl.dc_decode_many
order_crossover = _impl.order_crossover
swap_mutation = _impl.swap_mutation
