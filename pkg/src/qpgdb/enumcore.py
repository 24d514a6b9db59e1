"""Selects the enumeration kernel at import time.

The compiled kernel (_enumspeed, built from the .pyx by setup.py) is
preferred when it imported cleanly; the pure-Python twin is the
fallback and the reference during development.  QPG_KERNEL=python or
QPG_KERNEL=cython forces a lane, the latter raising if the extension
is unavailable so a misconfigured build fails loudly instead of
silently running slow.
"""

from __future__ import annotations

import os

from . import _enum_py

_FORCED = os.environ.get("QPG_KERNEL", "").strip().lower()

if _FORCED == "python":
    _fast = None
elif _FORCED == "cython":
    from . import _enumspeed as _fast  # type: ignore[attr-defined]
elif _FORCED == "":
    try:
        from . import _enumspeed as _fast  # type: ignore[attr-defined]
    except ImportError:
        _fast = None
else:
    raise RuntimeError(f"QPG_KERNEL must be 'python' or 'cython', not {_FORCED!r}")

KERNEL_NAME = _fast.KERNEL_NAME if _fast is not None else _enum_py.KERNEL_NAME


def enumerate_groups(valencies: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All B_1-consistent flat lambda tuples for one shard, DFS order."""
    if _fast is not None and len(valencies) <= _fast.MAX_CLASSES:
        return _fast.enumerate_groups(valencies)
    return _enum_py.enumerate_groups(valencies)
