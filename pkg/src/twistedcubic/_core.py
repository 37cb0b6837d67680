"""Kernel backend selection: compiled extension if present, NumPy otherwise."""

from __future__ import annotations

try:
    from . import _kernels as kernels  # type: ignore[attr-defined]

    COMPILED = True
except ImportError:  # pragma: no cover - depends on the build
    from . import _kernels_py as kernels  # type: ignore[no-redef]

    COMPILED = False

BACKEND = kernels.BACKEND
