"""Kernel backend selection.

The compiled extension is used when importable; set ``NPCSOURCE_PURE_PYTHON=1``
to force the numpy fallback.
"""
from __future__ import annotations

import importlib
import os

from . import _kernels_py


def load(name: str | None = None):
    """Return the kernel module: ``"compiled"``, ``"python"`` or best available."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        return importlib.import_module("npcsource._kernels")
    if os.environ.get("NPCSOURCE_PURE_PYTHON"):
        return _kernels_py
    try:
        return importlib.import_module("npcsource._kernels")
    except ImportError:
        return _kernels_py


kernels = load()
COMPILED = kernels is not _kernels_py
