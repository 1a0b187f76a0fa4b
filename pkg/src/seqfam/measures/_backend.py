"""Kernel backend selection.

numba is used when importable unless SEQFAM_DISABLE_NUMBA is set to a true
value, in which case the pure-numpy kernels run instead.
"""

from __future__ import annotations

import importlib
import importlib.util
import os
from types import ModuleType

ENV_FLAG = "SEQFAM_DISABLE_NUMBA"
BACKENDS = ("numba", "numpy")


def numba_available() -> bool:
    return importlib.util.find_spec("numba") is not None


def default_backend() -> str:
    if os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}:
        return "numpy"
    return "numba" if numba_available() else "numpy"


def get_kernels(backend: str | None = None) -> ModuleType:
    backend = backend or default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    return importlib.import_module(f"seqfam.measures._{backend}_kernels")
