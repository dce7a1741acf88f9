"""Kernel dispatch: the compiled extension when importable, otherwise the pure-Python fallback.

``set_backend`` and ``use_backend`` switch at runtime (used by tests and the benchmark).
"""

from __future__ import annotations

from contextlib import contextmanager

import numpy as np

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_active = "compiled" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    _active = name


@contextmanager
def use_backend(name: str):
    prev = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def apply_word(partner: np.ndarray, diag: np.ndarray, off: np.ndarray,
               word: np.ndarray, vecs: np.ndarray) -> None:
    _BACKENDS[_active].apply_word(partner, diag, off, np.ascontiguousarray(word, dtype=np.int_), vecs)


def bracket_histogram(n_nodes: int, fixed_edges: np.ndarray, options: np.ndarray,
                      a_when_one: np.ndarray) -> np.ndarray:
    return _BACKENDS[_active].bracket_histogram(
        int(n_nodes),
        np.ascontiguousarray(fixed_edges, dtype=np.int_).reshape(-1, 2),
        np.ascontiguousarray(options, dtype=np.int_).reshape(-1, 2, 4),
        np.ascontiguousarray(a_when_one, dtype=np.int_),
    )
