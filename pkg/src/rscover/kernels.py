"""Backend selection for the hot linear-algebra and root-finding kernels.

The compiled module has modular-arithmetic kernels for prime fields and
table-driven kernels for extension fields with q <= 1024; larger extension
fields go through the pure-Python code.  Set ``RSCOVER_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from functools import lru_cache

from . import _pykernels as _py
from .gf import FieldSpec

try:
    if os.environ.get("RSCOVER_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _ckernels as _c
except ImportError:
    _c = None

BACKEND = "cython" if _c is not None else "python"

__all__ = ["BACKEND", "available_backends", "nullspace_vector", "gs_interpolate", "rr_roots",
           "nearest_hamming", "monomials"]

monomials = _py.monomials


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _c is not None else [])


TABLE_LIMIT = 1024


@lru_cache(maxsize=None)
def _tables(F: FieldSpec):
    q = F.q
    gen = next(g for g in range(2, q) if len({F.pow(g, e) for e in range(q - 1)}) == q - 1)
    exp = [F.pow(gen, e) for e in range(q - 1)]
    log = [0] * q
    for e, a in enumerate(exp):
        log[a] = e
    add = [[0]] if F.p == 2 else [[F.add(a, b) for b in range(q)] for a in range(q)]
    neg = [F.neg(a) for a in range(q)]
    return _c.FieldTables(F.p, q, exp, log, add, neg)


def _use_c(F: FieldSpec | None, backend: str | None) -> str | None:
    """"prime", "table" or None (pure Python) for this field and backend."""
    if backend is None:
        backend = BACKEND
    if backend not in ("python", "cython"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "cython":
        if _c is None:
            raise RuntimeError("compiled kernels are not built")
        if F is None or F.m == 1:
            return "prime"
        if F.q <= TABLE_LIMIT:
            return "table"
    return None


def nullspace_vector(mat, F: FieldSpec, backend: str | None = None):
    how = _use_c(F, backend)
    if how == "prime":
        return _c.nullspace_vector(mat, F.p)
    if how == "table":
        return _c.nullspace_vector_tab(mat, _tables(F))
    return _py.nullspace_vector(mat, F)


def gs_interpolate(xs, ys, s: int, k: int, D: int, F: FieldSpec, backend: str | None = None):
    how = _use_c(F, backend)
    if how == "prime":
        return _c.gs_interpolate(list(xs), list(ys), s, k, D, F.p)
    if how == "table":
        return _c.gs_interpolate_tab(list(xs), list(ys), s, k, D, _tables(F))
    return _py.gs_interpolate(xs, ys, s, k, D, F)


def rr_roots(Q, k: int, F: FieldSpec, backend: str | None = None) -> list[tuple[int, ...]]:
    how = _use_c(F, backend)
    if how == "prime":
        return _c.rr_roots(Q, k, F.p)
    if how == "table":
        return _c.rr_roots_tab(Q, k, _tables(F))
    return _py.rr_roots(Q, k, F)


def nearest_hamming(codebook, y, backend: str | None = None) -> tuple[int, int]:
    if _use_c(None, backend):
        return _c.nearest_hamming(codebook, y)
    return _py.nearest_hamming(codebook, y)
