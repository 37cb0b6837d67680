"""Dense per-field arithmetic tables handed to the bulk kernels."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .gf import FieldSpec


class KernelTables(NamedTuple):
    q: int
    bits: int            # bits per packed coordinate slot
    add: np.ndarray      # (q, q) int32
    mul: np.ndarray      # (q, q) int32
    neg: np.ndarray      # (q,) int32
    inv: np.ndarray      # (q,) int32, inv[0] unused


_cache: dict[int, KernelTables] = {}


def kernel_tables(F: FieldSpec) -> KernelTables:
    t = _cache.get(F.q)
    if t is None:
        add, mul = F.dense_tables()
        t = KernelTables(
            q=F.q,
            bits=(F.q - 1).bit_length(),
            add=add,
            mul=mul,
            neg=np.ascontiguousarray(F.neg.astype(np.int32)),
            inv=np.ascontiguousarray(F.inv.astype(np.int32)),
        )
        _cache[F.q] = t
    return t
