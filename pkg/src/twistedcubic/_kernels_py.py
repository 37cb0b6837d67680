"""NumPy fallback for the bulk kernels.

Same API as the compiled extension: lines are canonical Pluecker
6-tuples of field codes, packed little-endian into uint64 keys with
`bits` bits per slot.  All outputs are deterministic (sorted keys,
discovery-order orbit ids).
"""

from __future__ import annotations

import numpy as np

from ._tables import KernelTables

BACKEND = "python"

# ordered index pairs defining the six Pluecker slots (matches pg3)
_SLOT_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3))


def unpack_keys(keys: np.ndarray, T: KernelTables, width: int = 6) -> np.ndarray:
    mask = np.uint64((1 << T.bits) - 1)
    out = np.empty((len(keys), width), dtype=np.int32)
    for s in range(width):
        out[:, s] = ((keys >> np.uint64(s * T.bits)) & mask).astype(np.int32)
    return out


def _pack_rows(rows: np.ndarray, T: KernelTables) -> np.ndarray:
    key = np.zeros(len(rows), dtype=np.uint64)
    for s in range(rows.shape[1]):
        key |= rows[:, s].astype(np.uint64) << np.uint64(s * T.bits)
    return key


def _canon_rows(rows: np.ndarray, T: KernelTables) -> np.ndarray:
    lead_idx = np.argmax(rows != 0, axis=1)
    lead = rows[np.arange(len(rows)), lead_idx]
    return T.mul[T.inv[lead][:, None], rows]


def _act_rows(rows: np.ndarray, W: np.ndarray, T: KernelTables) -> np.ndarray:
    """Row-vector times matrix over GF, elementwise through the tables."""
    n, w = rows.shape
    out = np.empty((n, w), dtype=np.int32)
    for j in range(w):
        acc = T.mul[rows[:, 0], W[0, j]]
        for k in range(1, w):
            acc = T.add[acc, T.mul[rows[:, k], W[k, j]]]
        out[:, j] = acc
    return out


def canon_pack(rows: np.ndarray, T: KernelTables) -> np.ndarray:
    return _pack_rows(_canon_rows(rows, T), T)


def _contains(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    pos = np.searchsorted(sorted_keys, keys)
    pos_c = np.minimum(pos, len(sorted_keys) - 1)
    return (len(sorted_keys) > 0) & (sorted_keys[pos_c] == keys)


def orbit_closure(seed6: np.ndarray, gens6: np.ndarray, T: KernelTables) -> np.ndarray:
    """Sorted packed keys of the closure of one line under the generators."""
    seed = np.asarray(seed6, dtype=np.int32).reshape(1, 6)
    seen = canon_pack(seed, T)
    frontier = _canon_rows(seed, T)
    while len(frontier):
        imgs = np.concatenate([_act_rows(frontier, W, T) for W in gens6])
        keys = canon_pack(imgs, T)
        keys, first = np.unique(keys, return_index=True)
        fresh = ~_contains(seen, keys)
        keys = keys[fresh]
        if not len(keys):
            break
        frontier = _canon_rows(imgs[first[fresh]], T)
        seen = np.concatenate([seen, keys])
        seen.sort()
    return seen


def scan_fixing(seed6: np.ndarray, mats6: np.ndarray, T: KernelTables) -> np.ndarray:
    """Indices of the matrices whose line action fixes the seed key."""
    seed = np.asarray(seed6, dtype=np.int32).reshape(1, 6)
    seed_key = canon_pack(seed, T)[0]
    n = len(mats6)
    out = np.empty((n, 6), dtype=np.int32)
    for j in range(6):
        acc = T.mul[np.broadcast_to(seed[0, 0], n), mats6[:, 0, j]]
        for k in range(1, 6):
            acc = T.add[acc, T.mul[np.broadcast_to(seed[0, k], n), mats6[:, k, j]]]
        out[:, j] = acc
    keys = canon_pack(out, T)
    return np.nonzero(keys == seed_key)[0].astype(np.int64)


def _pairs_to_keys(X: np.ndarray, Y: np.ndarray, T: KernelTables) -> np.ndarray:
    rows = np.empty((len(X), 6), dtype=np.int32)
    for s, (i, j) in enumerate(_SLOT_PAIRS):
        rows[:, s] = T.add[T.mul[X[:, i], Y[:, j]], T.neg[T.mul[X[:, j], Y[:, i]]]]
    return canon_pack(rows, T)


_RREF_PATTERNS = tuple((i, j) for i in range(4) for j in range(i + 1, 4))
_CHUNK = 1 << 18


def all_line_keys(T: KernelTables) -> np.ndarray:
    """Sorted packed keys of every line of PG(3,q), each exactly once."""
    q = T.q
    parts = []
    for i, j in _RREF_PATTERNS:
        free1 = [k for k in range(i + 1, 4) if k != j]
        free2 = [k for k in range(j + 1, 4)]
        nf = len(free1) + len(free2)
        total = q**nf
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total))
            X = np.zeros((len(idx), 4), dtype=np.int32)
            Y = np.zeros((len(idx), 4), dtype=np.int32)
            X[:, i] = 1
            Y[:, j] = 1
            for t, k in enumerate(free1 + free2):
                col = (idx // q**t) % q
                (X if t < len(free1) else Y)[:, k] = col
            parts.append(_pairs_to_keys(X, Y, T))
    keys = np.concatenate(parts)
    keys.sort()
    return keys


def partition_orbits(
    keys: np.ndarray, gens6: np.ndarray, T: KernelTables
) -> np.ndarray:
    """Orbit id per key (discovery order) for an action-closed sorted key set."""
    ids = np.full(len(keys), -1, dtype=np.int32)
    next_id = 0
    for start in range(len(keys)):
        if ids[start] >= 0:
            continue
        seed6 = unpack_keys(keys[start : start + 1], T)[0]
        orbit = orbit_closure(seed6, gens6, T)
        pos = np.searchsorted(keys, orbit)
        if pos.max(initial=-1) >= len(keys) or not np.array_equal(keys[pos], orbit):
            raise ValueError("key set is not closed under the generators")
        ids[pos] = next_id
        next_id += 1
    return ids
