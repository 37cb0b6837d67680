# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bulk kernels: line-orbit closure, stabilizer scan, line
enumeration and orbit partition.  Mirrors the _kernels_py API."""

from libc.stdint cimport int32_t, uint64_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

import numpy as np

BACKEND = "compiled"

cdef int SLOT_I[6]
cdef int SLOT_J[6]
SLOT_I[0] = 0; SLOT_J[0] = 1
SLOT_I[1] = 0; SLOT_J[1] = 2
SLOT_I[2] = 0; SLOT_J[2] = 3
SLOT_I[3] = 1; SLOT_J[3] = 2
SLOT_I[4] = 3; SLOT_J[4] = 1
SLOT_I[5] = 2; SLOT_J[5] = 3


cdef inline uint64_t _pack6(int* v, int bits) noexcept nogil:
    cdef uint64_t key = 0
    cdef int s
    for s in range(6):
        key |= (<uint64_t> v[s]) << (s * bits)
    return key


cdef inline void _unpack6(uint64_t key, int bits, int* out) noexcept nogil:
    cdef uint64_t mask = (<uint64_t> 1 << bits) - 1
    cdef int s
    for s in range(6):
        out[s] = <int> ((key >> (s * bits)) & mask)


cdef inline void _canon6(const int[:, ::1] mul, const int[::1] inv, int* v) noexcept nogil:
    cdef int s, f
    for s in range(6):
        if v[s] != 0:
            if v[s] == 1:
                return
            f = inv[v[s]]
            for s in range(6):
                v[s] = mul[f, v[s]]
            return


cdef inline void _act6(const int[:, ::1] add, const int[:, ::1] mul,
                       const int[:, :, ::1] W, int g, int* row, int* out) noexcept nogil:
    cdef int j, k, acc
    for j in range(6):
        acc = mul[row[0], W[g, 0, j]]
        for k in range(1, 6):
            acc = add[acc, mul[row[k], W[g, k, j]]]
        out[j] = acc


def unpack_keys(keys, T, int width=6):
    cdef const uint64_t[::1] k = np.ascontiguousarray(keys, dtype=np.uint64)
    out_arr = np.empty((len(keys), width), dtype=np.int32)
    cdef int32_t[:, ::1] out = out_arr
    cdef int bits = T.bits
    cdef uint64_t mask = (<uint64_t> 1 << bits) - 1
    cdef Py_ssize_t i
    cdef int s
    for i in range(k.shape[0]):
        for s in range(width):
            out[i, s] = <int32_t> ((k[i] >> (s * bits)) & mask)
    return out_arr


def orbit_closure(seed6, gens6, T):
    """Sorted packed keys of the closure of one line under the generators."""
    cdef const int[:, ::1] add = T.add
    cdef const int[:, ::1] mul = T.mul
    cdef const int[::1] inv = T.inv
    cdef int bits = T.bits
    cdef const int[:, :, ::1] W = np.ascontiguousarray(
        np.asarray(gens6).reshape(-1, 6, 6), dtype=np.int32)
    cdef int ngens = W.shape[0]
    cdef int row[6]
    cdef int img[6]
    cdef int s
    seed = np.asarray(seed6, dtype=np.int32).reshape(6)
    for s in range(6):
        row[s] = seed[s]
    _canon6(mul, inv, row)

    cdef unordered_set[uint64_t] seen
    cdef vector[uint64_t] frontier, fresh
    cdef uint64_t key
    cdef Py_ssize_t i
    cdef int g
    key = _pack6(row, bits)
    seen.insert(key)
    frontier.push_back(key)
    with nogil:
        while frontier.size() > 0:
            fresh.clear()
            for i in range(<Py_ssize_t> frontier.size()):
                _unpack6(frontier[i], bits, row)
                for g in range(ngens):
                    _act6(add, mul, W, g, row, img)
                    _canon6(mul, inv, img)
                    key = _pack6(img, bits)
                    if seen.insert(key).second:
                        fresh.push_back(key)
            frontier.swap(fresh)
    out = np.empty(seen.size(), dtype=np.uint64)
    cdef uint64_t[::1] o = out
    i = 0
    for key in seen:
        o[i] = key
        i += 1
    out.sort()
    return out


def scan_fixing(seed6, mats6, T):
    """Indices of the matrices whose line action fixes the seed key."""
    cdef const int[:, ::1] add = T.add
    cdef const int[:, ::1] mul = T.mul
    cdef const int[::1] inv = T.inv
    cdef int bits = T.bits
    cdef const int[:, :, ::1] M = np.ascontiguousarray(mats6, dtype=np.int32)
    cdef int row[6]
    cdef int img[6]
    cdef int s
    seed = np.asarray(seed6, dtype=np.int32).reshape(6)
    for s in range(6):
        row[s] = seed[s]
    _canon6(mul, inv, row)
    cdef uint64_t target = _pack6(row, bits)
    cdef vector[Py_ssize_t] hits
    cdef Py_ssize_t n = M.shape[0], i
    with nogil:
        for i in range(n):
            _act6(add, mul, M, i, row, img)
            _canon6(mul, inv, img)
            if _pack6(img, bits) == target:
                hits.push_back(i)
    out = np.empty(hits.size(), dtype=np.int64)
    for i in range(<Py_ssize_t> hits.size()):
        out[i] = hits[i]
    return out


def all_line_keys(T):
    """Sorted packed keys of every line of PG(3,q), each exactly once."""
    cdef const int[:, ::1] add = T.add
    cdef const int[:, ::1] mul = T.mul
    cdef const int[::1] inv = T.inv
    cdef const int[::1] neg = T.neg
    cdef int bits = T.bits
    cdef int q = T.q
    cdef vector[uint64_t] keys
    keys.reserve((q * q + 1) * (q * q + q + 1))
    cdef int X[4]
    cdef int Y[4]
    cdef int row[6]
    cdef int pi, pj, k, s, t
    cdef int free_cols[4]
    cdef int nf, nf1
    cdef long total, n, rem
    with nogil:
        for pi in range(4):
            for pj in range(pi + 1, 4):
                nf = 0
                for k in range(pi + 1, 4):
                    if k != pj:
                        free_cols[nf] = k
                        nf += 1
                nf1 = nf
                for k in range(pj + 1, 4):
                    free_cols[nf] = k
                    nf += 1
                total = 1
                for k in range(nf):
                    total *= q
                for n in range(total):
                    for k in range(4):
                        X[k] = 0
                        Y[k] = 0
                    X[pi] = 1
                    Y[pj] = 1
                    rem = n
                    for k in range(nf):
                        t = <int> (rem % q)
                        rem //= q
                        if k < nf1:
                            X[free_cols[k]] = t
                        else:
                            Y[free_cols[k]] = t
                    for s in range(6):
                        row[s] = add[mul[X[SLOT_I[s]], Y[SLOT_J[s]]],
                                     neg[mul[X[SLOT_J[s]], Y[SLOT_I[s]]]]]
                    _canon6(mul, inv, row)
                    keys.push_back(_pack6(row, bits))
    out = np.empty(keys.size(), dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t i
    for i in range(<Py_ssize_t> keys.size()):
        o[i] = keys[i]
    out.sort()
    return out


cdef inline Py_ssize_t _lower_bound(const uint64_t[::1] keys, uint64_t x) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if keys[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def partition_orbits(keys, gens6, T):
    """Orbit id per key (discovery order) for an action-closed sorted key set."""
    cdef const uint64_t[::1] k = np.ascontiguousarray(keys, dtype=np.uint64)
    cdef const int[:, ::1] add = T.add
    cdef const int[:, ::1] mul = T.mul
    cdef const int[::1] inv = T.inv
    cdef int bits = T.bits
    cdef const int[:, :, ::1] W = np.ascontiguousarray(
        np.asarray(gens6).reshape(-1, 6, 6), dtype=np.int32)
    cdef int ngens = W.shape[0]
    ids_arr = np.full(k.shape[0], -1, dtype=np.int32)
    cdef int32_t[::1] ids = ids_arr
    cdef vector[Py_ssize_t] frontier, fresh
    cdef Py_ssize_t n = k.shape[0], start, i, pos
    cdef int cur = 0
    cdef int row[6]
    cdef int img[6]
    cdef uint64_t key
    cdef int g
    cdef bint bad = False
    with nogil:
        for start in range(n):
            if ids[start] >= 0:
                continue
            ids[start] = cur
            frontier.clear()
            frontier.push_back(start)
            while frontier.size() > 0:
                fresh.clear()
                for i in range(<Py_ssize_t> frontier.size()):
                    _unpack6(k[frontier[i]], bits, row)
                    for g in range(ngens):
                        _act6(add, mul, W, g, row, img)
                        _canon6(mul, inv, img)
                        key = _pack6(img, bits)
                        pos = _lower_bound(k, key)
                        if pos >= n or k[pos] != key:
                            bad = True
                            break
                        if ids[pos] < 0:
                            ids[pos] = cur
                            fresh.push_back(pos)
                    if bad:
                        break
                if bad:
                    break
                frontier.swap(fresh)
            if bad:
                break
            cur += 1
    if bad:
        raise ValueError("key set is not closed under the generators")
    return ids_arr
