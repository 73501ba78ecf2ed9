# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernels; same contract as ``qtd._gf2_py``.

Limits: v <= 16 and k * v <= 64 for :func:`orbit_ids`, v <= 16 elsewhere.
"""

from libc.stdlib cimport free, malloc
from libc.stdint cimport int32_t, uint32_t, uint64_t

ctypedef uint64_t u64
ctypedef uint32_t u32


cdef inline int _topbit(u32 x) nogil:
    cdef int b = 31
    while b >= 0 and not (x >> b) & 1:
        b -= 1
    return b


cdef inline int _rref(u32* rows, int n, u32* out) nogil:
    """Reduce ``rows[0:n]`` into RREF in ``out``; returns the rank."""
    cdef int rank = 0, i, j
    cdef u32 r, top, tmp
    for i in range(n):
        r = rows[i]
        for j in range(rank):
            if r & (<u32>1 << _topbit(out[j])):
                r ^= out[j]
        if r:
            top = <u32>1 << _topbit(r)
            for j in range(rank):
                if out[j] & top:
                    out[j] ^= r
            out[rank] = r
            rank += 1
    # insertion sort, descending
    for i in range(1, rank):
        tmp = out[i]
        j = i - 1
        while j >= 0 and out[j] < tmp:
            out[j + 1] = out[j]
            j -= 1
        out[j + 1] = tmp
    return rank


def rref_rows(rows, int v):
    cdef int n = len(rows), i, rank
    if n == 0:
        return ()
    if v > 32:
        from qtd._gf2_py import rref_rows as slow
        return slow(rows, v)
    cdef u32* buf = <u32*> malloc(2 * n * sizeof(u32))
    try:
        for i in range(n):
            buf[i] = <u32> rows[i]
        rank = _rref(buf, n, buf + n)
        return tuple([buf[n + i] for i in range(rank)])
    finally:
        free(buf)


def pack_rows(rows, int v):
    key = 0
    for r in rows:
        key = (key << v) | r
    return key


def unpack_key(key, int v, int k):
    mask = (1 << v) - 1
    return tuple((key >> (v * (k - 1 - t))) & mask for t in range(k))


cdef inline Py_ssize_t _find(u64* keys, Py_ssize_t n, u64 key) nogil:
    cdef Py_ssize_t lo = 0, hi = n - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        elif keys[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


def orbit_ids(keys, tables, int v, int k):
    if v > 16 or k * v > 64:
        from qtd._gf2_py import orbit_ids as slow
        return slow(keys, tables, v, k)
    cdef Py_ssize_t n = len(keys), i, j, idx, top
    cdef int ngen = len(tables), g, t, rank
    cdef Py_ssize_t size = (<Py_ssize_t>1) << v
    cdef u64 key, img, mask = (<u64>1 << v) - 1
    cdef u64* ckeys = <u64*> malloc(max(n, 1) * sizeof(u64))
    cdef u32* ctab = <u32*> malloc(max(ngen * size, 1) * sizeof(u32))
    cdef int32_t* orbit = <int32_t*> malloc(max(n, 1) * sizeof(int32_t))
    cdef Py_ssize_t* stack = <Py_ssize_t*> malloc(max(n, 1) * sizeof(Py_ssize_t))
    cdef u32 rows[64]
    cdef u32 red[64]
    cdef int32_t nxt = 0
    cdef bint closed = True
    try:
        for i in range(n):
            ckeys[i] = <u64> keys[i]
            orbit[i] = -1
        for g in range(ngen):
            tab = tables[g]
            for i in range(size):
                ctab[g * size + i] = <u32> tab[i]
        with nogil:
            for i in range(n):
                if orbit[i] >= 0:
                    continue
                orbit[i] = nxt
                top = 0
                stack[top] = i
                top += 1
                while top > 0:
                    top -= 1
                    key = ckeys[stack[top]]
                    for g in range(ngen):
                        for t in range(k):
                            rows[t] = ctab[g * size + <Py_ssize_t>((key >> (v * (k - 1 - t))) & mask)]
                        rank = _rref(rows, k, red)
                        img = 0
                        for t in range(rank):
                            img = (img << v) | red[t]
                        idx = _find(ckeys, n, img) if rank == k else -1
                        if idx < 0:
                            closed = False
                            break
                        if orbit[idx] < 0:
                            orbit[idx] = nxt
                            stack[top] = idx
                            top += 1
                    if not closed:
                        break
                if not closed:
                    break
                nxt += 1
        if not closed:
            raise ValueError("element set is not closed under the group")
        return [orbit[i] for i in range(n)]
    finally:
        free(ckeys)
        free(ctab)
        free(orbit)
        free(stack)


def lambda_counts(int p, point_class, int m):
    cdef Py_ssize_t n = len(point_class), r, s
    cdef int32_t* cls = <int32_t*> malloc(max(n, 1) * sizeof(int32_t))
    cdef long long* counts = <long long*> malloc(max(m * m, 1) * sizeof(long long))
    cdef Py_ssize_t base
    cdef bint ok
    try:
        for r in range(n):
            cls[r] = point_class[r]
        for r in range(m * m):
            counts[r] = 0
        with nogil:
            for r in range(1, n):
                base = cls[r] * m
                for s in range(1, n):
                    if r == p:
                        ok = s != p
                    elif s == p or s == r:
                        ok = True
                    else:
                        ok = (p ^ r ^ s) == 0
                    if ok:
                        counts[base + cls[s]] += 1
        return [counts[r] for r in range(m * m)]
    finally:
        free(cls)
        free(counts)
