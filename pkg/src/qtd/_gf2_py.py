"""Pure-Python GF(2) kernels (fallback for the compiled ``_gf2`` module).

Vectors of F_2^v are ints; coordinate ``i`` lives in bit ``v - 1 - i`` so
integer order equals lexicographic order on coordinate tuples.  A subspace
is the tuple of its RREF rows in decreasing order; its packed key
concatenates those rows, first row most significant.
"""

from __future__ import annotations


def rref_rows(rows, v):
    basis = []
    for r in rows:
        for b in basis:
            if r & (1 << (b.bit_length() - 1)):
                r ^= b
        if r:
            top = 1 << (r.bit_length() - 1)
            basis = [b ^ r if b & top else b for b in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return tuple(basis)


def pack_rows(rows, v):
    key = 0
    for r in rows:
        key = (key << v) | r
    return key


def unpack_key(key, v, k):
    mask = (1 << v) - 1
    return tuple((key >> (v * (k - 1 - t))) & mask for t in range(k))


def orbit_ids(keys, tables, v, k):
    """Orbit number of every key under the maps given as image tables.

    ``keys`` must be sorted ascending and closed under every table; orbits
    are numbered in order of their least key.
    """
    n = len(keys)
    index = {key: i for i, key in enumerate(keys)}
    mask = (1 << v) - 1
    shifts = [v * (k - 1 - t) for t in range(k)]
    orbit = [-1] * n
    nxt = 0
    for i in range(n):
        if orbit[i] >= 0:
            continue
        orbit[i] = nxt
        stack = [i]
        while stack:
            key = keys[stack.pop()]
            rows = [(key >> sh) & mask for sh in shifts]
            for tab in tables:
                img = pack_rows(rref_rows([tab[r] for r in rows], v), v)
                j = index.get(img)
                if j is None:
                    raise ValueError("element set is not closed under the group")
                if orbit[j] < 0:
                    orbit[j] = nxt
                    stack.append(j)
        nxt += 1
    return orbit


def lambda_counts(p, point_class, m):
    """Flat m*m table: entry r*m+s counts (R, S) with dim<p, R, S> = 2.

    ``point_class[x]`` is the class of the nonzero vector x (index 0 unused).
    """
    counts = [0] * (m * m)
    n = len(point_class)
    for r in range(1, n):
        base = point_class[r] * m
        for s in range(1, n):
            if r == p:
                ok = s != p
            elif s == p or s == r:
                ok = True
            else:
                ok = (p ^ r ^ s) == 0
            if ok:
                counts[base + point_class[s]] += 1
    return counts
