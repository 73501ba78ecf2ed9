"""Subspaces of F_q^v in canonical reduced row echelon form.

A vector is packed into an int with base-q digits, coordinate 0 most
significant, so integer order is lexicographic order on coordinates.  A
:class:`Subspace` stores the packed rows of its RREF basis, pivots left to
right (equivalently: rows in decreasing integer order).  Subspaces compare
and sort by that row tuple.  For q = 2 the row operations go through the
bit-packed kernels in :mod:`qtd.kernels`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import AmbientMismatch, InvalidArguments
from .field import FieldSpec, build_field


def pack(coords: Sequence[int], q: int) -> int:
    x = 0
    for c in coords:
        x = x * q + c
    return x


def unpack(x: int, v: int, q: int) -> list[int]:
    if q == 2:
        return [(x >> (v - 1 - i)) & 1 for i in range(v)]
    out = [0] * v
    for i in range(v - 1, -1, -1):
        x, out[i] = divmod(x, q)
    return out


def _rref_coords(rows: list[list[int]], F: FieldSpec) -> list[list[int]]:
    """Gauss-Jordan elimination over F; returns the nonzero RREF rows."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    ncols = len(rows[0])
    lead = 0
    for col in range(ncols):
        piv = next((i for i in range(lead, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        prow = rows[lead]
        c = inv[prow[col]]
        if c != 1:
            prow = [mul[c][a] for a in prow]
            rows[lead] = prow
        for i in range(len(rows)):
            if i != lead:
                f = rows[i][col]
                if f:
                    nf = neg[f]
                    ri = rows[i]
                    rows[i] = [add[a][mul[nf][b]] for a, b in zip(ri, prow)]
        lead += 1
        if lead == len(rows):
            break
    return rows[:lead]


def rref_packed(rows: Iterable[int], v: int, q: int) -> tuple[int, ...]:
    """Canonical RREF of the span of packed vectors, as packed rows."""
    if q == 2:
        return kernels.rref_rows(list(rows), v)
    F = build_field(q)
    red = _rref_coords([unpack(r, v, q) for r in rows], F)
    return tuple(pack(r, q) for r in red)


class Subspace:
    """A subspace of F_q^v, held as its canonical RREF basis.

    Build instances with :func:`rref` or :meth:`span`; the constructor
    trusts that ``rows`` is already canonical.
    """

    __slots__ = ("rows", "v", "q", "_hash")

    def __init__(self, rows: tuple[int, ...], v: int, q: int):
        self.rows = rows
        self.v = v
        self.q = q
        self._hash = hash((rows, v, q))

    @classmethod
    def span(cls, vectors: Iterable[int], v: int, q: int) -> "Subspace":
        return cls(rref_packed(vectors, v, q), v, q)

    @classmethod
    def zero(cls, v: int, q: int) -> "Subspace":
        return cls((), v, q)

    @classmethod
    def whole(cls, v: int, q: int) -> "Subspace":
        return cls(tuple(q ** (v - 1 - i) for i in range(v)), v, q)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(unpack(r, self.v, self.q)) for r in self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(row) if c) for row in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows == other.rows and self.v == other.v and self.q == other.q

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Subspace") -> bool:
        return self.rows < other.rows

    def __repr__(self):
        rows = ", ".join("[" + ",".join(map(str, r)) + "]" for r in self.basis)
        return f"<{rows}>"

    def points(self) -> list[int]:
        """Packed normalized vectors of all points (1-spaces) in this subspace."""
        return points_in(self.rows, self.v, self.q)


def rref(matrix: Sequence[Sequence[int]], q: int = 2, v: int | None = None) -> Subspace:
    """Row space of ``matrix`` (rows of field element indices) as a Subspace."""
    if v is None:
        if not matrix:
            raise InvalidArguments("ambient dimension needed for an empty matrix")
        v = len(matrix[0])
    for row in matrix:
        if len(row) != v:
            raise InvalidArguments(f"row {list(row)} does not have {v} columns")
        if any(not 0 <= c < q for c in row):
            raise InvalidArguments(f"row {list(row)} has entries outside GF({q})")
    return Subspace.span([pack(r, q) for r in matrix], v, q)


def point(coords: Sequence[int], q: int = 2) -> Subspace:
    return rref([coords], q)


def _same_ambient(U: Subspace, W: Subspace) -> None:
    if U.v != W.v or U.q != W.q:
        raise AmbientMismatch(f"F_{U.q}^{U.v} vs F_{W.q}^{W.v}")


def join(U: Subspace, W: Subspace) -> Subspace:
    _same_ambient(U, W)
    return Subspace.span(U.rows + W.rows, U.v, U.q)


def intersect(U: Subspace, W: Subspace) -> Subspace:
    """U ∩ W via the Zassenhaus block elimination [[U, U], [W, 0]]."""
    _same_ambient(U, W)
    v, q = U.v, U.q
    shift = q**v
    rows = [u * shift + u for u in U.rows] + [w * shift for w in W.rows]
    red = rref_packed(rows, 2 * v, q)
    return Subspace.span([r for r in red if r < shift], v, q)


def contains(U: Subspace, W: Subspace) -> bool:
    """True iff W ≤ U."""
    _same_ambient(U, W)
    if W.dim > U.dim:
        return False
    return len(rref_packed(U.rows + W.rows, U.v, U.q)) == U.dim


def gaussian_binomial(v: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^v.

    Raises InvalidArguments for r outside [0, v] or q < 2.
    """
    if r < 0 or r > v or q < 2:
        raise InvalidArguments(f"gaussian_binomial({v}, {r}, {q})")
    num = den = 1
    for i in range(r):
        num *= q ** (v - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _row_options(pivots: tuple[int, ...], v: int, q: int) -> list[list[int]]:
    pivset = set(pivots)
    opts = []
    for p in pivots:
        free = [c for c in range(p + 1, v) if c not in pivset]
        base = q ** (v - 1 - p)
        weights = [q ** (v - 1 - c) for c in free]
        row_vals = []
        for vals in itertools.product(range(q), repeat=len(free)):
            row_vals.append(base + sum(a * w for a, w in zip(vals, weights)))
        opts.append(row_vals)
    return opts


@lru_cache(maxsize=32)
def _all_rows(v: int, k: int, q: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for pivots in itertools.combinations(range(v), k):
        out.extend(itertools.product(*_row_options(pivots, v, q)))
    out.sort()
    return tuple(out)


def enumerate_subspaces(v: int, k: int, q: int) -> Iterator[Subspace]:
    """Every k-subspace of F_q^v once, in increasing order of RREF rows."""
    if k < 0 or k > v:
        raise InvalidArguments(f"no {k}-subspaces in dimension {v}")
    for rows in _all_rows(v, k, q):
        yield Subspace(rows, v, q)


def subspaces_through(S: Subspace, k: int) -> Iterator[Subspace]:
    """All k-subspaces containing S, in increasing RREF order."""
    v, q, s = S.v, S.q, S.dim
    if not s <= k <= v:
        raise InvalidArguments(f"cannot extend a {s}-space to dimension {k} in F_{q}^{v}")
    piv = set(S.pivots)
    comp = [c for c in range(v) if c not in piv]
    out = []
    for rows in _all_rows(v - s, k - s, q):
        emb = []
        for r in rows:
            coords = unpack(r, v - s, q)
            full = [0] * v
            for c, a in zip(comp, coords):
                full[c] = a
            emb.append(pack(full, q))
        out.append(Subspace.span(S.rows + tuple(emb), v, q))
    out.sort()
    yield from out


@lru_cache(maxsize=64)
def _coefficient_points(k: int, q: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(unpack(r[0], k, q)) for r in _all_rows(k, 1, q))


def points_in(rows: tuple[int, ...], v: int, q: int) -> list[int]:
    """Packed normalized representatives of all points in span(rows).

    ``rows`` must be an RREF basis; then the combinations whose first nonzero
    coefficient is 1 are exactly the normalized point vectors.
    """
    k = len(rows)
    if q == 2:
        out = []
        for mask in range(1, 1 << k):
            x = 0
            for i in range(k):
                if mask >> (k - 1 - i) & 1:
                    x ^= rows[i]
            out.append(x)
        return out
    F = build_field(q)
    add, mul = F.add_table, F.mul_table
    basis = [unpack(r, v, q) for r in rows]
    out = []
    for coeffs in _coefficient_points(k, q):
        acc = [0] * v
        for c, b in zip(coeffs, basis):
            if c:
                acc = [add[a][mul[c][x]] for a, x in zip(acc, b)]
        out.append(pack(acc, q))
    return out


def normalize_vector(x: int, v: int, q: int) -> int:
    """Scale a nonzero packed vector so its first nonzero coordinate is 1."""
    if q == 2:
        return x
    coords = unpack(x, v, q)
    lead = next(c for c in coords if c)
    if lead == 1:
        return x
    F = build_field(q)
    inv = F.inv_table[lead]
    return pack([F.mul_table[inv][c] for c in coords], q)


def format_subspace(S: Subspace) -> str:
    """Serialize as dim lines of v space-separated element indices."""
    return "\n".join(" ".join(map(str, row)) for row in S.basis)


def subspaces_of(S: Subspace, t: int) -> list[Subspace]:
    """All t-subspaces of S.

    Multiplying an RREF coefficient matrix by the RREF basis of S yields an
    RREF matrix again, so the products are already canonical.
    """
    k, v, q = S.dim, S.v, S.q
    if not 0 <= t <= k:
        raise InvalidArguments(f"no {t}-subspaces in a {k}-space")
    out = []
    if q == 2:
        for coeff in _all_rows(k, t, 2):
            rows = []
            for c in coeff:
                x = 0
                for i in range(k):
                    if c >> (k - 1 - i) & 1:
                        x ^= S.rows[i]
                rows.append(x)
            out.append(Subspace(tuple(rows), v, q))
        return out
    F = build_field(q)
    add, mul = F.add_table, F.mul_table
    basis = [unpack(r, v, q) for r in S.rows]
    for coeff in _all_rows(k, t, q):
        rows = []
        for c in coeff:
            acc = [0] * v
            for a, b in zip(unpack(c, k, q), basis):
                if a:
                    acc = [add[x][mul[a][y]] for x, y in zip(acc, b)]
            rows.append(pack(acc, q))
        out.append(Subspace(tuple(rows), v, q))
    return out
