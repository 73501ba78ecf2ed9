"""Semilinear maps on F_q^v and the orbits they induce on subspaces.

Convention: a map ``g = (M, f)`` acts on row vectors on the right,
``x -> (x^(p^f)) · M`` with the Frobenius applied coordinatewise first.
``compose(h, g)`` means "h, then g", so ``apply(g, apply(h, S)) ==
apply(compose(h, g), S)``.

Group orders are orders of the induced action on points, i.e. maps are
identified modulo nonzero scalars.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .errors import AmbientMismatch, BoundExceeded, InvalidArguments
from .field import build_field
from .subspace import Subspace, _rref_coords, pack, unpack

DEFAULT_BOUND = 10**6
TABLE_LIMIT = 1 << 20


@dataclass(frozen=True)
class SemilinearMap:
    matrix: tuple[tuple[int, ...], ...]
    q: int
    frob: int = 0

    def __post_init__(self):
        F = build_field(self.q)
        v = len(self.matrix)
        if any(len(r) != v for r in self.matrix):
            raise InvalidArguments("generator matrix must be square")
        if not 0 <= self.frob < F.e:
            raise InvalidArguments(f"Frobenius exponent {self.frob} outside [0, {F.e})")
        if len(_rref_coords([list(r) for r in self.matrix], F)) != v:
            raise InvalidArguments("generator matrix is singular")

    @classmethod
    def identity(cls, v: int, q: int) -> "SemilinearMap":
        return cls(tuple(tuple(int(i == j) for j in range(v)) for i in range(v)), q)

    @classmethod
    def from_packed(cls, rows: Sequence[int], v: int, q: int, frob: int = 0) -> "SemilinearMap":
        return cls(tuple(tuple(unpack(r, v, q)) for r in rows), q, frob)

    @property
    def v(self) -> int:
        return len(self.matrix)

    @cached_property
    def packed_rows(self) -> tuple[int, ...]:
        return tuple(pack(r, self.q) for r in self.matrix)

    def apply_vector(self, x: int) -> int:
        v, q = self.v, self.q
        if q == 2:
            y = 0
            rows = self.packed_rows
            for i in range(v):
                if x >> (v - 1 - i) & 1:
                    y ^= rows[i]
            return y
        F = build_field(q)
        add, mul = F.add_table, F.mul_table
        coords = unpack(x, v, q)
        if self.frob:
            coords = [F.frobenius(c, self.frob) for c in coords]
        acc = [0] * v
        for c, row in zip(coords, self.matrix):
            if c:
                acc = [add[a][mul[c][b]] for a, b in zip(acc, row)]
        return pack(acc, q)

    @cached_property
    def table(self) -> tuple[int, ...]:
        """Image of every packed vector (only for q**v up to TABLE_LIMIT)."""
        n = self.q**self.v
        if n > TABLE_LIMIT:
            raise InvalidArguments("ambient space too large for an image table")
        if self.q == 2:
            v = self.v
            rows = self.packed_rows
            t = [0] * n
            for x in range(1, n):
                low = x & -x
                t[x] = t[x ^ low] ^ rows[v - low.bit_length()]
            return tuple(t)
        return tuple(self.apply_vector(x) for x in range(n))

    def image(self, x: int) -> int:
        if self.q**self.v <= TABLE_LIMIT:
            return self.table[x]
        return self.apply_vector(x)

    def transpose(self) -> "SemilinearMap":
        return SemilinearMap(tuple(zip(*self.matrix)), self.q, self.frob)

    def normalized(self) -> "SemilinearMap":
        """Representative of the scalar coset whose first nonzero entry is 1."""
        lead = next(c for c in self.matrix[0] if c)
        if lead == 1:
            return self
        F = build_field(self.q)
        inv = F.inv_table[lead]
        return SemilinearMap(
            tuple(tuple(F.mul_table[inv][c] for c in row) for row in self.matrix),
            self.q,
            self.frob,
        )

    def is_scalar(self) -> bool:
        if self.frob:
            return False
        c = self.matrix[0][0]
        return all(
            self.matrix[i][j] == (c if i == j else 0) for i in range(self.v) for j in range(self.v)
        )


def compose(h: SemilinearMap, g: SemilinearMap) -> SemilinearMap:
    """The map "h, then g"."""
    if h.v != g.v or h.q != g.q:
        raise AmbientMismatch("composing maps on different spaces")
    rows = [g.apply_vector(r) for r in h.packed_rows]
    e = build_field(h.q).e
    return SemilinearMap.from_packed(rows, h.v, h.q, (h.frob + g.frob) % e)


def inverse(g: SemilinearMap) -> SemilinearMap:
    F = build_field(g.q)
    v = g.v
    aug = [list(row) + [int(i == j) for j in range(v)] for i, row in enumerate(g.matrix)]
    red = _rref_coords(aug, F)
    minv = [row[v:] for row in red]
    f = (-g.frob) % F.e
    if f:
        minv = [[F.frobenius(c, f) for c in row] for row in minv]
    return SemilinearMap(tuple(tuple(r) for r in minv), g.q, f)


def power(g: SemilinearMap, n: int) -> SemilinearMap:
    out = SemilinearMap.identity(g.v, g.q)
    for _ in range(n):
        out = compose(out, g)
    return out


def apply(g: SemilinearMap, S: Subspace) -> Subspace:
    if g.v != S.v or g.q != S.q:
        raise AmbientMismatch(f"map on F_{g.q}^{g.v} applied to a subspace of F_{S.q}^{S.v}")
    return Subspace.span([g.image(r) for r in S.rows], S.v, S.q)


@dataclass(frozen=True)
class GroupPresentation:
    v: int
    q: int
    generators: tuple[SemilinearMap, ...] = ()

    def __post_init__(self):
        for g in self.generators:
            if g.v != self.v or g.q != self.q:
                raise AmbientMismatch("generator does not act on F_%d^%d" % (self.q, self.v))

    def transpose(self) -> "GroupPresentation":
        return GroupPresentation(self.v, self.q, tuple(g.transpose() for g in self.generators))


@dataclass
class OrbitPartition:
    """Orbits of a group on a finite set of subspaces.

    ``elements`` is sorted; ``orbit_of[i]`` is the orbit of ``elements[i]``.
    Orbits are numbered by their least member, which is also the representative.
    """

    elements: list[Subspace]
    orbit_of: list[int]
    orbit_sizes: list[int]
    representatives: list[Subspace]
    _index: dict | None = field(default=None, repr=False)

    @property
    def count(self) -> int:
        return len(self.orbit_sizes)

    def orbit_id(self, S: Subspace) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self.orbit_of[self._index[S]]

    def classes(self) -> list[list[Subspace]]:
        out: list[list[Subspace]] = [[] for _ in self.orbit_sizes]
        for e, o in zip(self.elements, self.orbit_of):
            out[o].append(e)
        return out

    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.orbit_sizes).items(), reverse=True))


def _from_ids(elements: list[Subspace], ids: list[int]) -> OrbitPartition:
    sizes: list[int] = []
    reps: list[Subspace] = []
    for e, o in zip(elements, ids):
        if o == len(sizes):
            sizes.append(0)
            reps.append(e)
        sizes[o] += 1
    return OrbitPartition(elements, ids, sizes, reps)


def orbits(G: GroupPresentation, elements: Iterable[Subspace]) -> OrbitPartition:
    """Orbit partition of ``elements`` (which must be G-invariant) by BFS."""
    elems = sorted(set(elements))
    for e in elems:
        if e.v != G.v or e.q != G.q:
            raise AmbientMismatch("element outside the group's ambient space")
    if not elems:
        return OrbitPartition([], [], [], [])
    dims = {e.dim for e in elems}
    v, k = G.v, next(iter(dims))
    if G.q == 2 and len(dims) == 1 and v <= 16:
        keys = [kernels.pack_rows(e.rows, v) for e in elems]
        tables = [g.table for g in G.generators]
        ids = kernels.orbit_ids(keys, tables, v, k)
        return _from_ids(elems, ids)
    index = {e: i for i, e in enumerate(elems)}
    ids = [-1] * len(elems)
    nxt = 0
    for i in range(len(elems)):
        if ids[i] >= 0:
            continue
        ids[i] = nxt
        stack = [elems[i]]
        while stack:
            S = stack.pop()
            for g in G.generators:
                T = apply(g, S)
                j = index.get(T)
                if j is None:
                    raise ValueError("element set is not closed under the group")
                if ids[j] < 0:
                    ids[j] = nxt
                    stack.append(T)
        nxt += 1
    return _from_ids(elems, ids)


def _key(g: SemilinearMap) -> tuple:
    return g.packed_rows, g.frob


def group_elements(G: GroupPresentation, bound: int = DEFAULT_BOUND) -> list[SemilinearMap]:
    """All group elements modulo scalars, by explicit closure."""
    ident = SemilinearMap.identity(G.v, G.q)
    seen = {_key(ident): ident}
    frontier = [ident]
    gens = [g.normalized() for g in G.generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g).normalized()
                k = _key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > bound:
                        raise BoundExceeded(f"group has more than {bound} elements")
        frontier = nxt
    return list(seen.values())


def group_order(G: GroupPresentation, bound: int = DEFAULT_BOUND) -> int:
    return len(group_elements(G, bound))


def element_order(g: SemilinearMap, bound: int = DEFAULT_BOUND) -> int:
    """Order of g acting on points (smallest n with g^n scalar)."""
    x = g
    n = 1
    while not x.is_scalar():
        x = compose(x, g)
        n += 1
        if n > bound:
            raise BoundExceeded(f"element order exceeds {bound}")
    return n


def is_automorphism_group(blocks: Iterable[Subspace], G: GroupPresentation) -> bool:
    """True iff every generator maps the block multiset onto itself."""
    counts = Counter(blocks)
    for B in counts:
        if B.v != G.v or B.q != G.q:
            raise AmbientMismatch("block outside the group's ambient space")
    for g in G.generators:
        if Counter({apply(g, B): c for B, c in counts.items()}) != counts:
            return False
    return True


def census(G: GroupPresentation, k: int) -> OrbitPartition:
    from .subspace import enumerate_subspaces

    return orbits(G, enumerate_subspaces(G.v, k, G.q))


def validate_convention(G: GroupPresentation, k: int, expected: dict[int, int]) -> GroupPresentation:
    """Return G, or G with transposed generators, whichever reproduces ``expected``.

    ``expected`` maps orbit size to orbit count on the k-subspaces.
    """
    for cand in (G, G.transpose()):
        if census(cand, k).histogram() == dict(sorted(expected.items(), reverse=True)):
            return cand
    raise ValueError("neither action convention reproduces the expected orbit census")
