"""Tactical decompositions and their incidence matrices."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .action import GroupPresentation, OrbitPartition, is_automorphism_group, orbits
from .design import QDesign
from .errors import InvalidArguments, NotAnAutomorphismGroup, NotTactical
from .subspace import Subspace, enumerate_subspaces, gaussian_binomial


@dataclass
class Decomposition:
    """Point classes V_1..V_m and block classes B_1..B_n.

    Block classes list blocks with multiplicity.  The orbit partitions are
    kept when the decomposition is group-induced.
    """

    point_classes: list[list[Subspace]]
    block_classes: list[list[Subspace]]
    point_orbits: OrbitPartition | None = None
    block_orbits: OrbitPartition | None = None

    @property
    def m(self) -> int:
        return len(self.point_classes)

    @property
    def n(self) -> int:
        return len(self.block_classes)

    @property
    def point_sizes(self) -> list[int]:
        return [len(c) for c in self.point_classes]

    @property
    def block_sizes(self) -> list[int]:
        return [len(c) for c in self.block_classes]


@dataclass
class TDMatrices:
    rho: list[list[int]]
    kappa: list[list[int]]
    point_sizes: list[int]
    block_sizes: list[int]

    @property
    def m(self) -> int:
        return len(self.rho)

    @property
    def n(self) -> int:
        return len(self.block_sizes)

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "kappa": self.kappa,
            "point_sizes": self.point_sizes,
            "block_sizes": self.block_sizes,
        }


def induced_decomposition(d: QDesign, G: GroupPresentation) -> Decomposition:
    if not is_automorphism_group(d.blocks, G):
        raise NotAnAutomorphismGroup("the group does not preserve the block multiset")
    p = d.params
    pts = orbits(G, enumerate_subspaces(p.v, 1, p.q))
    mult = Counter(d.blocks)
    blk = orbits(G, mult)
    block_classes = [[B for B in cls for _ in range(mult[B])] for cls in blk.classes()]
    return Decomposition(pts.classes(), block_classes, pts, blk)


def singleton_decomposition(d: QDesign) -> Decomposition:
    p = d.params
    return Decomposition(
        [[P] for P in enumerate_subspaces(p.v, 1, p.q)], [[B] for B in sorted(d.blocks)]
    )


def coarsest_decomposition(d: QDesign) -> Decomposition:
    p = d.params
    return Decomposition([list(enumerate_subspaces(p.v, 1, p.q))], [sorted(d.blocks)])


def _check_partitions(v: int, q: int, blocks: Iterable[Subspace], dec: Decomposition) -> None:
    seen: set = set()
    for cls in dec.point_classes:
        if not cls:
            raise InvalidArguments("empty point class")
        for P in cls:
            if P.dim != 1 or P.v != v or P.q != q:
                raise InvalidArguments(f"{P!r} is not a point of F_{q}^{v}")
            if P in seen:
                raise InvalidArguments(f"point {P!r} lies in two classes")
            seen.add(P)
    if len(seen) != gaussian_binomial(v, 1, q):
        raise InvalidArguments("point classes do not cover every point")
    if any(not cls for cls in dec.block_classes):
        raise InvalidArguments("empty block class")
    if Counter(B for cls in dec.block_classes for B in cls) != Counter(blocks):
        raise InvalidArguments("block classes do not partition the design's blocks")


def incidence_matrices(
    v: int, q: int, blocks: Sequence[Subspace], dec: Decomposition
) -> TDMatrices:
    """rho/kappa for any block collection, verifying class constancy."""
    _check_partitions(v, q, blocks, dec)
    m, n = dec.m, dec.n
    cls_of = {}
    for i, cls in enumerate(dec.point_classes):
        for P in cls:
            cls_of[P.rows[0]] = i
    per_point: dict[int, list[int]] = {x: [0] * n for x in cls_of}
    kappa: list[list[int] | None] = [None] * n
    for j, bcls in enumerate(dec.block_classes):
        first_block = None
        for B in bcls:
            counts = [0] * m
            for x in B.points():
                counts[cls_of[x]] += 1
                per_point[x][j] += 1
            if first_block is None:
                kappa[j] = counts
                first_block = B
            elif counts != kappa[j]:
                i = next(i for i in range(m) if counts[i] != kappa[j][i])
                raise NotTactical(
                    f"blocks {first_block!r} and {B!r} of class {j} meet point class {i} "
                    f"in {kappa[j][i]} and {counts[i]} points",
                    {"block_class": j, "point_class": i, "members": (first_block, B),
                     "counts": (kappa[j][i], counts[i])},
                )
    rho = []
    for i, cls in enumerate(dec.point_classes):
        row = per_point[cls[0].rows[0]]
        for P in cls[1:]:
            other = per_point[P.rows[0]]
            if other != row:
                j = next(j for j in range(n) if other[j] != row[j])
                raise NotTactical(
                    f"points {cls[0]!r} and {P!r} of class {i} lie on {row[j]} and "
                    f"{other[j]} blocks of class {j}",
                    {"point_class": i, "block_class": j, "members": (cls[0], P),
                     "counts": (row[j], other[j])},
                )
        rho.append(list(row))
    kap = [[kappa[j][i] for j in range(n)] for i in range(m)]
    return TDMatrices(rho, kap, dec.point_sizes, dec.block_sizes)


def td_matrices(d: QDesign, dec: Decomposition) -> TDMatrices:
    return incidence_matrices(d.params.v, d.params.q, d.blocks, dec)
