"""The Λ_lrs tensor of a point partition, and the identities it satisfies.

Λ_lrs counts, for a point P of class l, the pairs (R, S) of points from
classes r and s with dim<P, R, S> = 2.  Two independent routes compute it:
a direct double loop over point pairs, and a contraction of the incidence
matrices of the induced decomposition on lines.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import kernels
from .action import GroupPresentation, apply, group_order, orbits
from .errors import ClassNotSingleton, GroupNotPrimeOrder, NotPIndependent
from .field import _is_prime
from .subspace import Subspace, enumerate_subspaces, gaussian_binomial, rref_packed
from .tactical import Decomposition, incidence_matrices


@dataclass
class LambdaTensor:
    values: list[list[list[int]]]
    sizes: list[int]
    v: int
    q: int

    @property
    def m(self) -> int:
        return len(self.sizes)

    def __getitem__(self, lrs: tuple[int, int, int]) -> int:
        l, r, s = lrs
        return self.values[l][r][s]

    def to_dict(self) -> dict:
        m = self.m
        entries = [
            [l, r, s, self.values[l][r][s]]
            for l in range(m)
            for r in range(m)
            for s in range(m)
            if self.values[l][r][s]
        ]
        return {"m": m, "v": self.v, "q": self.q, "class_sizes": self.sizes, "entries": entries}

    @classmethod
    def from_dict(cls, data: dict) -> "LambdaTensor":
        m = data["m"]
        if "values" in data:
            vals = [[list(row) for row in plane] for plane in data["values"]]
        else:
            vals = [[[0] * m for _ in range(m)] for _ in range(m)]
            for l, r, s, x in data.get("entries", []):
                vals[l][r][s] = x
        return cls(vals, list(data["class_sizes"]), data.get("v", 0), data.get("q", 0))


def point_classes_of(dec) -> list[list[Subspace]]:
    """Accept a Decomposition, an OrbitPartition on points, or a list of classes."""
    if isinstance(dec, Decomposition):
        return dec.point_classes
    if hasattr(dec, "classes"):
        return dec.classes()
    return [list(c) for c in dec]


def _dim_is_two(p: int, r: int, s: int, v: int, q: int) -> bool:
    return len(rref_packed((p, r, s), v, q)) == 2


def lambda_bruteforce_at(P: Subspace, r: int, s: int, dec) -> int:
    """|{(R, S) in V_r x V_s : dim<P, R, S> = 2}| by a double loop."""
    classes = point_classes_of(dec)
    p = P.rows[0]
    return sum(
        1
        for R in classes[r]
        for S in classes[s]
        if _dim_is_two(p, R.rows[0], S.rows[0], P.v, P.q)
    )


def _slice_at(p: int, classes, cls_of: dict, v: int, q: int) -> list[list[int]]:
    m = len(classes)
    if q == 2 and v <= 16:
        table = [0] * (1 << v)
        for x, c in cls_of.items():
            table[x] = c
        flat = kernels.lambda_counts(p, table, m)
        return [flat[r * m:(r + 1) * m] for r in range(m)]
    out = [[0] * m for _ in range(m)]
    pts = sorted(cls_of.items())
    for x, cr in pts:
        row = out[cr]
        for y, cs in pts:
            if _dim_is_two(p, x, y, v, q):
                row[cs] += 1
    return out


def lambda_tensor_bruteforce(
    dec, verify_p_independence: bool = False, threads: int = 1
) -> LambdaTensor:
    """Λ from one representative per class; optionally re-derive it at every point."""
    classes = point_classes_of(dec)
    v, q = classes[0][0].v, classes[0][0].q
    cls_of = {P.rows[0]: i for i, cls in enumerate(classes) for P in cls}

    def work(l: int) -> list[list[int]]:
        members = classes[l] if verify_p_independence else classes[l][:1]
        ref = _slice_at(members[0].rows[0], classes, cls_of, v, q)
        for P in members[1:]:
            got = _slice_at(P.rows[0], classes, cls_of, v, q)
            if got != ref:
                r, s = next((r, s) for r in range(len(classes)) for s in range(len(classes))
                            if got[r][s] != ref[r][s])
                raise NotPIndependent(
                    f"Λ_{l}{r}{s}: {ref[r][s]} at {members[0]!r} but {got[r][s]} at {P!r}",
                    {"l": l, "r": r, "s": s, "points": (members[0], P),
                     "values": (ref[r][s], got[r][s])},
                )
        return ref

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            values = list(pool.map(work, range(len(classes))))
    else:
        values = [work(l) for l in range(len(classes))]
    return LambdaTensor(values, [len(c) for c in classes], v, q)


@dataclass
class LinesDecomposition:
    point_classes: list[list[Subspace]]
    line_classes: list[list[Subspace]]
    rho: list[list[int]]
    kappa: list[list[int]]
    v: int
    q: int

    @property
    def omega(self) -> int:
        return len(self.line_classes)


def lines_decomposition(G: GroupPresentation, v: int | None = None, q: int | None = None) -> LinesDecomposition:
    """G-orbits on points and on all lines, with verified incidence matrices."""
    v = G.v if v is None else v
    q = G.q if q is None else q
    pts = orbits(G, enumerate_subspaces(v, 1, q)).classes()
    lines = list(enumerate_subspaces(v, 2, q))
    lcls = orbits(G, lines).classes()
    td = incidence_matrices(v, q, lines, Decomposition(pts, lcls))
    return LinesDecomposition(pts, lcls, td.rho, td.kappa, v, q)


def lambda_tensor_via_lines(ld: LinesDecomposition) -> LambdaTensor:
    """Λ_lrs = Σ_j ρ^L_lj κ^L_rj κ^L_sj, minus [v-1 1]_q when l = r = s."""
    m, w = len(ld.point_classes), ld.omega
    through = gaussian_binomial(ld.v - 1, 1, ld.q)
    rho, kap = ld.rho, ld.kappa
    vals = [[[0] * m for _ in range(m)] for _ in range(m)]
    for l in range(m):
        for r in range(m):
            for s in range(m):
                tot = sum(rho[l][j] * kap[r][j] * kap[s][j] for j in range(w))
                if l == r == s:
                    tot -= through
                vals[l][r][s] = tot
    return LambdaTensor(vals, [len(c) for c in ld.point_classes], ld.v, ld.q)


def transitive_lambda(v: int, q: int) -> int:
    """Λ_111 for a point-transitive group: q(q+2)[v-1 1]_q."""
    return q * (q + 2) * gaussian_binomial(v - 1, 1, q)


# -- structure identities ---------------------------------------------------


@dataclass
class StructureReport:
    symmetric: list = field(default_factory=list)  # Λ_lrs != Λ_lsr
    weighted: list = field(default_factory=list)  # |V_l|Λ_lrs != |V_r|Λ_rls
    sums: list = field(default_factory=list)  # row-sum identity failures

    @property
    def ok(self) -> bool:
        return not (self.symmetric or self.weighted or self.sums)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "symmetry_violations": self.symmetric,
                "weighted_symmetry_violations": self.weighted, "sum_violations": self.sums}


def expected_row_sum(tensor: LambdaTensor, l: int, r: int) -> int:
    q, v, sz = tensor.q, tensor.v, tensor.sizes
    if l != r:
        return sz[r] * (q + 1)
    return sz[l] * (q + 1) + (q**v - q**2) // (q - 1) - 1


def structure_report(tensor: LambdaTensor) -> StructureReport:
    rep = StructureReport()
    m, sz, L = tensor.m, tensor.sizes, tensor.values
    for l in range(m):
        for r in range(m):
            for s in range(m):
                if L[l][r][s] != L[l][s][r]:
                    rep.symmetric.append([l, r, s])
                if sz[l] * L[l][r][s] != sz[r] * L[r][l][s]:
                    rep.weighted.append([l, r, s])
            want = expected_row_sum(tensor, l, r)
            got = sum(L[l][r])
            if got != want:
                rep.sums.append([l, r, got, want])
    return rep


# -- prime-order groups -----------------------------------------------------


@dataclass
class OmegaPartition:
    point: Subspace
    l: int
    p: int
    classes: list[list[int]]  # fixed-line classes first, then line-orbit classes
    a: int  # number of fixed-line classes
    carriers: list[Subspace]  # the fixed line, or least line of the orbit


def _prime_order(G: GroupPresentation) -> int:
    p = group_order(G)
    if not _is_prime(p):
        raise GroupNotPrimeOrder(f"group order {p} is not prime")
    return p


def omega_partition(dec, l: int, G: GroupPresentation) -> OmegaPartition:
    classes = point_classes_of(dec)
    if len(classes[l]) != 1:
        raise ClassNotSingleton(f"point class {l} has {len(classes[l])} points")
    p = _prime_order(G)
    P = classes[l][0]
    v, q = P.v, P.q

    def line_key(Q: Subspace):
        line = Subspace.span(P.rows + Q.rows, v, q)
        if all(apply(g, line) == line for g in G.generators):
            return (0, line)
        orb = {line}
        stack = [line]
        while stack:
            x = stack.pop()
            for g in G.generators:
                y = apply(g, x)
                if y not in orb:
                    orb.add(y)
                    stack.append(y)
        return (1, min(orb))

    groups: dict = {}
    for i, cls in enumerate(classes):
        if i == l:
            continue
        keys = {line_key(Q) for Q in cls}
        if len(keys) != 1:
            raise ValueError(f"point class {i} is spread over several line classes through P")
        groups.setdefault(keys.pop(), []).append(i)
    ordered = sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    a = sum(1 for key, _ in ordered if key[0] == 0)
    return OmegaPartition(
        P, l, p, [ids for _, ids in ordered], a, [key[1] for key, _ in ordered]
    )


def lambda_from_omega(om: OmegaPartition, dec) -> list[list[int]]:
    """The slice Λ_l.. predicted by the Ω classes."""
    classes = point_classes_of(dec)
    m, l = len(classes), om.l
    sz = [len(c) for c in classes]
    where = {}
    for idx, ids in enumerate(om.classes):
        for i in ids:
            where[i] = idx
    out = [[0] * m for _ in range(m)]
    for r in range(m):
        for s in range(m):
            if r == l and s == l:
                val = 0
            elif r == l:
                val = sz[s]
            elif s == l:
                val = sz[r]
            elif where[r] != where[s]:
                val = 0
            elif where[r] < om.a:
                val = sz[r] * sz[s]
            else:
                val = om.p
            out[r][s] = val
    return out


def fixed_point_slices_ok(tensor: LambdaTensor, p: int) -> list:
    """(l, r, s, value) with |V_l| = 1 and value outside {0, 1, p, p^2}."""
    allowed = {0, 1, p, p * p}
    bad = []
    for l in range(tensor.m):
        if tensor.sizes[l] != 1:
            continue
        for r in range(tensor.m):
            for s in range(tensor.m):
                if tensor.values[l][r][s] not in allowed:
                    bad.append([l, r, s, tensor.values[l][r][s]])
    return bad


def within_prime_bound(value: int, p: int) -> bool:
    """value == p^2, or value <= p*sqrt(p - 3/4) + p/2 (exact integer test)."""
    if value == p * p:
        return True
    d = 2 * value - p
    return d <= 0 or d * d <= p * p * (4 * p - 3)


def prime_bound(p: int) -> float:
    return p * (p - 0.75) ** 0.5 + p / 2


@dataclass
class BoundReport:
    p: int
    violations: list  # [l, r, s, value] with r != l and s != l
    degenerate: list = field(default_factory=list)  # over the bound with l in {r, s}

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"p": self.p, "bound": prime_bound(self.p), "ok": self.ok,
                "violations": self.violations, "degenerate_exceptions": self.degenerate}


def check_prime_bound(tensor: LambdaTensor, p: int) -> BoundReport:
    """Test every entry against the prime-order bound.

    The counting argument behind the bound looks at lines through P meeting
    V_r and V_s away from P, so it covers r != l and s != l.  When l is r or
    s, pairs with R = P or S = P inflate the count (a size-3 orbit spanning a
    line over GF(2) gives Λ_lll = 8 for p = 3); such entries are listed as
    ``degenerate`` and do not fail the report.
    """
    rep = BoundReport(p, [])
    for l in range(tensor.m):
        for r in range(tensor.m):
            for s in range(tensor.m):
                x = tensor.values[l][r][s]
                if within_prime_bound(x, p):
                    continue
                (rep.degenerate if l in (r, s) else rep.violations).append([l, r, s, x])
    return rep
