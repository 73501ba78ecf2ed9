"""Candidate tactical decomposition matrices and admissible lambda values."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from .action import GroupPresentation, OrbitPartition, census
from .conditions import check_all, cubic_rhs, quadratic_rhs
from .design import DesignReport, QDesign, QDesignParams, block_count, lambda_int, verify_design
from .errors import InvalidArguments, ProblemTooLarge, TensorShapeMismatch
from .lambdas import LambdaTensor
from .subspace import gaussian_binomial
from .tactical import TDMatrices

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**8
PROGRESS_EVERY = 10**6
SYMMETRY_LIMIT = 10**6


@dataclass
class SearchProblem:
    params: QDesignParams
    point_sizes: list[int]
    block_sizes: list[int]
    tensor: LambdaTensor

    def __post_init__(self):
        p = self.params
        if sum(self.point_sizes) != gaussian_binomial(p.v, 1, p.q):
            raise InvalidArguments("point class sizes do not add up to the number of points")
        if sum(self.block_sizes) != block_count(p):
            raise InvalidArguments(
                f"block class sizes add up to {sum(self.block_sizes)}, expected {block_count(p)}"
            )
        if self.tensor.m != len(self.point_sizes) or list(self.tensor.sizes) != list(self.point_sizes):
            raise TensorShapeMismatch("tensor class sizes differ from the point class sizes")

    @property
    def m(self) -> int:
        return len(self.point_sizes)

    @property
    def n(self) -> int:
        return len(self.block_sizes)


@dataclass(frozen=True)
class CandidateMatrix:
    rho: tuple[tuple[int, ...], ...]
    kappa: tuple[tuple[int, ...], ...]

    def td(self, prob: SearchProblem) -> TDMatrices:
        return TDMatrices([list(r) for r in self.rho], [list(r) for r in self.kappa],
                          list(prob.point_sizes), list(prob.block_sizes))

    def to_dict(self) -> dict:
        return {"rho": [list(r) for r in self.rho], "kappa": [list(r) for r in self.kappa]}


def _kappa(prob: SearchProblem, rho) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(prob.point_sizes[i] * x // prob.block_sizes[j] for j, x in enumerate(row))
        for i, row in enumerate(rho)
    )


# -- symmetry --------------------------------------------------------------


def row_symmetries(prob: SearchProblem, limit: int = SYMMETRY_LIMIT) -> list[tuple[int, ...]]:
    """Permutations of the point classes preserving class sizes and Λ."""
    m, sz, L = prob.m, prob.point_sizes, prob.tensor.values
    out: list[tuple[int, ...]] = []
    perm = [-1] * m
    used = [False] * m

    def consistent(a: int) -> bool:
        pa = perm[a]
        for x in range(a + 1):
            for y in range(a + 1):
                px, py = perm[x], perm[y]
                if (L[pa][px][py] != L[a][x][y] or L[px][pa][py] != L[x][a][y]
                        or L[px][py][pa] != L[x][y][a]):
                    return False
        return True

    def rec(a: int) -> None:
        if a == m:
            out.append(tuple(perm))
            if len(out) > limit:
                raise ProblemTooLarge(f"more than {limit} point-class symmetries")
            return
        for b in range(m):
            if not used[b] and sz[b] == sz[a]:
                perm[a] = b
                used[b] = True
                if consistent(a):
                    rec(a + 1)
                used[b] = False
        perm[a] = -1

    rec(0)
    return out


def _column_groups(block_sizes: list[int]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for j, b in enumerate(block_sizes):
        groups.setdefault(b, []).append(j)
    return list(groups.values())


def _sort_columns(rows: list[tuple[int, ...]], groups: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    cols = list(zip(*rows)) if rows else []
    out = list(cols)
    for pos in groups:
        for j, c in zip(pos, sorted((cols[j] for j in pos), reverse=True)):
            out[j] = c
    return tuple(zip(*out))


def canonical_form(prob: SearchProblem, rho, symmetries=None) -> tuple[tuple[int, ...], ...]:
    """Greatest matrix (row-major) equivalent to rho under the allowed symmetries."""
    syms = row_symmetries(prob) if symmetries is None else symmetries
    groups = _column_groups(prob.block_sizes)
    rho = [tuple(r) for r in rho]
    return max(_sort_columns([rho[pi[a]] for a in range(prob.m)], groups) for pi in syms)


# -- pruned backtracking -----------------------------------------------------


def _allowed_values(prob: SearchProblem, lam1: int, col_total: int) -> list[list[list[int]]]:
    out = []
    for i, vi in enumerate(prob.point_sizes):
        row = []
        for bj in prob.block_sizes:
            vals = []
            for x in range(min(lam1, bj) + 1):
                if (vi * x) % bj:
                    continue
                kap = vi * x // bj
                if kap <= min(col_total, vi):
                    vals.append(x)
            row.append(vals)
        out.append(row)
    return out


def _raw_solutions(prob: SearchProblem, node_budget: int) -> list[tuple[tuple[int, ...], ...]]:
    p = prob.params
    m, n = prob.m, prob.n
    lam1 = lambda_int(p, 1)
    check_quad = p.t >= 2
    check_cub = p.t == 3
    K = gaussian_binomial(p.k, 1, p.q)
    Vs, Bs = prob.point_sizes, prob.block_sizes
    allowed = _allowed_values(prob, lam1, K)
    kap_of = [[{x: Vs[i] * x // Bs[j] for x in allowed[i][j]} for j in range(n)] for i in range(m)]
    # largest row sum still reachable from column j onwards
    row_cap = [[sum(max(allowed[i][jj]) for jj in range(j, n)) for j in range(n + 1)] for i in range(m)]
    # largest kappa column sum still reachable from row i onwards
    col_cap = [[sum(max(kap_of[ii][j].values()) for ii in range(i, m)) for j in range(n)]
               for i in range(m + 1)]
    prev = [-1] * n
    for pos in _column_groups(Bs):
        for a, b in zip(pos, pos[1:]):
            prev[b] = a

    quad_rhs = {}
    cub_rhs = {}
    if check_quad:
        quad_rhs = {(l, r): quadratic_rhs(p, Vs, l, r) for l in range(m) for r in range(m)}
    if check_cub:
        cub_rhs = {(l, r, s): cubic_rhs(p, Vs, prob.tensor, l, r, s)
                   for l in range(m) for r in range(m) for s in range(m)}

    rho = [[0] * n for _ in range(m)]
    kap = [[0] * n for _ in range(m)]
    colsum = [0] * n
    tied = [[True] * n]  # tied[i][j]: columns prev[j] and j equal on rows < i
    solutions = []
    nodes = 0

    def row_ok(i: int) -> bool:
        if check_quad:
            for l in range(i + 1):
                for a, b in ((l, i), (i, l)):
                    if sum(rho[a][j] * kap[b][j] for j in range(n)) != quad_rhs[(a, b)]:
                        return False
        if check_cub:
            for l in range(i + 1):
                for r in range(i + 1):
                    for s in range(i + 1):
                        if i not in (l, r, s):
                            continue
                        tot = sum(rho[l][j] * kap[r][j] * kap[s][j] for j in range(n))
                        if tot != cub_rhs[(l, r, s)]:
                            return False
        return True

    def rec(i: int, j: int, rowsum: int) -> None:
        nonlocal nodes
        if j == n:
            if rowsum != lam1 or not row_ok(i):
                return
            if i == m - 1:
                solutions.append(tuple(tuple(r) for r in rho))
                return
            tie = tied[i]
            tied.append([prev[c] >= 0 and tie[c] and rho[i][prev[c]] == rho[i][c] for c in range(n)])
            rec(i + 1, 0, 0)
            tied.pop()
            return
        last = i == m - 1
        for x in allowed[i][j]:
            s = rowsum + x
            if s > lam1:
                break
            if s + row_cap[i][j + 1] < lam1:
                continue
            if prev[j] >= 0 and tied[i][j] and x > rho[i][prev[j]]:
                break
            k = kap_of[i][j][x]
            c = colsum[j] + k
            if c > K:
                break
            if last and c != K:
                continue
            if c + col_cap[i + 1][j] < K:
                continue
            nodes += 1
            if nodes > node_budget:
                raise ProblemTooLarge(f"search exceeded the node budget of {node_budget}")
            if nodes % PROGRESS_EVERY == 0:
                log.info("search: %d nodes, %d raw solutions", nodes, len(solutions))
            rho[i][j] = x
            kap[i][j] = k
            colsum[j] = c
            rec(i, j + 1, s)
            colsum[j] -= k
        rho[i][j] = 0
        kap[i][j] = 0

    if m and n:
        rec(0, 0, 0)
    return solutions


def enumerate_candidates(
    prob: SearchProblem, node_budget: int = DEFAULT_NODE_BUDGET
) -> Iterator[CandidateMatrix]:
    """Every solution of the three systems, one per symmetry class.

    Columns with equal block-class size are interchangeable and point classes
    may be permuted by any symmetry of (sizes, Λ).  Candidates come out in
    decreasing order of their canonical ρ.
    """
    raw = _raw_solutions(prob, node_budget)
    syms = row_symmetries(prob)
    canon = sorted({canonical_form(prob, r, syms) for r in raw}, reverse=True)
    for rho in canon:
        yield CandidateMatrix(rho, _kappa(prob, rho))


def enumerate_bruteforce(prob: SearchProblem, entry_max: int | None = None) -> set:
    """All solution matrices (no symmetry reduction) with entries in [0, entry_max].

    Only row-local equations (row sum, κ integrality, the (l, l) and (l, l, l)
    equations) filter rows before the full product is checked, since any
    matrix violating one of them fails the full systems anyway.
    """
    p = prob.params
    m, n = prob.m, prob.n
    lam1 = lambda_int(p, 1)
    entry_max = lam1 if entry_max is None else entry_max
    Vs, Bs = prob.point_sizes, prob.block_sizes
    rows_ok = []
    for i in range(m):
        good = []
        for row in itertools.product(range(entry_max + 1), repeat=n):
            if sum(row) != lam1 or any((Vs[i] * x) % Bs[j] for j, x in enumerate(row)):
                continue
            kr = [Vs[i] * x // Bs[j] for j, x in enumerate(row)]
            if p.t >= 2 and sum(a * b for a, b in zip(row, kr)) != quadratic_rhs(p, Vs, i, i):
                continue
            if p.t == 3 and sum(a * b * b for a, b in zip(row, kr)) != cubic_rhs(p, Vs, prob.tensor, i, i, i):
                continue
            good.append(row)
        rows_ok.append(good)
    out = set()
    for rho in itertools.product(*rows_ok):
        td = TDMatrices([list(r) for r in rho], [list(r) for r in _kappa(prob, rho)],
                        list(Vs), list(Bs))
        if all(rep.passed for rep in check_all(p, td, prob.tensor)):
            out.add(tuple(rho))
    return out


# -- point-transitive groups: admissible lambda -------------------------------


@dataclass
class AdmissibleReport:
    rho: list[int]
    excluded: list[dict]  # orbits with non-integral rho
    modulus: int
    exceptional: list[int]
    congruence: list[int]
    feasible: list[int]
    lambda_trivial: int | None

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "excluded_orbits": self.excluded,
            "modulus": self.modulus,
            "exceptional_rho": self.exceptional,
            "congruence_admissible": self.congruence,
            "subset_sum_feasible": self.feasible,
            "lambda_trivial": self.lambda_trivial,
        }


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for x in values:
        g = gcd(g, x)
    return g


def admissible_lambda(
    orbit_sizes: list[int], t: int, v: int, k: int, q: int, lambda_max: int
) -> AdmissibleReport:
    """λ in [1, lambda_max] compatible with a point-transitive group.

    The design is a union of block orbits, so λ_1 must be a sum of distinct
    orbit values ρ_j = |B_j|·[k 1]_q/[v 1]_q.  Two filters are reported:

    * congruence: with M the gcd of all ρ_j but at most one exceptional
      value (chosen to make M largest), λ_1 mod M must be a subset sum of the
      exceptional values mod M;
    * feasible: λ_1 is exactly a subset sum of the multiset {ρ_j}.
    """
    npts, kpts = gaussian_binomial(v, 1, q), gaussian_binomial(k, 1, q)
    rho, excluded = [], []
    for j, size in enumerate(orbit_sizes):
        if (size * kpts) % npts:
            excluded.append({"orbit": j, "size": size, "reason": "non-integral rho"})
        else:
            rho.append(size * kpts // npts)

    best_mod, best_exc = _gcd_all(rho), []
    for x in sorted(set(rho)):
        rest = list(rho)
        rest.remove(x)
        g = _gcd_all(rest)
        if g > best_mod and g and x % g:
            best_mod, best_exc = g, [x]
    mod = best_mod or 1
    residues = {0}
    for x in best_exc:
        residues |= {(r + x) % mod for r in residues}

    reach = 1
    for x in rho:
        reach |= reach << x

    num = gaussian_binomial(v - 1, t - 1, q)
    den = gaussian_binomial(k - 1, t - 1, q)
    congruence, feasible = [], []
    for lam in range(1, lambda_max + 1):
        if (lam * num) % den:
            continue
        lam1 = lam * num // den
        if lam1 % mod in residues:
            congruence.append(lam)
        if reach >> lam1 & 1:
            feasible.append(lam)
    trivial = gaussian_binomial(v - t, k - t, q) if k >= t else None
    return AdmissibleReport(rho, excluded, mod, best_exc, congruence, feasible, trivial)


# -- realization ---------------------------------------------------------------


def realize_design(
    G: GroupPresentation,
    params: QDesignParams,
    selection: Iterable[int],
    block_orbits: OrbitPartition | None = None,
) -> tuple[QDesign, DesignReport]:
    """Union of the selected k-subspace orbits, verified as a t-design."""
    if block_orbits is None:
        block_orbits = census(G, params.k)
    classes = block_orbits.classes()
    blocks = []
    for j in sorted(set(selection)):
        if not 0 <= j < len(classes):
            raise InvalidArguments(f"no block orbit {j}")
        blocks.extend(classes[j])
    d = QDesign(params, tuple(blocks))
    return d, verify_design(d)
