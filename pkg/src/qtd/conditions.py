"""Necessary conditions on tactical decomposition matrices.

Three equation systems, each returned as a :class:`ConditionReport`:

* ``basic``: column sums of κ, row sums of ρ, and |V_i|ρ_ij = |B_j|κ_ij;
* ``quadratic``: Σ_j ρ_lj κ_rj for every (l, r), valid for t >= 2;
* ``cubic``: Σ_j ρ_lj κ_rj κ_sj for every (l, r, s), valid for t = 3,
  with right-hand sides depending on the Λ tensor.

All arithmetic is on ints.  Derived lambdas must be integral; otherwise
:class:`~qtd.errors.LambdaNotInteger` is raised, which is itself a
nonexistence certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .design import QDesignParams, lambda_int
from .errors import InvalidArguments, TensorShapeMismatch
from .lambdas import LambdaTensor
from .subspace import gaussian_binomial
from .tactical import TDMatrices

DEFAULT_CAP = 100


@dataclass
class ConditionReport:
    system: str
    violations: list = field(default_factory=list)
    total: int = 0  # number of violations, including those past the cap

    @property
    def passed(self) -> bool:
        return self.total == 0

    def add(self, cap: int, indices, lhs: int, rhs: int) -> None:
        self.total += 1
        if len(self.violations) < cap:
            self.violations.append({"indices": list(indices), "lhs": lhs, "rhs": rhs})

    def to_dict(self) -> dict:
        return {"system": self.system, "pass": self.passed, "violation_count": self.total,
                "violations": self.violations}


def quadratic_rhs(params: QDesignParams, sizes: list[int], l: int, r: int) -> int:
    lam1, lam2 = lambda_int(params, 1), lambda_int(params, 2)
    if l == r:
        return lam1 + lam2 * (sizes[r] - 1)
    return lam2 * sizes[r]


def cubic_rhs(params: QDesignParams, sizes: list[int], tensor: LambdaTensor, l: int, r: int, s: int) -> int:
    lam1, lam2, lam3 = (lambda_int(params, i) for i in (1, 2, 3))
    L = tensor.values[l][r][s]
    if l == r == s:
        return lam1 + L * lam2 + (sizes[l] ** 2 - L - 1) * lam3
    return L * lam2 + (sizes[r] * sizes[s] - L) * lam3


def check_basic(params: QDesignParams, td: TDMatrices, cap: int = DEFAULT_CAP) -> ConditionReport:
    rep = ConditionReport("basic")
    lam1 = lambda_int(params, 1)
    col = gaussian_binomial(params.k, 1, params.q)
    m, n = td.m, td.n
    for j in range(n):
        tot = sum(td.kappa[i][j] for i in range(m))
        if tot != col:
            rep.add(cap, ["kappa_col", j], tot, col)
    for i in range(m):
        tot = sum(td.rho[i])
        if tot != lam1:
            rep.add(cap, ["rho_row", i], tot, lam1)
    for i in range(m):
        for j in range(n):
            a = td.point_sizes[i] * td.rho[i][j]
            b = td.block_sizes[j] * td.kappa[i][j]
            if a != b:
                rep.add(cap, ["balance", i, j], a, b)
    return rep


def check_quadratic(params: QDesignParams, td: TDMatrices, cap: int = DEFAULT_CAP) -> ConditionReport:
    if params.t < 2:
        raise InvalidArguments("the quadratic system needs t >= 2")
    rep = ConditionReport("quadratic")
    m, n = td.m, td.n
    for l in range(m):
        for r in range(m):
            lhs = sum(td.rho[l][j] * td.kappa[r][j] for j in range(n))
            rhs = quadratic_rhs(params, td.point_sizes, l, r)
            if lhs != rhs:
                rep.add(cap, [l, r], lhs, rhs)
    return rep


def check_cubic(
    params: QDesignParams, td: TDMatrices, tensor: LambdaTensor, cap: int = DEFAULT_CAP
) -> ConditionReport:
    if params.t != 3:
        raise InvalidArguments("the cubic system needs t = 3")
    if tensor.m != td.m or list(tensor.sizes) != list(td.point_sizes):
        raise TensorShapeMismatch(
            f"tensor over {tensor.m} classes {tensor.sizes} vs matrices over {td.m} {td.point_sizes}"
        )
    rep = ConditionReport("cubic")
    m, n = td.m, td.n
    rho, kap = td.rho, td.kappa
    for l in range(m):
        for r in range(m):
            for s in range(m):
                lhs = sum(rho[l][j] * kap[r][j] * kap[s][j] for j in range(n))
                rhs = cubic_rhs(params, td.point_sizes, tensor, l, r, s)
                if lhs != rhs:
                    rep.add(cap, [l, r, s], lhs, rhs)
    return rep


def check_all(params: QDesignParams, td: TDMatrices, tensor: LambdaTensor | None = None,
              cap: int = DEFAULT_CAP) -> list[ConditionReport]:
    out = [check_basic(params, td, cap)]
    if params.t >= 2:
        out.append(check_quadratic(params, td, cap))
    if params.t == 3 and tensor is not None:
        out.append(check_cubic(params, td, tensor, cap))
    return out
