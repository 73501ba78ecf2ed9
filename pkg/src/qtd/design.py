"""q-designs: parameters, derived lambdas, exhaustive verification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import AmbientMismatch, InvalidArguments, LambdaNotInteger
from .subspace import (
    Subspace,
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    subspaces_of,
)


@dataclass(frozen=True)
class QDesignParams:
    t: int
    v: int
    k: int
    q: int
    lambda_t: int

    def __post_init__(self):
        if not (self.v > self.k > 1 and self.k >= self.t >= 1 and self.lambda_t >= 1):
            raise InvalidArguments(
                f"need v > k > 1, k >= t >= 1, lambda >= 1; got "
                f"t={self.t} v={self.v} k={self.k} lambda={self.lambda_t}"
            )

    def __str__(self):
        return f"{self.t}-({self.v},{self.k},{self.lambda_t})_{self.q}"


def lambda_s(params: QDesignParams, s: int) -> Fraction:
    """lambda_s = lambda_t * [v-s, t-s]_q / [k-s, t-s]_q, exactly."""
    if not 0 <= s <= params.t:
        raise InvalidArguments(f"s={s} outside [0, {params.t}]")
    t, v, k, q = params.t, params.v, params.k, params.q
    return Fraction(
        params.lambda_t * gaussian_binomial(v - s, t - s, q), gaussian_binomial(k - s, t - s, q)
    )


def lambda_int(params: QDesignParams, s: int) -> int:
    """lambda_s as an int; a fractional value certifies that no design exists."""
    val = lambda_s(params, s)
    if val.denominator != 1:
        raise LambdaNotInteger(f"lambda_{s} = {val} is not an integer for {params}", s, val)
    return int(val)


def block_count(params: QDesignParams) -> int:
    return lambda_int(params, 0)


@dataclass(frozen=True)
class QDesign:
    params: QDesignParams
    blocks: tuple[Subspace, ...]  # multiset; order irrelevant

    def __post_init__(self):
        p = self.params
        for B in self.blocks:
            if B.v != p.v or B.q != p.q:
                raise AmbientMismatch(f"block {B!r} is not in F_{p.q}^{p.v}")
            if B.dim != p.k:
                raise InvalidArguments(f"block {B!r} has dimension {B.dim}, expected {p.k}")


def blocks_through(d: QDesign, S: Subspace) -> list[Subspace]:
    return [B for B in d.blocks if contains(B, S)]


@dataclass
class DesignReport:
    ok: bool
    params: QDesignParams
    checked: int
    witness: Subspace | None = None
    witness_count: int | None = None
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "params": str(self.params),
            "t_subspaces_checked": self.checked,
            "witness": None if self.witness is None else [list(r) for r in self.witness.basis],
            "witness_count": self.witness_count,
            "message": self.message,
        }


def t_subspace_counts(blocks: Iterable[Subspace], t: int) -> Counter:
    counts: Counter = Counter()
    for B, mult in Counter(blocks).items():
        for T in subspaces_of(B, t):
            counts[T] += mult
    return counts


def verify_design(d: QDesign, t: int | None = None, lam: int | None = None) -> DesignReport:
    """Check that every t-subspace lies in exactly lambda_t blocks.

    ``t`` and ``lam`` override the parameters (used for the s < t reduction).
    """
    p = d.params
    t = p.t if t is None else t
    lam = p.lambda_t if lam is None else lam
    counts = t_subspace_counts(d.blocks, t)
    n = 0
    for T in enumerate_subspaces(p.v, t, p.q):
        n += 1
        c = counts.get(T, 0)
        if c != lam:
            return DesignReport(
                False, p, n, T, c, f"{t}-subspace {T!r} lies in {c} blocks, expected {lam}"
            )
    return DesignReport(True, p, n, message=f"every {t}-subspace lies in {lam} blocks")


def trivial_design(v: int, k: int, q: int, t: int) -> QDesign:
    """All k-subspaces of F_q^v, a t-design with lambda_t = [v-t, k-t]_q."""
    params = QDesignParams(t, v, k, q, gaussian_binomial(v - t, k - t, q))
    return QDesign(params, tuple(enumerate_subspaces(v, k, q)))
