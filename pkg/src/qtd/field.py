"""Table-driven arithmetic in GF(q), q a prime power up to 64.

Elements are plain ints in ``range(q)``.  For q = p**e the element with
index ``c0 + c1*p + ... + c_{e-1}*p**(e-1)`` is the residue class of the
polynomial ``c0 + c1*x + ... + c_{e-1}*x**(e-1)`` modulo the fixed
irreducible polynomial listed in :data:`IRREDUCIBLE`.  Index 0 is zero and
index 1 is one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import FieldTooLarge, NotAPrimePower

MAX_ORDER = 64

# Coefficients low degree first, monic.  These are the Conway polynomials for
# every (p, e) with p**e <= 64 and e > 1, so indexing never changes.
IRREDUCIBLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 1, 1, 0, 1),  # x^6 + x^4 + x^3 + x + 1
    (3, 2): (2, 2, 1),  # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (5, 2): (2, 4, 1),  # x^2 + 4x + 2
    (7, 2): (3, 6, 1),  # x^2 + 6x + 3
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise :class:`NotAPrimePower`."""
    if not isinstance(q, int) or q < 2:
        raise NotAPrimePower(f"{q!r} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not _is_prime(p):
        raise NotAPrimePower(f"{q} is not a prime power")
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotAPrimePower(f"{q} is not a prime power")
    return p, e


@dataclass(frozen=True, eq=False)
class FieldSpec:
    q: int
    p: int
    e: int
    poly: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    neg_table: tuple[int, ...]
    inv_table: tuple[int, ...]  # inv_table[0] == 0 as a placeholder
    frob_table: tuple[int, ...]

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.q)
        return self.inv_table[x]

    def frobenius(self, x: int, times: int = 1) -> int:
        for _ in range(times % self.e):
            x = self.frob_table[x]
        return x

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _polymul_mod(a: list[int], b: list[int], poly: tuple[int, ...], p: int) -> list[int]:
    e = len(poly) - 1
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # poly is monic: x^e = -(poly[0] + ... + poly[e-1] x^{e-1})
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for i in range(e):
                prod[deg - e + i] = (prod[deg - e + i] - c * poly[i]) % p
    return prod[:e]


@lru_cache(maxsize=None)
def build_field(q: int) -> FieldSpec:
    """Build (and cache) the field of order ``q``."""
    p, e = prime_power(q)
    if q > MAX_ORDER:
        raise FieldTooLarge(f"q={q} exceeds the table bound {MAX_ORDER}")
    poly = IRREDUCIBLE.get((p, e), (0, 1))
    digits = [_digits(x, p, e) for x in range(q)]
    add = tuple(
        tuple(_undigits([(a + b) % p for a, b in zip(digits[x], digits[y])], p) for y in range(q))
        for x in range(q)
    )
    if e == 1:
        mul = tuple(tuple((x * y) % p for y in range(q)) for x in range(q))
    else:
        mul = tuple(
            tuple(_undigits(_polymul_mod(digits[x], digits[y], poly, p), p) for y in range(q))
            for x in range(q)
        )
    neg = tuple(add[x].index(0) for x in range(q))
    inv = (0,) + tuple(mul[x].index(1) for x in range(1, q))
    frob = []
    for x in range(q):
        y = 1
        for _ in range(p):
            y = mul[y][x]
        frob.append(y)
    return FieldSpec(q, p, e, poly, add, mul, neg, inv, tuple(frob))


def frobenius(x: int, spec: FieldSpec) -> int:
    """Return ``x**p``."""
    return spec.frob_table[x]
