"""Small finite fields with table-driven arithmetic.

Elements of ``F_q`` are the integers ``0..q-1``; for ``q = p^k`` the integer
with base-``p`` digits ``a_0 + a_1 p + ...`` stands for ``a_0 + a_1 x + ...``
modulo the stored irreducible polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidField

__all__ = ["FiniteField", "CONWAY", "field_of_order", "prime_power"]

# Conway polynomials, coefficients low degree first, for p^k <= 64 with k > 1.
CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """``(p, k)`` with ``q == p**k``; raises :class:`InvalidField` otherwise."""
    if q < 2:
        raise InvalidField("field order must be at least 2, got %d" % q)
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise InvalidField("%d is not a prime power" % q)
    return p, k


def _polymulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    k = len(mod) - 1
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
    return prod[:k] + [0] * (k - len(prod[:k]))


def is_irreducible(mod: tuple[int, ...], p: int) -> bool:
    """Brute force: no monic factor of degree <= deg/2 (fine for p^k <= 64)."""
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for code in range(p ** d):
            f = [(code // p ** i) % p for i in range(d)] + [1]
            # polynomial remainder of mod by f
            r = list(mod)
            for top in range(len(r) - 1, d - 1, -1):
                c = r[top]
                if c:
                    for j in range(d + 1):
                        r[top - d + j] = (r[top - d + j] - c * f[j]) % p
            if not any(r[:d]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None
    add: tuple = field(init=False, repr=False)
    mul: tuple = field(init=False, repr=False)
    neg: tuple = field(init=False, repr=False)
    inv: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if not _is_prime(self.p) or self.k < 1:
            raise InvalidField("need a prime p and k >= 1, got p=%r k=%r" % (self.p, self.k))
        p, k = self.p, self.k
        mod = self.modulus
        if k > 1:
            if mod is None:
                if (p, k) not in CONWAY:
                    raise InvalidField("no stored modulus for GF(%d^%d)" % (p, k))
                mod = CONWAY[(p, k)]
            mod = tuple(mod)
            if len(mod) != k + 1 or mod[-1] != 1 or not is_irreducible(mod, p):
                raise InvalidField("modulus %s is not monic irreducible of degree %d" % (mod, k))
            object.__setattr__(self, "modulus", mod)
        q = p ** k

        def digits(a):
            return [(a // p ** i) % p for i in range(k)]

        def number(ds):
            return sum(d * p ** i for i, d in enumerate(ds))

        if k == 1:
            add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
            mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
        else:
            dig = [digits(a) for a in range(q)]
            add = tuple(
                tuple(number([(x + y) % p for x, y in zip(dig[a], dig[b])]) for b in range(q))
                for a in range(q)
            )
            mul = tuple(
                tuple(number(_polymulmod(dig[a], dig[b], mod, p)) for b in range(q))
                for a in range(q)
            )
        neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
        inv = tuple([0] + [next(b for b in range(1, q) if mul[a][b] == 1) for a in range(1, q)])
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "neg", neg)
        object.__setattr__(self, "inv", inv)

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def order(self) -> int:
        return self.q

    def elements(self) -> range:
        return range(self.q)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return "GF(%d)" % self.q


@lru_cache(maxsize=None)
def field_of_order(q: int) -> FiniteField:
    p, k = prime_power(q)
    return FiniteField(p, k)
