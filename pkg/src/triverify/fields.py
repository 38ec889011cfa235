"""Finite fields GF(p^k) with elements encoded as integers.

An element ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` (residue modulo the
field's modulus) is stored as the integer ``sum(c_i * p**i)``, so ``0`` and
``1`` are the zero and the one, and the prime subfield is ``range(p)``.
Multiplication goes through log/antilog tables.
"""

from __future__ import annotations

import functools
import itertools

MAX_FIELD_ORDER = 1 << 20


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    # a, b have length k; mod is monic of degree k, coefficients low to high.
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return prod[:k]


def _is_irreducible(mod: list[int], p: int) -> bool:
    """Brute-force irreducibility: no monic factor of degree <= k/2."""
    k = len(mod) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            div = list(coeffs) + [1]
            if _poly_rem_is_zero(mod, div, p):
                return False
    return True


def _poly_rem_is_zero(num: list[int], den: list[int], p: int) -> bool:
    r = list(num)
    dd = len(den) - 1
    for d in range(len(r) - 1, dd - 1, -1):
        c = r[d]
        if c:
            for i in range(dd + 1):
                r[d - dd + i] = (r[d - dd + i] - c * den[i]) % p
    return not any(r[:dd])


def canonical_modulus(p: int, k: int) -> list[int]:
    """Least monic irreducible of degree k, ordering by the integer code of
    its lower coefficients.  Coefficients are returned low to high."""
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        if k > 1 and low[0] == 0:
            continue
        mod = low + [1]
        if _is_irreducible(mod, p):
            return mod
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class GF:
    """The field of order ``p**k``.  Use :func:`field` to get a cached instance."""

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        q = p ** k
        if q > MAX_FIELD_ORDER:
            raise FieldError(f"field order {q} exceeds cap {MAX_FIELD_ORDER}")
        self.p, self.k, self.q = p, k, q
        self.modulus = canonical_modulus(p, k)
        self._build_tables()

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _undigits(self, d: list[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(d))

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        self._add = [[self._undigits([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])
                      for b in range(q)] for a in range(q)] if q <= 1024 else None
        self._neg = [self._undigits([(-x) % p for x in self._digits(a)]) for a in range(q)]
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            gd = self._digits(g)
            cur = gd
            while self._undigits(cur) != 1:
                exp.append(self._undigits(cur))
                cur = _poly_mulmod(cur, gd, self.modulus, p)
                if len(exp) > q:
                    break
            if len(exp) == q - 1:
                break
        else:
            raise FieldError(f"no primitive element found in GF({q})")
        self.primitive = exp[1] if q > 2 else 1
        self._exp = exp
        self._log = {v: i for i, v in enumerate(exp)}

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p ** (times % self.k))

    def log(self, a: int) -> int:
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    return GF(p, k)


def field_of_order(q: int) -> GF:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            r = q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise FieldError(f"{q} is not a prime power")
            return field(p, k)
    raise FieldError(f"{q} is not a prime power")
