"""Exact number theory for (2,m,n)-groups.

Euler characteristics are exact rationals; factorization is trial division
to ``TRIAL_BOUND`` followed by deterministic Miller-Rabin and Pollard-Brent
on 64-bit cofactors.  Anything larger is reported as unfactored rather than
guessed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

TRIAL_BOUND = 10 ** 6
FACTOR_BOUND = 1 << 64
PPD_BUDGET = 1 << 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# The bases above are a proof of primality below this bound.
_MR_DETERMINISTIC = 3317044064679887385961981


class ArithError(ValueError):
    pass


class BudgetError(ArithError):
    pass


@lru_cache(maxsize=1)
def small_primes(limit: int = TRIAL_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n: int) -> bool:
    """Strong-pseudoprime test to the first 13 prime bases.

    This is a proof below ``3.3e24`` and a very strong heuristic above.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    if n >= _MR_DETERMINISTIC:
        raise BudgetError(f"{n} is beyond the deterministic primality range")
    return is_probable_prime(n)


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithError(f"Pollard-Brent failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> tuple[dict[int, int], int]:
    """Factor ``|n|``.

    Returns ``(factors, cofactor)`` where ``cofactor`` is 1 when the
    factorization is complete and otherwise the unfactored remainder.
    """
    n = abs(n)
    if n == 0:
        raise ArithError("cannot factor zero")
    factors: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if n == 1:
        return factors, 1
    if n <= TRIAL_BOUND ** 2:
        factors[n] = factors.get(n, 0) + 1
        return factors, 1
    if n < FACTOR_BOUND:
        _split(n, factors)
        return dict(sorted(factors.items())), 1
    if n < _MR_DETERMINISTIC and is_prime(n):
        factors[n] = factors.get(n, 0) + 1
        return factors, 1
    return factors, n


def prime_factors(n: int) -> list[int]:
    factors, rest = factorize(n)
    if rest != 1:
        raise BudgetError(f"could not fully factor {n}")
    return sorted(factors)


def p_part(x: int, p: int) -> tuple[int, int]:
    """Split ``x`` as ``(x_p, x_p')`` with ``x_p`` the largest power of p dividing x."""
    if x < 1:
        raise ArithError("p_part needs x >= 1")
    if not is_prime(p):
        raise ArithError(f"{p} is not prime")
    xp = 1
    while x % p == 0:
        x //= p
        xp *= p
    return xp, x


def prime_power_root(n: int) -> tuple[int, int] | None:
    """``(r, k)`` with ``n == r**k`` and r prime, or None."""
    if n < 2:
        return None
    for k in range(n.bit_length(), 0, -1):
        r = _iroot(n, k)
        if r ** k == n and r >= 2 and is_probable_prime(r):
            return r, k
    return None


def _iroot(n: int, k: int) -> int:
    if k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


# -- Euler characteristic --------------------------------------------------------

@dataclass(frozen=True)
class EulerResult:
    order: int
    m: int
    n: int
    chi: Fraction
    integral: bool
    factorization: tuple[tuple[int, int], ...] = ()
    unfactored: int = 1
    two_prime_form: tuple[int, int, int] | None = None

    @property
    def value(self) -> int:
        if not self.integral:
            raise ArithError(f"chi = {self.chi} is not an integer")
        return int(self.chi)

    def formatted(self) -> str:
        if not self.integral:
            return str(self.chi)
        return format_prime_power(int(self.chi), self.factorization, self.unfactored)

    def as_dict(self) -> dict:
        return {
            "order": str(self.order),
            "m": self.m,
            "n": self.n,
            "chi": str(self.chi),
            "integral": self.integral,
            "factorization": [[str(p), e] for p, e in self.factorization],
            "unfactored": str(self.unfactored),
            "two_prime_form": list(self.two_prime_form) if self.two_prime_form else None,
            "formatted": self.formatted(),
        }


def euler_characteristic(order: int, m: int, n: int) -> EulerResult:
    """``order * (1/m - 1/2 + 1/n)`` computed exactly."""
    if order < 1:
        raise ArithError("group order must be positive")
    if m < 2 or n < 2:
        raise ArithError("element orders m, n must be at least 2")
    chi = Fraction(order * (2 * n - m * n + 2 * m), 2 * m * n)
    if chi.denominator != 1:
        return EulerResult(order, m, n, chi, False)
    value = int(chi)
    if value == 0:
        return EulerResult(order, m, n, chi, True)
    factors, rest = factorize(value)
    fac = tuple(sorted(factors.items()))
    tpf = None if rest != 1 else _two_prime_form(factors)
    return EulerResult(order, m, n, chi, True, fac, rest, tpf)


def _two_prime_form(factors: dict[int, int]) -> tuple[int, int, int] | None:
    if len(factors) != 2 or 2 not in factors:
        return None
    s = max(factors)
    return factors[2], s, factors[s]


def two_prime_form(chi: int) -> tuple[int, int, int] | None:
    """``(a, s, b)`` when ``|chi| = 2^a s^b`` with s an odd prime and a, b >= 1."""
    if chi == 0:
        raise ArithError("two_prime_form needs a nonzero value")
    factors, rest = factorize(chi)
    if rest != 1:
        return None
    return _two_prime_form(factors)


def format_prime_power(value: int, factorization=None, unfactored: int = 1) -> str:
    if value == 0:
        return "0"
    if factorization is None:
        f, unfactored = factorize(value)
        factorization = tuple(sorted(f.items()))
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in factorization]
    if unfactored != 1:
        parts.append(f"[{unfactored}]")
    body = "*".join(parts) if parts else "1"
    return ("-" if value < 0 else "") + body


_TERM = re.compile(r"^(\d+)(?:\^\{?(\d+)\}?)?$")


def parse_prime_power(text: str) -> int:
    """Evaluate strings such as ``-2^5*3``, ``-2^{10}·3^2`` or ``-96``."""
    s = text.strip().replace("−", "-").replace("·", "*").replace("\\cdot", "*")
    s = s.replace(" ", "")
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    if not s:
        raise ArithError(f"empty expression {text!r}")
    value = 1
    for term in s.split("*"):
        mt = _TERM.match(term)
        if not mt:
            raise ArithError(f"cannot parse term {term!r} in {text!r}")
        value *= int(mt.group(1)) ** int(mt.group(2) or 1)
    return sign * value


# -- Zsigmondy ------------------------------------------------------------------

def cyclotomic_value(a: int, q: int) -> int:
    """Phi_a(q) via Moebius inversion of q^d - 1 over divisors d of a."""
    num, den = 1, 1
    for d in range(1, a + 1):
        if a % d == 0:
            mu = _mobius(a // d)
            if mu == 1:
                num *= q ** d - 1
            elif mu == -1:
                den *= q ** d - 1
    return num // den


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def multiplicative_order(q: int, t: int) -> int:
    if math.gcd(q, t) != 1:
        raise ArithError(f"{q} is not a unit modulo {t}")
    k = t - 1 if is_probable_prime(t) else None
    if k is None:
        k, x = 1, q % t
        while x != 1:
            x = x * q % t
            k += 1
        return k
    for r in prime_factors(k):
        while k % r == 0 and pow(q, k // r, t) == 1:
            k //= r
    return k


def zsigmondy_ppd(q: int, a: int, budget: int = PPD_BUDGET) -> int | None:
    """Least primitive prime divisor of ``q^a - 1``, or None if there is none."""
    if q < 2 or a < 2:
        raise ArithError("need q >= 2 and a >= 2")
    phi = cyclotomic_value(a, q)
    if phi > budget:
        raise BudgetError(f"Phi_{a}({q}) = {phi} exceeds the factorization budget")
    factors, rest = factorize(phi)
    ppds = [t for t in sorted(factors) if q % t and multiplicative_order(q, t) == a]
    if ppds:
        return ppds[0]
    if rest != 1:
        raise BudgetError(f"unfactored cofactor {rest} of Phi_{a}({q})")
    return None


def is_zsigmondy_exception(q: int, a: int) -> bool:
    if (a, q) == (6, 2):
        return True
    return a == 2 and ((q + 1) & q) == 0


# -- Catalan / Mihailescu ---------------------------------------------------------

CATALAN_Q9 = "q=9-exception"
CATALAN_PRIME = "prime-forced"
CATALAN_FREE = "unconstrained"


def catalan_constraint(q: int) -> str:
    """Classify the prime power q against the forms 2^a +- 1 (a >= 1)."""
    root = prime_power_root(q)
    if root is None:
        raise ArithError(f"{q} is not a prime power")
    p, k = root
    near = any(q in (2 ** a - 1, 2 ** a + 1) for a in range(1, q.bit_length() + 2))
    if not near:
        return CATALAN_FREE
    if k == 1:
        return CATALAN_PRIME
    if q == 9:
        return CATALAN_Q9
    raise ArithError(f"{q} = {p}^{k} contradicts Mihailescu's theorem")


# -- PSL_2(2^x) scan ------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    x: int
    q: int
    chi: int
    derived: int          # q^2 - 4q - 1, recovered from chi
    printed: int          # q^2 - 4q + 1
    odd_part: int
    odd_factorization: tuple[tuple[int, int], ...]
    flagged: bool
    printed_prime_power: bool
    certified: bool = True

    def as_dict(self) -> dict:
        return {
            "x": self.x, "q": str(self.q), "chi": str(self.chi),
            "derived_poly": str(self.derived), "printed_poly": str(self.printed),
            "odd_part": str(self.odd_part),
            "odd_factorization": [[str(p), e] for p, e in self.odd_factorization],
            "flagged": self.flagged, "printed_prime_power": self.printed_prime_power,
            "certified": self.certified,
        }


def scan_psl2_even(x_max: int) -> list[ScanRow]:
    """chi of PSL_2(q), q = 2^x, with {m, n} = {q+1, q-1} for 2 <= x <= x_max."""
    if not 2 <= x_max <= 63:
        raise ArithError("x_max must lie in 2..63")
    rows = []
    for x in range(2, x_max + 1):
        q = 1 << x
        res = euler_characteristic(q * (q * q - 1), q + 1, q - 1)
        chi = res.value
        if (-2 * chi) % q:
            raise ArithError(f"chi at q={q} is not divisible by q/2")
        derived = -2 * chi // q
        odd = abs(chi)
        while odd % 2 == 0:
            odd //= 2
        certified = odd < _MR_DETERMINISTIC
        factors, rest = factorize(odd) if odd > 1 else ({}, 1)
        if rest != 1:
            certified = False
        flagged = odd > 1 and prime_power_root(odd) is not None
        printed = q * q - 4 * q + 1
        rows.append(ScanRow(x, q, chi, derived, printed, odd, tuple(sorted(factors.items())),
                            flagged, prime_power_root(printed) is not None, certified))
    return rows
