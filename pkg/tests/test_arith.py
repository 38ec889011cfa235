from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from triverify.arith import (ArithError, BudgetError, catalan_constraint, cyclotomic_value,
                             euler_characteristic, factorize, format_prime_power, is_prime,
                             is_zsigmondy_exception, multiplicative_order, p_part,
                             parse_prime_power, prime_power_root, scan_psl2_even, two_prime_form,
                             zsigmondy_ppd)


@pytest.mark.parametrize("order,m,n,expected", [
    (720, 5, 6, "-2^5*3"),
    (60, 3, 6, "0"),
    (5040, 10, 7, "-2^4*3^4"),
    (5616, 4, 13, "-2^2*3^5"),
    (15600, 6, 13, "-2^5*5^3"),
    (25920, 5, 6, "-2^7*3^3"),
    (60, 3, 5, "2"),
])
def test_chi_examples(order, m, n, expected):
    r = euler_characteristic(order, m, n)
    assert r.formatted() == expected
    assert r.value == parse_prime_power(expected)


def test_chi_non_integral_and_errors():
    r = euler_characteristic(7, 3, 5)
    assert not r.integral and r.chi == Fraction(7 * (10 - 15 + 6), 30)
    with pytest.raises(ArithError):
        r.value
    with pytest.raises(ArithError):
        euler_characteristic(0, 3, 5)
    with pytest.raises(ArithError):
        euler_characteristic(60, 1, 5)


@given(st.integers(1, 10 ** 12), st.integers(2, 60), st.integers(2, 60))
def test_chi_exact(order, m, n):
    r = euler_characteristic(order, m, n)
    assert r.chi == order * (Fraction(1, m) - Fraction(1, 2) + Fraction(1, n))


def test_two_prime_form():
    assert two_prime_form(-96) == (5, 3, 1)
    assert two_prime_form(-2 ** 12 * 3 ** 6) == (12, 3, 6)
    assert two_prime_form(-2 * 3 * 5) is None
    assert two_prime_form(-81) is None


@given(st.integers(-10 ** 15, 10 ** 15).filter(bool))
def test_format_parse_round_trip(v):
    assert parse_prime_power(format_prime_power(v)) == v


def test_parse_variants():
    assert parse_prime_power("−2^{10}·3^2") == -9216
    assert parse_prime_power(r"-2^5\cdot 3") == -96
    with pytest.raises(ArithError):
        parse_prime_power("-2^x")


@settings(max_examples=200)
@given(st.integers(2, 10 ** 18))
def test_factorize_matches_sympy(n):
    f, rest = factorize(n)
    assert rest == 1
    assert f == sympy.factorint(n)


def test_factorize_semiprime():
    p, q = 2147483647, 4294967291
    assert factorize(p * q) == ({p: 1, q: 1}, 1)


@given(st.integers(0, 10 ** 20))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_budget():
    with pytest.raises(BudgetError):
        is_prime(10 ** 30 + 1)


def test_p_part():
    assert p_part(720, 2) == (16, 45)
    assert p_part(7, 3) == (1, 7)
    assert prime_power_root(3 ** 7) == (3, 7)
    assert prime_power_root(12) is None


def brute_ppd(q, a):
    cands = [t for t in sympy.primefactors(q ** a - 1)
             if all((q ** i - 1) % t for i in range(1, a))]
    return min(cands) if cands else None


@pytest.mark.parametrize("q,a,expected", [(2, 6, None), (2, 4, 5), (4, 3, 7), (3, 2, None), (7, 2, None)])
def test_ppd_examples(q, a, expected):
    assert zsigmondy_ppd(q, a) == expected


@settings(deadline=None)
@given(st.integers(2, 50), st.integers(2, 12))
def test_ppd_matches_oracle(q, a):
    t = zsigmondy_ppd(q, a)
    assert t == brute_ppd(q, a)
    assert (t is None) == is_zsigmondy_exception(q, a)
    if t is not None:
        assert multiplicative_order(q, t) == a


def test_ppd_budget():
    with pytest.raises(BudgetError):
        zsigmondy_ppd(128, 13)
    assert zsigmondy_ppd(128, 13, budget=2 ** 90) == brute_ppd(128, 13)


def test_cyclotomic_value():
    assert cyclotomic_value(6, 2) == 3
    assert cyclotomic_value(12, 3) == 73


def test_catalan():
    assert catalan_constraint(9) == "q=9-exception"
    assert catalan_constraint(17) == "prime-forced"
    assert catalan_constraint(25) == "unconstrained"
    with pytest.raises(ArithError):
        catalan_constraint(10)


def test_scan_small():
    rows = {r.x: r for r in scan_psl2_even(8)}
    assert not rows[2].flagged and rows[2].odd_part == 1
    assert rows[3].flagged and rows[3].odd_part == 31
    assert rows[4].derived == 191 and rows[4].printed == 193
    assert rows[4].flagged and rows[4].printed_prime_power
    for r in rows.values():
        assert r.derived == r.q * r.q - 4 * r.q - 1
        assert r.chi == -r.q * r.derived // 2


def test_scan_matches_sympy():
    for r in scan_psl2_even(20):
        fac = sympy.factorint(r.odd_part)
        assert r.flagged == (r.odd_part > 1 and len(fac) == 1)
        assert r.printed_prime_power == (len(sympy.factorint(r.printed)) == 1)


def test_scan_range():
    with pytest.raises(ArithError):
        scan_psl2_even(1)
