from math import comb, factorial as exact_factorial, gcd

import pytest
from hypothesis import given, settings, strategies as st

from belltrace.arith import (
    InvalidArgument,
    ModInt,
    binomial,
    factorial,
    is_prime,
    k_p,
    legendre,
    power_sum,
    primes_between,
    tau,
    zeta_exponent,
)


def _trial_division(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if _trial_division(n)]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


@pytest.mark.parametrize("a,p,want", [(1, 5, 1), (3, 5, -1), (2, 7, 1), (0, 7, 0), (14, 7, 0)])
def test_legendre_examples(a, p, want):
    assert legendre(a, p) == want


def test_legendre_against_squares():
    for p in primes_between(3, 31):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)


def test_legendre_multiplicative():
    for p in primes_between(3, 31):
        for a in range(1, p):
            for b in range(1, p):
                assert legendre(a, p) * legendre(b, p) == legendre(a * b, p)


@pytest.mark.parametrize("p", [2, 4, 9])
def test_legendre_rejects_non_odd_primes(p):
    with pytest.raises(InvalidArgument):
        legendre(1, p)


def test_tau_and_kp_examples():
    assert (tau(2, 1), tau(3, 1), tau(5, 1)) == (1, 7, 586)
    assert (k_p(2), k_p(3), k_p(5)) == (3, 13, 781)
    for p in primes_between(2, 23):
        assert (p - 1) * k_p(p) == p**p - 1


def test_zeta_exponent_examples():
    assert zeta_exponent(3, 1) == 21
    assert zeta_exponent(3, 1) % 13 == 8 == 3 * tau(3, 1) % 13
    assert zeta_exponent(2, 1) == 2 == 2 * tau(2, 1)
    with pytest.raises(InvalidArgument):
        zeta_exponent(5, 10)


def test_inverse_lemma_and_tau_parity():
    for p in primes_between(2, 31):
        k = k_p(p)
        for a in range(1, 13):
            if a % p == 0:
                continue
            assert tau(p, a) * (p**a - 1) % k == 1 % k
            z = zeta_exponent(p, a)
            assert z == p**a * tau(p, a)
            assert z * (p**a - 1) % k == p**a % k
            if p > 2:
                assert tau(p, a) % (p - 1) == (p - 1) // 2


def test_power_sum_examples_and_case_split():
    assert power_sum(4, 5) == 4 and power_sum(2, 5) == 0 and power_sum(0, 5) == 0
    for p in primes_between(2, 97):
        for j in range(2 * (p - 1) + 1):
            want = p - 1 if j > 0 and j % (p - 1) == 0 else 0
            assert int(power_sum(j, p)) == want == sum(m**j for m in range(p)) % p


def test_binomial_and_factorial_examples():
    assert binomial(4, 2, 5) == 1
    assert factorial(3, 7) == 6
    assert binomial(7, 1, 7) == 0


@given(st.integers(0, 3000), st.integers(0, 3000), st.sampled_from([2, 3, 5, 7, 13, 97]))
def test_lucas_binomial_matches_exact(n, k, p):
    k = min(k, n + 3)
    assert int(binomial(n, k, p)) == (comb(n, k) % p if k <= n else 0)


@given(st.integers(0, 200), st.integers(1, 500))
def test_factorial_matches_exact(n, m):
    assert int(factorial(n, m)) == exact_factorial(n) % m


@settings(max_examples=200)
@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), st.integers(2, 10**6))
def test_modint_ring_laws(a, b, m):
    x, y = ModInt(a, m), ModInt(b, m)
    assert int(x + y) == (a + b) % m
    assert int(x * y) == a * b % m
    assert int(x - y) == (a - b) % m
    if gcd(a, m) == 1:
        assert x * x.inverse() == 1
