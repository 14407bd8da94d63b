"""Compiled kernels against the pure-Python ones and a naive oracle."""
import pytest
from hypothesis import given, settings, strategies as st

from belltrace import _kernels_py as pure
from belltrace import kernels

compiled = kernels.compiled
needs_compiled = pytest.mark.skipif(compiled is None, reason="extension not built")

PRIMES = [2, 3, 5, 7, 13, 61, 97, 65521]


def naive_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return [v % p for v in out]


def naive_mod(r, mod, p):
    r = list(r)
    d = len(mod) - 1
    for k in range(len(r) - 1, d - 1, -1):
        q = r[k]
        for i in range(d + 1):
            r[k - d + i] -= q * mod[i]
    out = [v % p for v in r[:d]]
    return out + [0] * (d - len(out))


@st.composite
def poly_case(draw, max_len=24):
    p = draw(st.sampled_from(PRIMES))
    coeff = st.integers(0, p - 1)
    a = draw(st.lists(coeff, min_size=1, max_size=max_len))
    b = draw(st.lists(coeff, min_size=1, max_size=max_len))
    return p, a, b


@given(poly_case())
def test_pure_poly_mul_matches_naive(case):
    p, a, b = case
    assert pure.poly_mul(a, b, p) == naive_mul(a, b, p)


@needs_compiled
@given(poly_case())
def test_compiled_poly_mul_matches_pure(case):
    p, a, b = case
    assert compiled.poly_mul(a, b, p) == pure.poly_mul(a, b, p)


@needs_compiled
@settings(max_examples=60)
@given(poly_case(), st.integers(2, 20), st.integers(0, 10**40))
def test_trinomial_kernels_agree(case, d, e):
    p, a, b = case
    c = (a[0] + 1) % p
    mod = [(-c) % p, p - 1] + [0] * (d - 2) + [1]
    want = naive_mod(naive_mul(a, b, p), mod, p)
    assert pure.trinomial_mulmod(a, b, d, c, p) == want
    assert compiled.trinomial_mulmod(a, b, d, c, p) == want
    assert compiled.trinomial_powmod(a, e, d, c, p) == pure.trinomial_powmod(a, e, d, c, p)


@needs_compiled
@settings(max_examples=60)
@given(poly_case(), st.lists(st.integers(0, 96), min_size=1, max_size=12), st.integers(0, 10**30))
def test_general_modulus_kernels_agree(case, low, e):
    p, a, b = case
    mod = [v % p for v in low] + [1]
    want = naive_mod(naive_mul(a, b, p), mod, p)
    assert pure.mulmod(a, b, mod, p) == want
    assert compiled.mulmod(a, b, mod, p) == want
    assert compiled.powmod(a, e, mod, p) == pure.powmod(a, e, mod, p)


@given(poly_case(), st.integers(0, 10**6))
def test_taylor_shift(case, c):
    p, a, _ = case
    c %= p
    # evaluate a(t + c) at a few points and compare with a at the shifted points
    for t in range(min(p, 5)):
        lhs = sum(v * t**i for i, v in enumerate(pure.taylor_shift(a, c, p))) % p
        rhs = sum(v * (t + c) ** i for i, v in enumerate(a)) % p
        assert lhs == rhs
    if compiled is not None:
        assert compiled.taylor_shift(a, c, p) == pure.taylor_shift(a, c, p)


def test_powmod_small_exponents_by_repeated_product():
    p, d, c = 5, 5, 1
    base = [2, 0, 1, 3, 4]
    acc = [1, 0, 0, 0, 0]
    for e in range(12):
        assert kernels.trinomial_powmod(base, e, d, c, p) == acc
        acc = kernels.trinomial_mulmod(acc, base, d, c, p)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        kernels.trinomial_powmod([1, 1], -1, 2, 1, 3)


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
