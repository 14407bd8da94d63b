from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from belltrace import bell
from belltrace.arith import InvalidArgument, Unsupported
from belltrace.polyring import (
    DensePolynomial as P,
    NotInvertible,
    TruncatedSeries,
    deformation_identity,
    deformation_sides,
    gf_bell,
    gf_stirling,
    rationality_congruence,
    rationality_modulus,
    render,
    separable_factorization,
    series_of_rational,
    touchard_from_rationality,
    verify_mezo,
)


def test_fibonacci_series():
    s = series_of_rational(P([1], "z"), P([1, -1, -1], "z"), 10)
    assert s.coeffs == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    assert str(s) == "[1,1,2,3,5,8,13,21,34,55]+O(z^10)"


def test_series_needs_unit_constant_term():
    with pytest.raises(NotInvertible):
        series_of_rational(P([1], "z"), P([0, 1], "z"), 5)
    with pytest.raises(NotInvertible):
        series_of_rational(P([1], "z", 4), P([2, 1], "z", 4), 5)
    with pytest.raises(InvalidArgument):
        TruncatedSeries([1], 0)


@settings(max_examples=80)
@given(st.lists(st.integers(-9, 9), max_size=8), st.lists(st.integers(-9, 9), max_size=6),
       st.sampled_from([None, 7, 9]), st.integers(1, 16))
def test_series_times_denominator_is_numerator(num, tail, m, prec):
    den = P([1] + tail, "z", m)
    numer = P(num, "z", m)
    s = series_of_rational(numer, den, prec)
    back = s * den
    assert back == TruncatedSeries(numer.coeffs, prec, "z", m)


def test_gf_stirling_j2():
    s = gf_stirling(2, 6)
    assert [render(c) for c in s.coeffs] == [
        "0", "0", "1", "3*l + 3", "6*l^2 + 12*l + 7", "10*l^3 + 30*l^2 + 35*l + 15",
    ]
    # at lambda = 0 these are S(n, 2) = 2^(n-1) - 1
    s0 = gf_stirling(2, 12, lam=0)
    assert s0.coeffs[2:] == [2 ** (n - 1) - 1 for n in range(2, 12)]


@pytest.mark.parametrize("j", [0, 1, 3, 5])
def test_gf_stirling_matches_recurrence(j):
    s = gf_stirling(j, 12)
    for n in range(12):
        assert s[n] == bell.weighted_stirling(n, j)


def test_gf_bell_first_terms():
    g = gf_bell(8)
    assert [render(c) for c in g.coeffs[:3]] == ["1", "x + l", "x^2 + 2*x*l + l^2 + x"]
    for n in range(8):
        assert g[n] == bell.bell_poly(n)


def test_gf_bell_mod_p_matches_exact():
    g = gf_bell(10, lam=2, modulus=7)
    for n in range(10):
        assert g[n] == bell.bell_poly(n, lam=2, modulus=7)


def test_convolution_form():
    for n in range(13):
        assert render(bell.bell_by_convolution(n)) == render(bell.bell_poly(n))


def test_mezo_exponential_form():
    assert verify_mezo(6, 6).holds
    # dropping a term must be caught
    res = verify_mezo(6, 6, skip_terms=(2,))
    assert not res.holds and res.witness[:2] == (0, 2)
    assert verify_mezo(1, 10).holds  # x^0 slice is 1/(1 - lam z)


def test_mezo_dropped_first_term():
    from belltrace.polyring import _bell_series, mezo_rhs

    res = verify_mezo(3, 3, skip_terms=(1,))
    # the first mismatch in z order is already at z^0 x^1
    assert not res.holds and res.witness == (0, 1, "0", "[-1]")
    lhs = _bell_series(3, x_degree=3, rational=True)
    rhs = mezo_rhs(3, 3, skip_terms=(1,))
    assert not (lhs[1][1] == rhs[1][1])  # and x^1 z^1 differs as well


def test_rationality_moduli():
    assert rationality_modulus(3, None) == 3
    assert rationality_modulus(5, 5) == 25
    assert rationality_modulus(2, 2) == 2
    assert rationality_modulus(1, 7) == 7


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rationality_proof_variant_symbolic(n):
    assert rationality_congruence(n, 30).holds


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rationality_proof_variant_np_form(p, n):
    for r in range(3):
        assert rationality_congruence(n, 30, p=p, r=r).holds


def test_rationality_display_variant():
    # the first form with products ending one early is only right for n = 1
    assert rationality_congruence(1, 20, variant="display").holds
    res = rationality_congruence(2, 20, variant="display")
    assert not res.holds and res.witness == (1, 0, "[]", "[0,1]")
    # the np-form without the (1 - (r + np) z) factor needs r = 0 mod p
    assert rationality_congruence(1, 20, p=5, r=0, variant="display").holds
    assert not rationality_congruence(1, 20, p=5, r=1, variant="display").holds


def test_rationality_argument_errors():
    with pytest.raises(InvalidArgument):
        rationality_congruence(0)
    with pytest.raises(InvalidArgument):
        rationality_congruence(1, 10, p=5)
    with pytest.raises(InvalidArgument):
        rationality_congruence(1, 10, variant="other")


@pytest.mark.parametrize("p", [3, 5, 7])
def test_touchard_from_rational_form(p):
    assert touchard_from_rationality(p).holds


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 3)])
def test_deformation_reflection(p, n):
    assert deformation_identity(p, n)
    lhs, rhs = deformation_sides(p, n)
    assert not lhs.is_zero() and lhs.modulus == p


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 4), (5, 2), (7, 3), (5, 4)])
def test_separable_factorization(p, n):
    assert separable_factorization(p, n)


def test_separable_needs_n_prime_to_p():
    with pytest.raises(Unsupported):
        separable_factorization(5, 5)


def test_render_normal_form():
    assert render(P([], "x")) == "0"
    assert render(P([1, P([0, 2], "l")], "x")) == "2*x*l + 1"
    assert render(7) == "7"
    assert render(P([Fraction(1, 2), 0, 1], "x")) == "x^2 + 1/2"
    # the same value nested either way renders the same
    a = P([P([0, 1], "l"), 1], "x")  # x + l
    b = P([P([0, 1], "x"), 1], "l")  # l + x
    assert render(a) == render(b) == "x + l"


def test_polynomial_arithmetic_basics():
    x = P.gen("x")
    f = (x + 1) ** 3
    assert f.coeffs == (1, 3, 3, 1)
    assert (f - x ** 3).degree == 2
    assert P([5, 10], "x", 5).is_zero()
    with pytest.raises(InvalidArgument):
        P([1], "x", 3) + P([1], "x", 5)
