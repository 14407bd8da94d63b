import pytest
from hypothesis import given, settings, strategies as st

from belltrace.arith import InvalidArgument, Unsupported, k_p, tau, zeta_exponent
from belltrace.ffield import (
    FieldContext,
    artin_schreier_context,
    cyclotomic_context,
    frobenius,
    norm,
    pow_big,
    prime_field_context,
    solve_artin_schreier,
    theta,
    trace,
    trace_via_coefficient,
)


def test_f4_relations():
    th = theta(2)
    assert th**2 == th + 1
    assert pow_big(th, 3) == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_defining_relation_and_norm_one(p):
    th = theta(p)
    assert pow_big(th, p) == th + 1
    assert frobenius(th) == th + 1
    assert pow_big(th, k_p(p)) == 1
    assert norm(th) == 1


def test_trace_values_p5():
    th = theta(5)
    assert [trace(pow_big(th, j)) for j in range(4)] == [0, 0, 0, 0]
    assert trace(pow_big(th, 4)) == 4 == trace(pow_big(th, -1))
    assert trace_via_coefficient(pow_big(th, 4)) == 4
    assert trace_via_coefficient(artin_schreier_context(5).one) == 0
    assert trace_via_coefficient(pow_big(th, 7)) == 0


def test_trace_against_conjugate_sum_by_powering():
    # independent of the Taylor-shift Frobenius: raise to p^i directly
    p = 5
    ctx = artin_schreier_context(p)
    for k in (1, 17, 400, 3124):
        e = ctx.element_from_index(k)
        acc = ctx.zero
        for i in range(p):
            acc = acc + pow_big(e, p**i)
        assert acc.to_int() == trace(e)


@settings(max_examples=60)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_trace_properties(p, data):
    ctx = artin_schreier_context(p)
    e1 = ctx.element_from_index(data.draw(st.integers(0, ctx.order - 1)))
    e2 = ctx.element_from_index(data.draw(st.integers(0, ctx.order - 1)))
    c = data.draw(st.integers(0, p - 1))
    assert trace(e1) == trace_via_coefficient(e1)
    assert trace(e1 + e2 * c) == (trace(e1) + c * trace(e2)) % p
    assert trace(frobenius(e1)) == trace(e1)
    assert norm(e1 * e2) == norm(e1) * norm(e2) % p


def test_pow_big_conventions():
    th = theta(3)
    assert pow_big(th, 0) == 1
    assert pow_big(th, 13) == 1
    assert pow_big(theta(5), -1) * theta(5) == 1
    with pytest.raises(ZeroDivisionError):
        pow_big(artin_schreier_context(3).zero, -1)


def test_exponent_reductions_agree():
    for p in (2, 3, 5, 7, 11, 13):
        th = theta(p)
        k = k_p(p)
        for a in range(1, 7):
            if a % p == 0:
                continue
            z = zeta_exponent(p, a)
            assert pow_big(th, z) == pow_big(th, p**a * tau(p, a))
            assert pow_big(th, z) == pow_big(th, z % k)
            assert trace(pow_big(th, z)) == trace(pow_big(th, tau(p, a)))


def test_trace_via_coefficient_needs_artin_schreier_context():
    ctx, _ = cyclotomic_context(3, 4)
    with pytest.raises(InvalidArgument):
        trace_via_coefficient(ctx.one)


def test_reducible_modulus_rejected():
    with pytest.raises(InvalidArgument):
        FieldContext(3, [2, 0, 1])  # t^2 - 1
    FieldContext(3, [1, 0, 1])  # t^2 + 1 is irreducible mod 3


def test_cyclotomic_contexts():
    ctx, z = cyclotomic_context(3, 2)
    assert ctx.absolute_degree == 1 and z == 2
    ctx, z = cyclotomic_context(3, 4)
    assert ctx.order == 9 and z * z == -1
    ctx, z = cyclotomic_context(5, 1)
    assert ctx.order == 5 and z == 1
    with pytest.raises(Unsupported):
        cyclotomic_context(5, 5)


def _check_roots(sol, c, p):
    roots = sol.roots()
    assert len({tuple(sol.field.to_vector(r)) for r in roots}) == p
    for r in roots:
        assert frobenius(r) - r == c
    return roots


def test_solve_artin_schreier_split_and_irreducible():
    f3 = prime_field_context(3)
    sol = solve_artin_schreier(f3, 0)
    assert sol.split and sorted(r.to_int() for r in sol.roots()) == [0, 1, 2]

    sol = solve_artin_schreier(prime_field_context(5), 1)
    assert not sol.split and sol.field.is_artin_schreier
    _check_roots(sol, 1, 5)

    ctx, z4 = cyclotomic_context(3, 4)
    sol = solve_artin_schreier(ctx, z4)
    assert sol.split and sol.field is ctx
    _check_roots(sol, z4, 3)


def test_solve_artin_schreier_tower():
    ctx, z3 = cyclotomic_context(5, 3)  # F_25, trace of zeta_3 is -1
    sol = solve_artin_schreier(ctx, z3)
    assert not sol.split and sol.field.base == ctx
    assert sol.field.absolute_degree == 10
    roots = _check_roots(sol, sol.field.embed(z3), 5)
    assert all(r - roots[0] == j for j, r in enumerate(roots))
