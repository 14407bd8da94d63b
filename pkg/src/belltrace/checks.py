"""Statement checkers.

Every checker returns :class:`VerificationRecord` objects whose two sides
are rendered independently; a record passes exactly when the strings agree.
Prefixes such as ``vanish:`` tag records of different kinds that share the
same parameters.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, gcd, prod

from . import bell, polyring
from .arith import (
    InvalidArgument,
    Unsupported,
    factorial,
    k_p,
    legendre,
    power_sum,
    require_prime,
    tau,
    zeta_exponent,
)
from .ffield import (
    FieldContext,
    cyclotomic_context,
    pow_big,
    solve_artin_schreier,
    theta,
    trace,
    trace_via_coefficient,
)
from .polyring import DensePolynomial, render
from .quadratic import mordell_chowla_rhs

STATEMENTS = (
    "MAIN_1", "TRACE_FORMULA", "BELL_TRACE", "BELL_FACTORIAL", "INVERSE_LEMMA",
    "TOUCHARD_1", "TOUCHARD_2", "RATIONALITY", "MEZO", "GF_BELL", "GF_STIRLING",
    "DEFORMATION", "SEPARABLE", "INTERMEDIATE", "TRACE_CALCULUS", "POWER_SUM",
    "CONSTANT_IN_A", "MORDELL_CHOWLA", "HANKEL", "SHIFTED_HANKEL", "P2_REMARK",
)


@dataclass(frozen=True)
class VerificationRecord:
    statement: str
    p: int | None = None
    a: int | None = None
    m: int | None = None
    n: int | None = None
    lhs: str = ""
    rhs: str = ""
    micros: int | None = field(default=None, compare=False)
    precision: int | None = None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self, timings: bool = False) -> dict:
        return {
            "statement": self.statement, "p": self.p, "a": self.a, "m": self.m, "n": self.n,
            "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed,
            "micros": self.micros if timings else None,
        }


class _Clock:
    def __init__(self):
        self.t = time.perf_counter()

    def lap(self) -> int:
        now = time.perf_counter()
        us, self.t = int((now - self.t) * 1e6), now
        return us


def _rec(clock, statement, lhs, rhs, **params) -> VerificationRecord:
    return VerificationRecord(statement, lhs=str(lhs), rhs=str(rhs), micros=clock.lap(), **params)


def _unit(a: int, p: int) -> int:
    if gcd(a, p) != 1:
        raise InvalidArgument(f"gcd({a}, {p}) != 1")
    return pow(a, -1, p)


def _main_prime(p: int):
    require_prime(p)
    if p <= 3:
        raise Unsupported("statement needs p > 3")


@lru_cache(maxsize=None)
def theta_trace(p: int, e: int) -> int:
    """Tr(theta^e) in F_{p^p}."""
    return trace(pow_big(theta(p), e))


@lru_cache(maxsize=None)
def bell_at_tau(p: int, a: int) -> int:
    """b_{tau_p(a)}(a^-1) mod p."""
    return bell.bell_eval_huge(p, _unit(a, p), tau(p, a))


# -- main identity and the chain behind it -----------------------------------

def check_main(p: int, a: int) -> VerificationRecord:
    _main_prime(p)
    _unit(a, p)
    clock = _Clock()
    lhs = theta_trace(p, zeta_exponent(p, a))
    rhs = legendre(-2 * a, p) * mordell_chowla_rhs(p) % p
    return _rec(clock, "MAIN_1", lhs, rhs, p=p, a=a)


_SHIFTED_TRACES: dict = {}


def _trace_formula_data(p: int, a: int, m: int):
    """Tr(theta^tau) and Tr(theta^(j - 1 - tau)) for j <= m."""
    key = (p, a)
    data = _SHIFTED_TRACES.get(key)
    t = tau(p, a)
    if data is None:
        th = theta(p)
        cur = pow_big(th, -1 - t)
        data = _SHIFTED_TRACES[key] = (theta_trace(p, t), [trace(cur)], [cur])
    T, traces, last = data
    th = theta(p)
    while len(traces) <= m:
        last[0] = last[0] * th
        traces.append(trace(last[0]))
    return T, traces


def check_trace_formula(p: int, a: int, m: int) -> VerificationRecord:
    """a^m b_m(a^-1, lambda) against the trace expression, lambda symbolic."""
    require_prime(p)
    ainv = _unit(a, p)
    if m < 0:
        raise InvalidArgument("m must be nonnegative")
    clock = _Clock()
    lhs = bell.bell_poly(m, x=ainv, modulus=p)
    lhs = DensePolynomial([lhs], "l", p) if isinstance(lhs, int) else lhs
    lhs = lhs * pow(a, m, p)
    T, traces = _trace_formula_data(p, a, m)
    # (a lam + theta)^m = sum_k C(m, k) a^k lam^k theta^(m - k), traced coefficientwise
    rhs = DensePolynomial([-T * comb(m, k) * pow(a, k, p) * traces[m - k] for k in range(m + 1)], "l", p)
    return _rec(clock, "TRACE_FORMULA", render(lhs.reduce(p)), render(rhs), p=p, a=a, m=m)


def check_bell_trace(p: int, a: int) -> VerificationRecord:
    require_prime(p, odd=True)
    _unit(a, p)
    clock = _Clock()
    t = tau(p, a)
    lhs = f"{theta_trace(p, zeta_exponent(p, a))},{theta_trace(p, t)}"
    b = legendre(a, p) * bell_at_tau(p, a) % p
    return _rec(clock, "BELL_TRACE", lhs, f"{b},{b}", p=p, a=a)


def check_bell_factorial(p: int, a: int) -> VerificationRecord:
    require_prime(p, odd=True)
    _unit(a, p)
    clock = _Clock()
    rhs = legendre(-2, p) * int(factorial((p - 1) // 2, p)) % p
    return _rec(clock, "BELL_FACTORIAL", bell_at_tau(p, a), rhs, p=p, a=a)


def check_constant_in_a(p: int) -> VerificationRecord:
    """(a|p) Tr(theta^Z_a) over a in [1, p-1] against (-2|p) times the factorial residue."""
    _main_prime(p)
    clock = _Clock()
    values = {legendre(a, p) * theta_trace(p, zeta_exponent(p, a)) % p for a in range(1, p)}
    rhs = legendre(-2, p) * mordell_chowla_rhs(p) % p
    return _rec(clock, "CONSTANT_IN_A", ",".join(map(str, sorted(values))), rhs, p=p)


def check_mordell_chowla(p: int) -> VerificationRecord:
    _main_prime(p)
    clock = _Clock()
    return _rec(clock, "MORDELL_CHOWLA", int(factorial((p - 1) // 2, p)), mordell_chowla_rhs(p), p=p)


def check_inverse_lemma(p: int, a: int) -> VerificationRecord:
    """tau (p^a - 1) = 1 and Z_a (p^a - 1) = p^a mod k_p; tau = (p-1)/2 mod p-1."""
    require_prime(p)
    _unit(a, p)
    clock = _Clock()
    k = k_p(p)
    t, pa = tau(p, a), p**a
    lhs = f"{t * (pa - 1) % k},{zeta_exponent(p, a) * (pa - 1) % k},{t % (p - 1)}"
    rhs = f"{1 % k},{pa % k},{(p - 1) // 2 % (p - 1)}"
    return _rec(clock, "INVERSE_LEMMA", lhs, rhs, p=p, a=a)


def check_p2_remark() -> list[VerificationRecord]:
    """The p = 2 case: tau_2(1) = 1, theta^3 = 1 and m = 0, 1, 2."""
    clock = _Clock()
    th = theta(2)
    out = [
        _rec(clock, "P2_REMARK", f"tau:{tau(2, 1)}", "tau:1", p=2, a=1),
        _rec(clock, "P2_REMARK", f"order:{pow_big(th, 3).canonical()}", "order:1", p=2, a=1),
    ]
    t = tau(2, 1)
    stated = {0: (1, 1), 1: (1, 1), 2: (0, 0)}  # b_m(1) mod 2 and Tr(theta^(m-2))
    for m in range(3):
        b = bell.bell_poly(m, 1, 0) % 2
        tr = trace(pow_big(th, m - 1 - t))
        rhs = -trace(pow_big(th, t)) * tr % 2
        out.append(_rec(clock, "P2_REMARK", f"{b},{tr},{rhs}", "{},{},{}".format(*stated[m], stated[m][0]),
                        p=2, a=1, m=m))
    return out


# -- root-sum formula over Artin-Schreier roots -----------------------------

def _lift(c, K: FieldContext, ctx: FieldContext):
    if K is ctx:
        return c
    if K.base is None:
        return K.from_int(c.to_int())
    return K.embed(c)


def _descend(e, ctx: FieldContext):
    K = e.ctx
    if K is ctx or K == ctx:
        return e
    if K.base is not None:
        if any(not c.is_zero() for c in e.coeffs[1:]):
            raise AssertionError("root sum did not descend to the base field")
        return e.coeffs[0]
    return ctx.from_int(e.to_int())


_INTERMEDIATE: dict = {}


def _intermediate_rhs(p: int, n: int, a: int, m_max: int) -> list[int]:
    """-1/n sum_l zeta^l sum_theta theta^m sum_k prod_{j<=k} (theta + j a), m <= m_max.

    Roots run over theta^p - theta = zeta^l; the 1/(1 - p theta^(p-1))
    factor is 1 mod p.
    """
    key = (p, n, a)
    cached = _INTERMEDIATE.get(key)
    if cached is not None and len(cached) > m_max:
        return cached
    ctx, zeta = cyclotomic_context(p, n)
    totals = [ctx.zero for _ in range(m_max + 1)]
    for l in range(n):
        zl = pow_big(zeta, l)
        sol = solve_artin_schreier(ctx, zl)
        K = sol.field
        sums = [K.zero] * (m_max + 1)
        for th in sol.roots():
            acc, prd = K.zero, K.one
            for k in range(n * p):
                acc = acc + prd
                prd = prd * (th + (k + 1) * a)
            for m in range(m_max + 1):
                sums[m] = sums[m] + acc
                acc = acc * th
        # the sum over a full set of conjugate roots lies in F_p(zeta)
        for m in range(m_max + 1):
            totals[m] = totals[m] + zl * _descend(sums[m], ctx)
    ninv = pow(n, -1, p)
    out = [(-ninv * t.to_int()) % p for t in totals]
    _INTERMEDIATE[key] = out
    return out


def check_intermediate(p: int, n: int, m: int, a: int) -> VerificationRecord:
    """a^m b_m(a^-1) against the root-sum formula, checked mod p for gcd(n, p) = 1."""
    require_prime(p)
    if n < 1:
        raise InvalidArgument("n must be positive")
    if n % p == 0:
        raise Unsupported("p | n is outside the mod-p reduction")
    ainv = _unit(a, p)
    if m < 0:
        raise InvalidArgument("m must be nonnegative")
    clock = _Clock()
    lhs = pow(a, m, p) * bell.bell_values_mod(p, ainv, m + 1)[m] % p
    rhs = _intermediate_rhs(p, n, a % p, max(m, 2 * p))[m]
    return _rec(clock, "INTERMEDIATE", lhs, rhs, p=p, a=a, m=m, n=n)


def check_separable(p: int, n: int) -> VerificationRecord:
    require_prime(p)
    if n % p == 0:
        raise Unsupported("p | n")
    clock = _Clock()
    lhs, rhs = polyring.separable_sides(p, n)
    return _rec(clock, "SEPARABLE", render(lhs), render(rhs), p=p, n=n)


def check_deformation(p: int, n: int) -> VerificationRecord:
    require_prime(p)
    clock = _Clock()
    lhs, rhs = polyring.deformation_sides(p, n)
    return _rec(clock, "DEFORMATION", render(lhs), render(rhs), p=p, n=n)


# -- thin adapters -----------------------------------------------------------

def check_trace_calculus(p: int, n_min: int = -1, n_max: int | None = None) -> list[VerificationRecord]:
    """Tr(theta^n) against minus its top coordinate, plus the listed values."""
    require_prime(p, odd=True)
    n_max = 3 * p if n_max is None else n_max
    zero = set(range(p - 1)) | set(range(p, 2 * p - 2))
    clock = _Clock()
    out = []
    for n in range(n_min, n_max + 1):
        e = pow_big(theta(p), n)
        tr, coef = trace(e), trace_via_coefficient(e)
        if n in zero or n in (-1, p - 1):
            want = 0 if n in zero else p - 1
            out.append(_rec(clock, "TRACE_CALCULUS", f"{tr},{coef}", f"{want},{want}", p=p, n=n))
        else:
            out.append(_rec(clock, "TRACE_CALCULUS", tr, coef, p=p, n=n))
    return out


def check_power_sums(p: int, j_max: int | None = None) -> list[VerificationRecord]:
    require_prime(p)
    j_max = 2 * (p - 1) if j_max is None else j_max
    clock = _Clock()
    out = []
    for j in range(j_max + 1):
        want = -1 % p if j > 0 and j % (p - 1) == 0 else 0
        out.append(_rec(clock, "POWER_SUM", int(power_sum(j, p)), want, p=p, n=j))
    return out


def check_touchard(p: int, n_max: int | None = None) -> list[VerificationRecord]:
    """Both Touchard congruences, x (and lambda) symbolic over F_p."""
    require_prime(p)
    n_max = 3 * p if n_max is None else n_max
    clock = _Clock()
    out = []
    xp = DensePolynomial.monomial(1, p, "x", p)
    for n in range(n_max + 1):
        b = [bell.bell_poly(n + i, lam=0, modulus=p) for i in (0, 1, p)]
        out.append(_rec(clock, "TOUCHARD_1", render(b[2]), render(b[1] + xp * b[0]), p=p, n=n))
    L = DensePolynomial.gen("l", p)
    weight = xp + (L**p - L)
    for n in range(n_max + 1):
        b = [bell.bell_poly(n + i, modulus=p) for i in (0, 1, p)]
        rhs = (b[1] + weight * b[0]).reduce(p)
        out.append(_rec(clock, "TOUCHARD_2", render(b[2]), render(rhs), p=p, n=n))
    return out


def check_hankel(n: int) -> VerificationRecord:
    clock = _Clock()
    return _rec(clock, "HANKEL", render(bell.hankel_det(n)), render(bell.hankel_closed_form(n)), n=n)


def check_shifted_hankel(p: int, a: int, m_max: int = 5) -> list[VerificationRecord]:
    """Scaling law, the n = p specialisation, anti-diagonal vanishing and the
    determinant at the shift tau_p(a)."""
    require_prime(p, odd=True)
    x0 = _unit(a, p)
    clock = _Clock()
    out = []
    base = bell.shifted_hankel_det(p, 0, x0)
    for m in range(m_max + 1):
        d = bell.shifted_hankel_det(p, m, x0)
        out.append(_rec(clock, "SHIFTED_HANKEL", f"scale:{d}", f"scale:{pow(x0, p * m, p) * base % p}",
                        p=p, a=a, m=m))
    jfact = prod(int(factorial(j, p)) for j in range(p)) % p
    out.append(_rec(clock, "SHIFTED_HANKEL", f"special:{base}",
                    f"special:{pow(a, (p - 1) // 2, p) * jfact % p}", p=p, a=a, m=0))
    t = tau(p, a)
    window = bell.bell_window(p, x0, t, 2 * p - 1)
    for m in list(range(1, p)) + list(range(p + 1, 2 * p - 1)):
        out.append(_rec(clock, "SHIFTED_HANKEL", f"vanish:{window[m]}", "vanish:0", p=p, a=a, m=m))
    d_tau = bell.shifted_hankel_det(p, t, x0)
    anti = (-1) ** ((p - 1) // 2) * window[0] % p
    out.append(_rec(clock, "SHIFTED_HANKEL", f"tau:{d_tau},{d_tau}", f"tau:{jfact},{anti}", p=p, a=a))
    return out


def _identity_sides(check: polyring.IdentityCheck, precision: int):
    if check.holds:
        return (f"agree to O(z^{precision})",) * 2
    k, i, lhs, rhs = check.witness
    return f"z^{k} x^{i}: {lhs}", f"z^{k} x^{i}: {rhs}"


def check_rationality(n: int, p: int | None = None, r: int | None = None,
                      precision: int = 30) -> VerificationRecord:
    """The mod-n form (p None, lambda symbolic) or the p-adic form at lam = r.

    ``r`` is reported in the ``a`` column.
    """
    clock = _Clock()
    chk = polyring.rationality_congruence(n, precision, p=p, r=r)
    lhs, rhs = _identity_sides(chk, precision)
    return _rec(clock, "RATIONALITY", lhs, rhs, p=p, a=r, n=n, precision=precision)


def check_touchard_extraction(p: int, precision: int = 30) -> list[VerificationRecord]:
    """z^{m+p} coefficients of the n = 1 rational form against Touchard."""
    clock = _Clock()
    out = []
    for k, got, touch in polyring.touchard_extraction(p, precision):
        out.append(_rec(clock, "RATIONALITY", f"extract:{render(got)}", f"extract:{render(touch)}",
                        p=p, a=0, m=k, n=1, precision=precision))
    return out


def check_gf_identities(x_degree: int = 8, precision: int = 12) -> list[VerificationRecord]:
    """Product form, Stirling series and exponential form of F, exact over Q."""
    clock = _Clock()
    out = []
    defn = polyring._bell_series(precision, x_degree=x_degree, rational=True)
    prod_form = polyring.gf_bell(precision, x_degree, rational=True)
    mezo = polyring.mezo_rhs(x_degree, precision)
    for k in range(precision):
        out.append(_rec(clock, "GF_BELL", render(prod_form[k]), render(defn[k]), n=k, precision=precision))
        out.append(_rec(clock, "MEZO", render(defn[k]), render(mezo[k]), n=k, precision=precision))
    for j in range(x_degree):
        series = polyring.gf_stirling(j, precision)
        for k in range(precision):
            want = bell.weighted_stirling(k, j)
            out.append(_rec(clock, "GF_STIRLING", render(series[k]), render(want), m=j, n=k,
                            precision=precision))
    return out
