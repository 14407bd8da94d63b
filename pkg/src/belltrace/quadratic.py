"""Class numbers and fundamental units of Q(sqrt(p)) and Q(sqrt(-p)).

Everything is exact integer arithmetic: reduced positive definite forms for
discriminant -p, cycles of reduced indefinite forms for discriminant p, and
the continued fraction of (1 + sqrt p)/2 for the unit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .arith import InvalidArgument, Unsupported, factorial, is_prime


@dataclass(frozen=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


@dataclass(frozen=True)
class CFState:
    """The quadratic irrational (P + sqrt D)/Q with partial quotient a."""

    P: int
    Q: int
    a: int


@dataclass(frozen=True)
class ClassData:
    p: int
    h: int
    t: int | None = None
    u: int | None = None
    norm: int | None = None


def _check_prime(p: int, residue: int):
    if not is_prime(p) or p % 4 != residue:
        raise InvalidArgument(f"{p} is not a prime = {residue} mod 4")


def reduced_definite_forms(D: int) -> list[QuadraticForm]:
    """Reduced positive definite forms of discriminant D < 0."""
    if D >= 0:
        raise InvalidArgument("discriminant must be negative")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append(QuadraticForm(a, b, c))
        a += 1
    return out


@lru_cache(maxsize=None)
def class_number_imaginary(p: int) -> int:
    """h(-p) for a prime p = 3 mod 4, p > 3."""
    _check_prime(p, 3)
    if p <= 3:
        raise InvalidArgument("p must exceed 3")
    return len(reduced_definite_forms(-p))


def continued_fraction_states(D: int, P: int, Q: int):
    """Yield CF states of (P + sqrt D)/Q forever (D not a square, Q | D - P^2)."""
    if (D - P * P) % Q:
        raise InvalidArgument("Q must divide D - P^2")
    s = isqrt(D)
    while True:
        a = (P + s) // Q if Q > 0 else -((-(P + s + 1)) // Q) - 1
        yield CFState(P, Q, a)
        P = a * Q - P
        Q = (D - P * P) // Q


@lru_cache(maxsize=None)
def fundamental_unit(p: int) -> tuple[int, int, int]:
    """(t, u, norm) with (t + u sqrt p)/2 the fundamental unit, p = 1 mod 4."""
    _check_prime(p, 1)
    quarter = (p - 1) // 4
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    for st in continued_fraction_states(p, 1, 2):
        h_prev, h = h, st.a * h + h_prev
        k_prev, k = k, st.a * k + k_prev
        # h - k * conj(omega) has norm h^2 - h k - k^2 (p - 1)/4
        nrm = h * h - h * k - k * k * quarter
        if nrm in (1, -1):
            return 2 * h - k, k, nrm
    raise AssertionError("unreachable")


def _below_sqrt(x: int, D: int) -> bool:
    """x < sqrt(D) for a non-square D > 0."""
    return x < 0 or x * x < D


def is_reduced_indefinite(f: QuadraticForm) -> bool:
    """0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b."""
    D = f.discriminant
    A = 2 * abs(f.a)
    return (
        f.b > 0
        and _below_sqrt(f.b, D)
        and not _below_sqrt(A + f.b, D)
        and _below_sqrt(A - f.b, D)
    )


def reduced_indefinite_forms(D: int) -> list[QuadraticForm]:
    """All reduced forms of a non-square discriminant D > 0."""
    if D <= 0 or isqrt(D) ** 2 == D:
        raise InvalidArgument("discriminant must be a positive non-square")
    out = []
    s = isqrt(D)
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4
        n = -ac
        for a in range(1, n + 1):
            if n % a:
                continue
            for sa in (a, -a):
                f = QuadraticForm(sa, b, ac // sa)
                if is_reduced_indefinite(f):
                    out.append(f)
    return out


def rho(f: QuadraticForm) -> QuadraticForm:
    """One reduction step (a, b, c) -> (c, b', (b'^2 - D)/(4c))."""
    D = f.discriminant
    s = isqrt(D)
    m = 2 * abs(f.c)
    b2 = s - (s + f.b) % m
    return QuadraticForm(f.c, b2, (b2 * b2 - D) // (4 * f.c))


def reduced_cycles(D: int) -> list[list[QuadraticForm]]:
    """Partition the reduced forms of discriminant D into rho-orbits."""
    forms = reduced_indefinite_forms(D)
    remaining = set(forms)
    cycles = []
    for f in forms:
        if f not in remaining:
            continue
        cyc = [f]
        remaining.discard(f)
        g = rho(f)
        while g != f:
            if g not in remaining:
                raise AssertionError(f"rho left the reduced set at {g}")
            remaining.discard(g)
            cyc.append(g)
            g = rho(g)
        cycles.append(cyc)
    return cycles


class NormAnomaly(ArithmeticError):
    """A prime p = 1 mod 4 produced a unit of norm +1."""


@lru_cache(maxsize=None)
def class_number_real(p: int) -> int:
    """h(p) for a prime p = 1 mod 4."""
    _check_prime(p, 1)
    narrow = len(reduced_cycles(p))
    _, _, nrm = fundamental_unit(p)
    if nrm == 1:
        raise NormAnomaly(f"fundamental unit of Q(sqrt {p}) has norm +1")
    return narrow


def class_data(p: int) -> ClassData:
    """Class number (and unit for p = 1 mod 4) of the field attached to p."""
    if p % 4 == 1:
        t, u, nrm = fundamental_unit(p)
        data = ClassData(p, class_number_real(p), t, u, nrm)
    else:
        data = ClassData(p, class_number_imaginary(p))
    if data.h % 2 == 0:
        raise AssertionError(f"even class number {data.h} for prime {p}")
    return data


def mordell_chowla_rhs(p: int, data: ClassData | None = None) -> int:
    """The residue that ((p-1)/2)! takes mod p according to h and t_p."""
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    if p <= 3:
        raise Unsupported("the factorial congruence needs p > 3")
    data = data or class_data(p)
    sign = -1 if (data.h + 1) // 2 % 2 else 1
    if p % 4 == 1:
        return sign * data.t * pow(2, -1, p) % p
    return sign % p


def half_factorial(p: int) -> int:
    return int(factorial((p - 1) // 2, p))
