"""Finite fields F_{p^f}, Artin-Schreier extensions and towers over them.

A :class:`FieldContext` is either an extension of F_p given by a monic
irreducible polynomial over F_p, or an extension of another context (a
tower), which is how Artin-Schreier roots over F_q are adjoined.  Elements
are coefficient tuples in the basis 1, t, ..., t^(f-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .arith import InvalidArgument, Unsupported, multiplicative_order, prime_factors, require_prime


class PrimeField:
    """Coefficient arithmetic for F_p on plain ints."""

    def __init__(self, p: int):
        self.p = p
        self.order = p
        self.absolute_degree = 1
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n: int):
        return n % self.p

    def to_vector(self, a):
        return [a]

    def from_vector(self, v):
        return v[0] % self.p


# -- polynomial helpers over a coefficient field (lists, lowest degree first) --

def _trim(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def _poly_mul(F, a, b):
    if isinstance(F, PrimeField):
        return kernels.poly_mul(list(a), list(b), F.p)
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _poly_divmod(F, a, b):
    a = _trim(F, a)
    b = _trim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        coef = F.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        q[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(coef, y))
        a = _trim(F, a)
    return q, a


def _poly_gcd(F, a, b):
    a, b = _trim(F, a), _trim(F, b)
    while b:
        a, b = b, _poly_divmod(F, a, b)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(inv, x) for x in a]
    return a


def _poly_mulmod(F, a, b, mod):
    if isinstance(F, PrimeField):
        return kernels.mulmod(list(a), list(b), list(mod), F.p)
    r = _poly_divmod(F, _poly_mul(F, a, b), mod)[1]
    return r + [F.zero] * (len(mod) - 1 - len(r))


def _poly_powmod(F, base, e, mod):
    if isinstance(F, PrimeField):
        return kernels.powmod(list(base), e, list(mod), F.p)
    result = _poly_divmod(F, [F.one], mod)[1]
    base = _poly_divmod(F, base, mod)[1]
    for bit in bin(e)[2:]:
        result = _poly_mulmod(F, result, result, mod)
        if bit == "1":
            result = _poly_mulmod(F, result, base, mod)
    return result


def is_irreducible(F, mod) -> bool:
    """Ben-Or test for a monic polynomial over a finite coefficient field."""
    mod = _trim(F, mod)
    d = len(mod) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    q = F.order
    t = [F.zero, F.one]
    h = t
    for i in range(1, d + 1):
        h = _poly_powmod(F, h, q, mod)
        if i <= d // 2:
            diff = list(h) + [F.zero] * max(0, 2 - len(h))
            diff[1] = F.sub(diff[1], F.one)
            if len(_poly_gcd(F, diff, mod)) > 1:
                return False
    return _trim(F, h) == _trim(F, t)


class FieldContext:
    """F_p[t]/(modulus), or base[t]/(modulus) for a tower over ``base``."""

    def __init__(self, p: int, modulus, base: "FieldContext | None" = None, check: bool = True):
        require_prime(p)
        self.p = p
        self.base = base
        F = base if base is not None else PrimeField(p)
        self.coeff_field = F
        mod = [F.from_int(c) if isinstance(c, int) else c for c in modulus]
        mod = _trim(F, mod)
        if not mod or len(mod) < 2:
            raise InvalidArgument("modulus must have positive degree")
        if mod[-1] != F.one:
            raise InvalidArgument("modulus must be monic")
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.absolute_degree = self.degree * F.absolute_degree
        self.order = p**self.absolute_degree
        self._tri_c = None
        if base is None and self.degree >= 2:
            expect = [0] * (self.degree + 1)
            expect[1], expect[-1] = p - 1, 1
            if list(mod[1:]) == expect[1:]:
                self._tri_c = -mod[0] % p
        self.is_artin_schreier = self._tri_c == 1 and self.degree == p
        if check and not is_irreducible(F, list(self.modulus)):
            raise InvalidArgument(f"modulus {list(self.modulus)} is reducible")

    # identity / hashing
    def _key(self):
        return (self.p, self.modulus, self.base)

    def __eq__(self, other):
        return self is other or (isinstance(other, FieldContext) and self._key() == other._key())

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        inner = f"F_{self.p}" if self.base is None else repr(self.base)
        return f"FieldContext({inner}[t]/{list(self.modulus)})"

    # coefficient-field interface, so a context can serve as a tower base
    @property
    def zero(self):
        return ExtFieldElement(self, (self.coeff_field.zero,) * self.degree)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def gen(self):
        F = self.coeff_field
        if self.degree == 1:
            return ExtFieldElement(self, (F.neg(self.modulus[0]),))
        cs = [F.zero] * self.degree
        cs[1] = F.one
        return ExtFieldElement(self, tuple(cs))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a):
        return a.is_zero()

    def from_int(self, n: int):
        F = self.coeff_field
        return ExtFieldElement(self, (F.from_int(n),) + (F.zero,) * (self.degree - 1))

    def embed(self, value):
        """Coerce an int or an element of a subfield in the tower."""
        if isinstance(value, ExtFieldElement):
            if value.ctx is self or value.ctx == self:
                return value
            if self.base is not None:
                inner = self.base.embed(value)
                return ExtFieldElement(self, (inner,) + (self.base.zero,) * (self.degree - 1))
            raise InvalidArgument("elements from different fields do not mix")
        if isinstance(value, int):
            return self.from_int(value)
        raise TypeError(f"cannot embed {type(value).__name__}")

    def __call__(self, coeffs):
        """Element from coordinates; over F_p longer inputs are reduced."""
        F = self.coeff_field
        if self.base is None:
            cs = kernels.mulmod([c % self.p for c in coeffs] or [0], [1], list(self.modulus), self.p)
            return ExtFieldElement(self, tuple(cs))
        if len(coeffs) > self.degree:
            raise InvalidArgument("too many coordinates")
        cs = [self.base.embed(c) for c in coeffs]
        return ExtFieldElement(self, tuple(cs) + (F.zero,) * (self.degree - len(cs)))

    def to_vector(self, e) -> list[int]:
        out = []
        for c in e.coeffs:
            out.extend(self.coeff_field.to_vector(c))
        return out

    def from_vector(self, v) -> "ExtFieldElement":
        F = self.coeff_field
        step = F.absolute_degree
        cs = tuple(F.from_vector(v[i * step:(i + 1) * step]) for i in range(self.degree))
        return ExtFieldElement(self, cs)

    def element_from_index(self, k: int) -> "ExtFieldElement":
        """k-th element in base-p digit order (fixed, reproducible enumeration)."""
        v = []
        for _ in range(self.absolute_degree):
            k, r = divmod(k, self.p)
            v.append(r)
        return self.from_vector(v)

    # internal products
    def _mul(self, a, b):
        if self.base is None:
            if self._tri_c is not None:
                return tuple(kernels.trinomial_mulmod(list(a), list(b), self.degree, self._tri_c, self.p))
            return tuple(kernels.mulmod(list(a), list(b), list(self.modulus), self.p))
        return tuple(_poly_mulmod(self.coeff_field, a, b, list(self.modulus)))

    def _pow(self, a, e: int):
        if self.base is None:
            if self._tri_c is not None:
                return tuple(kernels.trinomial_powmod(list(a), e, self.degree, self._tri_c, self.p))
            return tuple(kernels.powmod(list(a), e, list(self.modulus), self.p))
        return tuple(_poly_powmod(self.coeff_field, list(a), e, list(self.modulus)))


class ExtFieldElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, ExtFieldElement) and (other.ctx is self.ctx or other.ctx == self.ctx):
            return other
        try:
            return self.ctx.embed(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.ctx.coeff_field
        return ExtFieldElement(self.ctx, (F.add(x, y) for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        F = self.ctx.coeff_field
        return ExtFieldElement(self.ctx, (F.neg(x) for x in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            F = self.ctx.coeff_field
            c = F.from_int(other)
            return ExtFieldElement(self.ctx, (F.mul(c, x) for x in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExtFieldElement(self.ctx, self.ctx._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.ctx.embed(other) * self.inverse()

    def __pow__(self, n: int):
        return pow_big(self, n)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return pow_big(self, self.ctx.order - 2)

    def is_zero(self) -> bool:
        F = self.ctx.coeff_field
        return all(F.is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        try:
            o = self.ctx.embed(other)
        except (TypeError, InvalidArgument):
            return NotImplemented
        return self.ctx.to_vector(self) == self.ctx.to_vector(o)

    def __hash__(self):
        return hash((self.ctx.p, tuple(self.ctx.to_vector(self))))

    def in_prime_field(self) -> bool:
        v = self.ctx.to_vector(self)
        return all(x == 0 for x in v[1:])

    def to_int(self) -> int:
        """The F_p value of an element lying in the prime field."""
        if not self.in_prime_field():
            raise InvalidArgument(f"{self!r} is not in the prime field")
        return self.ctx.to_vector(self)[0]

    def canonical(self) -> str:
        v = self.ctx.to_vector(self)
        if all(x == 0 for x in v[1:]):
            return str(v[0])
        return "(" + ",".join(map(str, v)) + ")"

    def __repr__(self):
        return f"<{self.canonical()} in F_{self.ctx.p}^{self.ctx.absolute_degree}>"


def pow_big(e: ExtFieldElement, n: int) -> ExtFieldElement:
    """e**n for any integer n; exponents are reduced mod (order - 1)."""
    ctx = e.ctx
    if e.is_zero():
        if n < 0:
            raise ZeroDivisionError("zero to a negative power")
        return ctx.one if n == 0 else e
    return ExtFieldElement(ctx, ctx._pow(e.coeffs, n % (ctx.order - 1)))


def frobenius(e: ExtFieldElement) -> ExtFieldElement:
    """e -> e^p."""
    ctx = e.ctx
    if ctx._tri_c is not None and ctx.degree == ctx.p:
        # t^p = t + c, so Frobenius is the substitution t -> t + c
        return ExtFieldElement(ctx, kernels.taylor_shift(list(e.coeffs), ctx._tri_c, ctx.p))
    return ExtFieldElement(ctx, ctx._pow(e.coeffs, ctx.p))


def trace(e: ExtFieldElement) -> int:
    """Absolute trace to F_p: sum of e^(p^i) over i < absolute degree."""
    acc = e
    cur = e
    for _ in range(e.ctx.absolute_degree - 1):
        cur = frobenius(cur)
        acc = acc + cur
    return acc.to_int()


def norm(e: ExtFieldElement) -> int:
    acc = e
    cur = e
    for _ in range(e.ctx.absolute_degree - 1):
        cur = frobenius(cur)
        acc = acc * cur
    return acc.to_int()


def trace_via_coefficient(e: ExtFieldElement) -> int:
    """Minus the theta^(p-1) coordinate, valid in F_p[t]/(t^p - t - 1)."""
    if not e.ctx.is_artin_schreier:
        raise InvalidArgument("trace_via_coefficient needs the Artin-Schreier context")
    return -e.coeffs[-1] % e.ctx.p


@lru_cache(maxsize=None)
def prime_field_context(p: int) -> FieldContext:
    """F_p viewed as the degree-one context F_p[t]/(t)."""
    return FieldContext(p, [0, 1])


@lru_cache(maxsize=None)
def artin_schreier_context(p: int) -> FieldContext:
    """F_{p^p} = F_p[t]/(t^p - t - 1); theta is ``ctx.gen``."""
    require_prime(p)
    mod = [0] * (p + 1)
    mod[0], mod[1], mod[p] = -1 % p, -1 % p, 1
    return FieldContext(p, mod)


def theta(p: int) -> ExtFieldElement:
    return artin_schreier_context(p).gen


@lru_cache(maxsize=None)
def _search_irreducible(p: int, f: int) -> tuple[int, ...]:
    F = PrimeField(p)
    for k in range(p**f):
        low = []
        for _ in range(f):
            k, r = divmod(k, p)
            low.append(r)
        mod = low + [1]
        if low[0] != 0 and is_irreducible(F, mod):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


@lru_cache(maxsize=None)
def cyclotomic_context(p: int, n: int) -> tuple[FieldContext, ExtFieldElement]:
    """Smallest F_{p^f} holding a primitive n-th root of unity, and that root."""
    require_prime(p)
    if n < 1:
        raise InvalidArgument("n must be positive")
    if n % p == 0:
        raise Unsupported(f"n = {n} is divisible by p = {p}")
    f = multiplicative_order(p, n)
    ctx = prime_field_context(p) if f == 1 else FieldContext(p, _search_irreducible(p, f), check=False)
    cofactor = (ctx.order - 1) // n
    for k in range(1, ctx.order):
        y = pow_big(ctx.element_from_index(k), cofactor)
        if all(pow_big(y, n // r) != 1 for r in prime_factors(n)):
            return ctx, y
    raise AssertionError("no primitive root of unity found")  # cannot happen


@dataclass(frozen=True)
class ArtinSchreierSolution:
    """Roots of t^p - t = c: ``theta + j`` for j in F_p, all inside ``field``.

    ``split`` tells whether the roots already lie in the field of ``c``.
    """

    field: FieldContext
    theta: ExtFieldElement
    split: bool

    def roots(self) -> list[ExtFieldElement]:
        return [self.theta + j for j in range(self.field.p)]


def _solve_mod_p(rows, rhs, p):
    """One solution of rows @ x = rhs over F_p, free variables set to zero."""
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] % p:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] % p for row in aug[r:]):
        raise InvalidArgument("inconsistent linear system")
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][-1]
    return x


def solve_artin_schreier(ctx: FieldContext, c) -> ArtinSchreierSolution:
    """Solve t^p - t = c for c in ``ctx``, extending the field if needed."""
    c = ctx.embed(c)
    p = ctx.p
    if trace(c) == 0:
        m = ctx.absolute_degree
        cols = []
        for i in range(m):
            b = ctx.from_vector([1 if j == i else 0 for j in range(m)])
            cols.append(ctx.to_vector(frobenius(b) - b))
        rows = [[cols[j][i] for j in range(m)] for i in range(m)]
        x = ctx.from_vector(_solve_mod_p(rows, ctx.to_vector(c), p))
        assert frobenius(x) - x == c
        return ArtinSchreierSolution(ctx, x, True)
    if ctx.base is None and ctx.degree == 1:
        c0 = c.to_int()
        mod = [(-c0) % p, p - 1] + [0] * (p - 2) + [1]
        ext = FieldContext(p, mod)
    else:
        mod = [-c, ctx.from_int(-1)] + [ctx.zero] * (p - 2) + [ctx.one]
        ext = FieldContext(p, mod, base=ctx)
    return ArtinSchreierSolution(ext, ext.gen, False)
