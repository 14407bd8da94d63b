"""Dense polynomials and truncated power series with exact coefficients.

Coefficients may be ints (optionally reduced mod ``modulus``), Fractions,
finite-field elements, or polynomials in another variable; nesting is how
bivariate and trivariate objects in x, lambda and z are built.  Two
polynomials only multiply as polynomials when they share ``var``; otherwise
the other operand is treated as a scalar coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial as _fact
from typing import NamedTuple

from .arith import InvalidArgument, valuation


class NotInvertible(ArithmeticError):
    """Constant term of a series or denominator is not a unit."""


# Nesting order of variables, outermost first: z-series over x over lambda.
_VAR_RANK = {"z": 0, "x": 1, "l": 2}


def _is_outer(a: str, b: str) -> bool:
    return (_VAR_RANK.get(a, 9), a) < (_VAR_RANK.get(b, 9), b)


def _canon(c) -> str:
    if hasattr(c, "canonical"):
        return c.canonical()
    return str(c)


class DensePolynomial:
    __slots__ = ("coeffs", "var", "modulus")

    def __init__(self, coeffs=(), var: str = "x", modulus: int | None = None):
        cs = list(coeffs)
        if modulus is not None:
            cs = [c % modulus if isinstance(c, int) else c for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var
        self.modulus = modulus

    @classmethod
    def gen(cls, var: str = "x", modulus: int | None = None) -> "DensePolynomial":
        return cls([0, 1], var, modulus)

    @classmethod
    def monomial(cls, coef, k: int, var: str = "x", modulus: int | None = None):
        return cls([0] * k + [coef], var, modulus)

    def _new(self, coeffs, modulus=None):
        return DensePolynomial(coeffs, self.var, self.modulus if modulus is None else modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other) -> bool:
        return isinstance(other, DensePolynomial) and other.var == self.var

    def _inner_to(self, other) -> bool:
        """True when ``other`` is a polynomial in a more outer variable."""
        return isinstance(other, DensePolynomial) and _is_outer(other.var, self.var)

    def _mod(self, other):
        if self._same(other) and other.modulus != self.modulus:
            if self.modulus is None or other.modulus is None:
                return self.modulus or other.modulus
            raise InvalidArgument("polynomials over different moduli")
        return self.modulus

    def __add__(self, other):
        if self._inner_to(other):
            return other + self
        if self._same(other):
            a, b = self.coeffs, other.coeffs
            n = max(len(a), len(b))
            out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
            return self._new(out, self._mod(other))
        if not self.coeffs:
            return self._new([other])
        return self._new((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._inner_to(other):
            return other._new([self * c for c in other.coeffs])
        if self._same(other):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return self._new([], self._mod(other))
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x == 0:
                    continue
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return self._new(out, self._mod(other))
        return self._new([c * other for c in self.coeffs])

    def __rmul__(self, other):
        if self._inner_to(other):
            return other._new([c * self for c in other.coeffs])
        return self._new([other * c for c in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidArgument("negative power of a polynomial")
        result = self._new([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, DensePolynomial):
            if other.var != self.var:
                if self._inner_to(other):
                    return len(other.coeffs) <= 1 and other[0] == self
                return len(self.coeffs) <= 1 and self[0] == other
            return len(self.coeffs) == len(other.coeffs) and all(
                x == y for x, y in zip(self.coeffs, other.coeffs))
        # comparison with a scalar
        if len(self.coeffs) > 1:
            return False
        return self[0] == other

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        if self.modulus is not None and isinstance(acc, int):
            acc %= self.modulus
        return acc

    def map(self, f) -> "DensePolynomial":
        return self._new([f(c) for c in self.coeffs])

    def truncate(self, n: int) -> "DensePolynomial":
        return self._new(self.coeffs[:n])

    def shift(self, k: int) -> "DensePolynomial":
        """Multiply by var**k."""
        return self._new([0] * k + list(self.coeffs)) if self.coeffs else self

    def reduce(self, m: int) -> "DensePolynomial":
        """Reduce integer coefficients (recursively) modulo m."""
        return DensePolynomial(
            [c.reduce(m) if isinstance(c, DensePolynomial) else c for c in self.coeffs], self.var, m)

    def exact_div(self, other) -> "DensePolynomial":
        """Quotient of an exact division (Z, Q or Z/m coefficients)."""
        if not self._same(other):
            return self._new([_div_scalar(c, other, self.modulus) for c in self.coeffs])
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            if rem:
                raise InvalidArgument("division is not exact")
            return self._new([])
        q = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = _div_scalar(rem[k + len(other.coeffs) - 1], lead, self.modulus)
            q[k] = c
            if c == 0:
                continue
            for i, y in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * y
        if any(self._new(rem[: len(other.coeffs) - 1]).coeffs):
            raise InvalidArgument("division is not exact")
        return self._new(q)

    def canonical(self) -> str:
        return "[" + ",".join(_canon(c) for c in self.coeffs) + "]"

    __str__ = canonical

    def __repr__(self):
        mod = f" mod {self.modulus}" if self.modulus else ""
        return f"DensePolynomial({self.var}: {self.canonical()}{mod})"


def _div_scalar(c, d, modulus):
    if isinstance(c, DensePolynomial):
        return c.exact_div(d)
    if modulus is not None:
        return c * pow(d, -1, modulus) % modulus
    if isinstance(c, int) and isinstance(d, int):
        q, r = divmod(c, d)
        if r:
            raise InvalidArgument("division is not exact")
        return q
    return c / d


def _unit_inverse(c, modulus):
    """Inverse of a ring element used as a leading/constant coefficient."""
    try:
        if isinstance(c, DensePolynomial):
            if c.degree > 0:
                raise NotInvertible(f"non-constant polynomial {c!r}")
            if c.degree < 0:
                raise NotInvertible("zero")
            return DensePolynomial([_unit_inverse(c[0], c.modulus)], c.var, c.modulus)
        if isinstance(c, int):
            if modulus is not None:
                return pow(c, -1, modulus)
            if c in (1, -1):
                return c
            raise NotInvertible(f"{c} is not a unit of Z")
        if isinstance(c, Fraction):
            if c == 0:
                raise NotInvertible("zero")
            return 1 / c
        if hasattr(c, "inverse"):
            return c.inverse()
    except (ValueError, ZeroDivisionError) as exc:
        raise NotInvertible(str(exc)) from exc
    raise NotInvertible(f"cannot invert {c!r}")


class TruncatedSeries:
    """Power series in ``var`` known up to (excluding) var**precision."""

    __slots__ = ("coeffs", "precision", "var", "modulus")

    def __init__(self, coeffs, precision: int, var: str = "z", modulus: int | None = None):
        if precision < 1:
            raise InvalidArgument("precision must be positive")
        cs = list(coeffs)[:precision]
        cs += [0] * (precision - len(cs))
        if modulus is not None:
            cs = [c % modulus if isinstance(c, int) else c for c in cs]
        self.coeffs = cs
        self.precision = precision
        self.var = var
        self.modulus = modulus

    @classmethod
    def from_polynomial(cls, poly: DensePolynomial, precision: int) -> "TruncatedSeries":
        return cls(poly.coeffs, precision, poly.var, poly.modulus)

    def _new(self, coeffs, precision=None):
        return TruncatedSeries(coeffs, precision or self.precision, self.var, self.modulus)

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __len__(self):
        return self.precision

    def _as_coeffs(self, other):
        if isinstance(other, TruncatedSeries):
            return other.coeffs, min(self.precision, other.precision)
        if isinstance(other, DensePolynomial) and other.var == self.var:
            return list(other.coeffs), self.precision
        return None, self.precision

    def __add__(self, other):
        cs, prec = self._as_coeffs(other)
        if cs is None:
            return self._new([self.coeffs[0] + other] + self.coeffs[1:])
        return self._new([self.coeffs[i] + (cs[i] if i < len(cs) else 0) for i in range(prec)], prec)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        cs, prec = self._as_coeffs(other)
        if cs is None:
            return self._new([c * other for c in self.coeffs])
        out = [0] * prec
        for i, x in enumerate(self.coeffs[:prec]):
            if x == 0:
                continue
            for j in range(min(len(cs), prec - i)):
                y = cs[j]
                if y == 0:
                    continue
                out[i + j] = out[i + j] + x * y
        return self._new(out, prec)

    def __rmul__(self, other):
        if isinstance(other, DensePolynomial) and other.var == self.var:
            return self * other
        return self._new([other * c for c in self.coeffs])

    def inverse(self) -> "TruncatedSeries":
        return series_of_rational(DensePolynomial([1], self.var, self.modulus), self, self.precision)

    def __truediv__(self, other):
        return series_of_rational(self, other, self.precision)

    def map(self, f) -> "TruncatedSeries":
        return self._new([f(c) for c in self.coeffs])

    def first_difference(self, other):
        """Index of the first differing coefficient, or None."""
        prec = min(self.precision, other.precision)
        for i in range(prec):
            if not (self.coeffs[i] == other.coeffs[i]):
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.first_difference(other) is None

    def canonical(self) -> str:
        return "[" + ",".join(_canon(c) for c in self.coeffs) + f"]+O({self.var}^{self.precision})"

    __str__ = canonical

    def __repr__(self):
        return f"TruncatedSeries({self.canonical()})"


def series_of_rational(numerator, denominator, precision: int) -> TruncatedSeries:
    """Expand numerator/denominator as a power series to the given precision.

    Long division: only the first deg(denominator) coefficients of the
    denominator enter each step, so sparse low-degree denominators are cheap.
    """
    num = list(numerator.coeffs)
    den = list(denominator.coeffs)
    var = numerator.var if isinstance(numerator, (DensePolynomial, TruncatedSeries)) else "z"
    modulus = numerator.modulus or denominator.modulus
    if not den or den[0] == 0:
        raise NotInvertible("denominator has zero constant term")
    inv0 = _unit_inverse(den[0], modulus)
    if isinstance(denominator, TruncatedSeries):
        den = den[: denominator.precision]
        precision = min(precision, denominator.precision)
    if isinstance(numerator, TruncatedSeries):
        precision = min(precision, numerator.precision)
    out = []
    for k in range(precision):
        acc = num[k] if k < len(num) else 0
        for i in range(1, min(k, len(den) - 1) + 1):
            d = den[i]
            if d == 0:
                continue
            acc = acc - d * out[k - i]
        q = acc * inv0
        if modulus is not None and isinstance(q, int):
            q %= modulus
        out.append(q)
    return TruncatedSeries(out, precision, var, modulus)


# -- generating series of weighted Stirling and Bell polynomials --------------

def _lam(lam, modulus):
    return DensePolynomial.gen("l", modulus) if lam is None else lam


def gf_stirling(j: int, precision: int, lam=None, modulus: int | None = None) -> TruncatedSeries:
    """sum_n R(n, j, lam) z^n from its product form.

    Coefficients are polynomials in ``l`` (lambda) unless ``lam`` is given.
    """
    L = _lam(lam, modulus)
    z = DensePolynomial.gen("z", modulus)
    den = DensePolynomial([1], "z", modulus) - z * L
    for i in range(1, j + 1):
        den = den * (DensePolynomial([1], "z", modulus) - z * (L + i))
    num = DensePolynomial.monomial(1, j, "z", modulus)
    return series_of_rational(num, den, precision)


def gf_bell(precision: int, x_degree: int | None = None, lam=None, modulus: int | None = None,
            rational: bool = False, skip_terms=()) -> TruncatedSeries:
    """F(x, lam, z) = 1/(1 - lam z) * sum_n prod_{j=1}^n x z / (1 - (lam + j) z).

    Coefficients of z^k are polynomials in ``x`` whose coefficients are
    polynomials in ``l`` (lambda symbolic) or numbers when ``lam`` is given.
    Terms n >= x_degree are dropped since they only contribute x^n.
    """
    one = Fraction(1) if rational else 1
    L = _lam(lam, modulus)
    xvar = DensePolynomial.gen("x", modulus)
    nterms = precision if x_degree is None else min(precision, x_degree)
    term = TruncatedSeries([DensePolynomial([one], "x", modulus)], precision, "z", modulus)
    total = term if 0 not in skip_terms else term * 0
    for n in range(1, nterms):
        # term *= x z / (1 - (lam + n) z)
        shifted = TruncatedSeries([0] + [c * xvar for c in term.coeffs[:-1]], precision, "z", modulus)
        den = DensePolynomial([1, -(L + n)], "z", modulus)
        term = series_of_rational(shifted, den, precision)
        if n not in skip_terms:
            total = total + term
    den = DensePolynomial([1, -L], "z", modulus)
    result = series_of_rational(total, den, precision)
    if x_degree is not None:
        result = result.map(lambda c: c.truncate(x_degree) if isinstance(c, DensePolynomial) else c)
    return result


class IdentityCheck(NamedTuple):
    holds: bool
    witness: tuple | None = None  # (z power, x power, lhs coefficient, rhs coefficient)


def _bell_series(precision, lam=None, modulus=None, x_degree=None, rational=False):
    """F from the Stirling-table definition of b_n(x, lam) (independent of gf_bell)."""
    from . import bell

    coeffs = []
    for n in range(precision):
        b = bell.bell_poly(n, lam=lam, modulus=modulus)
        if rational:
            b = b.map(lambda c: c.map(Fraction) if isinstance(c, DensePolynomial) else Fraction(c))
        if x_degree is not None:
            b = b.truncate(x_degree)
        coeffs.append(b)
    return TruncatedSeries(coeffs, precision, "z", modulus)


def _compare(lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityCheck:
    k = lhs.first_difference(rhs)
    if k is None:
        return IdentityCheck(True)
    a, b = lhs[k], rhs[k]
    if isinstance(a, DensePolynomial) or isinstance(b, DensePolynomial):
        a = a if isinstance(a, DensePolynomial) else DensePolynomial([a], "x")
        b = b if isinstance(b, DensePolynomial) else DensePolynomial([b], "x")
        for i in range(max(len(a), len(b))):
            if not (a[i] == b[i]):
                return IdentityCheck(False, (k, i, _canon(a[i]), _canon(b[i])))
    return IdentityCheck(False, (k, 0, _canon(a), _canon(b)))


def mezo_rhs(x_degree: int, precision: int, lam=None, skip_terms=()) -> TruncatedSeries:
    """e^{-x} sum_n x^n / ((1 - (lam + n) z) n!) to O(x^K, z^N) over Q."""
    L = _lam(lam, None)
    exp_neg = DensePolynomial([Fraction((-1) ** i, _fact(i)) for i in range(x_degree)], "x")
    coeffs = []
    for k in range(precision):
        acc = DensePolynomial([], "x")
        for n in range(x_degree):
            if n in skip_terms:
                continue
            acc = acc + DensePolynomial.monomial((L + n) ** k * Fraction(1, _fact(n)), n, "x")
        coeffs.append((acc * exp_neg).truncate(x_degree))
    return TruncatedSeries(coeffs, precision, "z")


def verify_mezo(x_degree: int, precision: int, skip_terms=()) -> IdentityCheck:
    """Compare F(x, lam, z) against the exponential-sum form, lam symbolic."""
    lhs = _bell_series(precision, x_degree=x_degree, rational=True)
    return _compare(lhs, mezo_rhs(x_degree, precision, skip_terms=skip_terms))


def rationality_modulus(n: int, p: int | None) -> int:
    """Integer modulus realizing the congruence: n, or the p-part of np/2."""
    if p is None:
        return n
    return p ** (valuation(n, p) + (0 if p == 2 else 1))


def rationality_rhs(n: int, precision: int, p: int | None = None, lam=None, variant: str = "proof"):
    """Right-hand rational function of either congruence, expanded as a series.

    ``variant="proof"`` uses products up to j = n (resp. np); ``"display"``
    stops one short and starts the first denominator at j = 0.
    """
    if variant not in ("proof", "display"):
        raise InvalidArgument(f"unknown variant {variant!r}")
    m = rationality_modulus(n, p)
    L = _lam(lam, m)
    one = DensePolynomial([1], "z", m)
    z = DensePolynomial.gen("z", m)
    xz = z * DensePolynomial.gen("x", m)
    top = n if p is None else n * p
    hi = top if variant == "proof" else top - 1

    def factor(j):
        return one - z * (L + j)

    num = DensePolynomial([], "z", m)
    tail = one  # prod_{j=k+1}^{hi} factor(j), built from k = hi downward
    tails = {}
    for k in range(hi, -1, -1):
        tails[k] = tail
        tail = tail * factor(k) if k >= 1 else tail
    for k in range(top):
        num = num + xz ** k * tails.get(k, one)
    if p is None:
        den = one
        for j in (range(1, n + 1) if variant == "proof" else range(n)):
            den = den * factor(j)
        den = den - xz ** n
    else:
        den = (one - z ** (p - 1)) ** n - xz ** (n * p)
    return series_of_rational(num, den, precision)


def rationality_congruence(n: int, precision: int = 30, p: int | None = None, r: int | None = None,
                           variant: str = "proof") -> IdentityCheck:
    """(1 - lam z) F == rational expression, coefficientwise mod the modulus.

    With ``p`` None this is the mod-n form with lambda symbolic (or lam = r
    when ``r`` is given); with ``p`` it is the np-form at lam = r.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    if p is not None and r is None:
        raise InvalidArgument("the np-form needs an integer r")
    if variant not in ("proof", "display"):
        raise InvalidArgument(f"unknown variant {variant!r}")
    m = rationality_modulus(n, p)
    if m == 1:
        return IdentityCheck(True)  # zero ring
    lam = r
    F = _bell_series(precision, lam=lam, modulus=m)
    L = _lam(lam, m)
    lhs = F * DensePolynomial([1, -L], "z", m)
    rhs = rationality_rhs(n, precision, p, lam, variant)
    return _compare(_reduce_series(lhs, m), _reduce_series(rhs, m))


def _reduce_series(s: TruncatedSeries, m: int) -> TruncatedSeries:
    return s.map(lambda c: c.reduce(m) if isinstance(c, DensePolynomial) else c % m)


def touchard_extraction(p: int, precision: int = 30) -> list[tuple[int, object, object]]:
    """(k, [z^{k+p}] g F, b_{k+p} - b_{k+1} - x^p b_k) mod p for each k.

    g = 1 - z^{p-1} - (xz)^p is the n = 1, r = 0 denominator; its product
    with F has degree < p, so both entries must vanish.
    """
    from . import bell

    den = rationality_rhs_denominator(p)
    F = _bell_series(precision, lam=0, modulus=p)
    prod = _reduce_series(F * den, p)
    xp = DensePolynomial.monomial(1, p, "x", p)
    out = []
    for k in range(precision - p):
        touch = (bell.bell_poly(k + p, lam=0, modulus=p) - bell.bell_poly(k + 1, lam=0, modulus=p)
                 - xp * bell.bell_poly(k, lam=0, modulus=p))
        out.append((k, prod[k + p], touch))
    return out


def touchard_from_rationality(p: int, precision: int = 30) -> IdentityCheck:
    """Read the Touchard congruence off the n = 1, r = 0 rational form."""
    for k, got, touch in touchard_extraction(p, precision):
        if not (got == touch) or not (touch == 0):
            return IdentityCheck(False, (k + p, 0, _canon(got), _canon(touch)))
    return IdentityCheck(True)


def rationality_rhs_denominator(p: int, n: int = 1) -> DensePolynomial:
    """(1 - z^{p-1})^n - (xz)^{np} over Z/p^{1+v_p(n)}."""
    m = rationality_modulus(n, p)
    one = DensePolynomial([1], "z", m)
    z = DensePolynomial.gen("z", m)
    xz = z * DensePolynomial.gen("x", m)
    return (one - z ** (p - 1)) ** n - xz ** (n * p)


def deformation_identity(p: int, n: int) -> bool:
    """Both sides of the j -> np - j reflection agree in (Z/p)[x, z]."""
    lhs, rhs = deformation_sides(p, n)
    return lhs == rhs


def deformation_sides(p: int, n: int) -> tuple[DensePolynomial, DensePolynomial]:
    N = n * p
    one = DensePolynomial([1], "z", p)
    z = DensePolynomial.gen("z", p)
    xz = z * DensePolynomial.gen("x", p)
    # suffix products prod_{j=k+1}^{N-1} (1 - jz) and prefix prod_{j=1}^{k} (1 + jz)
    suffix = [one] * N
    for k in range(N - 2, -1, -1):
        suffix[k] = suffix[k + 1] * (one - z * (k + 1))
    prefix = [one] * N
    for k in range(1, N):
        prefix[k] = prefix[k - 1] * (one + z * k)
    lhs = DensePolynomial([], "z", p)
    rhs = DensePolynomial([], "z", p)
    for k in range(N):
        lhs = lhs + xz ** k * suffix[k]
        rhs = rhs + xz ** (N - k - 1) * prefix[k]
    return lhs, rhs


def separable_factorization(p: int, n: int) -> bool:
    """(z^p - z)^n - x^{np} == prod_m ((z^p - z) - (zeta^m x)^p) over F_{p^f}."""
    lhs, rhs = separable_sides(p, n)
    return lhs == rhs


def separable_sides(p: int, n: int) -> tuple[DensePolynomial, DensePolynomial]:
    from .ffield import cyclotomic_context

    ctx, zeta = cyclotomic_context(p, n)
    one_f = ctx.one
    x = DensePolynomial([0, one_f], "x", p)
    w = DensePolynomial.monomial(one_f, p, "z", p) - DensePolynomial.monomial(one_f, 1, "z", p)
    lhs = w ** n - DensePolynomial([x ** (n * p)], "z", p)
    rhs = DensePolynomial([one_f], "z", p)
    for m in range(1, n + 1):
        rhs = rhs * (w - DensePolynomial([(x * zeta ** m) ** p], "z", p))
    return lhs, rhs


def _flatten(c, mono=()):
    if isinstance(c, DensePolynomial):
        for i, cc in enumerate(c.coeffs):
            yield from _flatten(cc, mono + ((c.var, i),) if i else mono)
    else:
        yield mono, c


def render(value) -> str:
    """Normal form of a (nested) polynomial as a sum of monomials.

    Equal values render identically regardless of how they are nested, so
    the strings can be compared directly.  Example: ``2*x^2*l + x + 1``.
    """
    terms: dict = {}
    for mono, c in _flatten(value):
        key = tuple(sorted(mono, key=lambda vi: (_VAR_RANK.get(vi[0], 9), vi[0])))
        terms[key] = terms[key] + c if key in terms else c
    parts = []
    names = sorted({v for k in terms for v, _ in k}, key=lambda v: (_VAR_RANK.get(v, 9), v))

    def weight(key):
        exps = dict(key)
        return (-sum(exps.values()), tuple(-exps.get(v, 0) for v in names))

    order = sorted(terms, key=weight)
    for key in order:
        c = terms[key]
        if c == 0:
            continue
        mono = "*".join(v if i == 1 else f"{v}^{i}" for v, i in key)
        cs = _canon(c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts) if parts else "0"
