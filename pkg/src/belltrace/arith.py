"""Integer and modular helpers.

Python ints already give arbitrary precision, so "big naturals" are plain
``int`` throughout the package.  :class:`ModInt` is a small residue type used
where a value is intrinsically "mod m".
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd


class InvalidArgument(ValueError):
    """Raised when an argument violates an operation's preconditions."""


class Unsupported(ValueError):
    """Raised for parameter ranges a statement does not cover (e.g. p <= 3)."""


# Deterministic Miller-Rabin witnesses, valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
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


def primes_between(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if is_prime(q)]


def require_prime(p: int, odd: bool = False) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgument(f"{p!r} is not a prime")
    if odd and p == 2:
        raise InvalidArgument("an odd prime is required")


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a small positive integer (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class ModInt:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidArgument("modulus must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _other(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise InvalidArgument("mixed moduli")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ModInt(self.residue + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ModInt(self.residue - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ModInt(o - self.residue, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ModInt(self.residue * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.residue, self.modulus)

    def __pow__(self, e: int):
        return ModInt(pow(self.residue, e, self.modulus), self.modulus)

    def inverse(self) -> "ModInt":
        return ModInt(pow(self.residue, -1, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return (self.residue - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __int__(self):
        return self.residue

    def __index__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.modulus})"


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) by Euler's criterion."""
    require_prime(p, odd=True)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def tau(p: int, a: int) -> int:
    """sum_{j=1}^{p-1} j * p^(j*a - 1)."""
    if a < 1:
        raise InvalidArgument("a must be positive")
    return sum(j * p ** (j * a - 1) for j in range(1, p))


def k_p(p: int) -> int:
    """(p^p - 1)/(p - 1), the order of the norm-one subgroup holding theta."""
    return (p**p - 1) // (p - 1)


def zeta_exponent(p: int, a: int) -> int:
    """Positive integer representing (1 - p^-a)^-1 modulo k_p.

    Equal to p^a * tau(p, a) exactly, hence congruent to it mod k_p.
    """
    if gcd(a, p) != 1:
        raise InvalidArgument(f"gcd({a}, {p}) != 1")
    if a < 1:
        raise InvalidArgument("a must be positive")
    return sum(j * p ** ((j + 1) * a - 1) for j in range(1, p))


def power_sum(j: int, p: int) -> ModInt:
    """S_j(p) = sum_{m=0}^{p-1} m^j reduced mod p (0^0 counts as 1)."""
    return ModInt(sum(pow(m, j, p) for m in range(p)), p)


@lru_cache(maxsize=None)
def _factorials_mod(p: int) -> tuple[int, ...]:
    out = [1]
    for i in range(1, p):
        out.append(out[-1] * i % p)
    return tuple(out)


def factorial(n: int, m: int) -> ModInt:
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    if n >= m:
        return ModInt(0, m)
    if m < 1 << 20:
        return ModInt(_factorials_mod(m)[n], m)
    acc = 1
    for i in range(2, n + 1):
        acc = acc * i % m
    return ModInt(acc, m)


def _binomial_small(n: int, k: int, m: int) -> int:
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num = num * (n - i) % m
        den = den * (i + 1) % m
    return num * pow(den, -1, m) % m


def binomial(n: int, k: int, m: int) -> ModInt:
    """C(n, k) mod m; Lucas' theorem when m is prime, exact otherwise."""
    if k < 0 or k > n:
        return ModInt(0, m)
    if m > 1 and is_prime(m):
        acc = 1
        while n or k:
            ni, ki = n % m, k % m
            if ki > ni:
                return ModInt(0, m)
            acc = acc * _binomial_small(ni, ki, m) % m
            n //= m
            k //= m
        return ModInt(acc, m)
    from math import comb

    return ModInt(comb(n, k), m)


def multiplicative_order(b: int, n: int) -> int:
    """Order of b in (Z/n)^x; order 1 for n == 1."""
    if n == 1:
        return 1
    if gcd(b, n) != 1:
        raise InvalidArgument(f"{b} is not a unit mod {n}")
    k, x = 1, b % n
    while x != 1:
        x = x * b % n
        k += 1
    return k


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
