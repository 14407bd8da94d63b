"""Stirling numbers, weighted Bell polynomials and Hankel determinants.

``bell_poly(n)`` is b_n(x, lambda) = sum_j R(n, j, lambda) x^j, where the
weighted Stirling polynomials satisfy
R(n, j) = (lambda + j) R(n-1, j) + R(n-1, j-1).  Values at astronomically
large n are only available mod p, through the order-p recurrence
b_{n+p} = b_{n+1} + x^p b_n.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb

from . import kernels
from .arith import InvalidArgument, require_prime
from .polyring import DensePolynomial

EXACT_INDEX_CAP = 64
BOX_PARTITION_CAP = 10


@lru_cache(maxsize=None)
def stirling_table(n_max: int, modulus: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Rows S(n, 0..n) for n <= n_max, optionally reduced mod ``modulus``."""
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for j in range(1, n + 1):
            v = (j * prev[j] if j < len(prev) else 0) + prev[j - 1]
            row[j] = v % modulus if modulus else v
        rows.append(tuple(row))
    return tuple(rows)


def stirling2(n: int, j: int) -> int:
    if j < 0 or j > n:
        return 0
    return stirling_table(n)[n][j]


_ROWS: dict = {}


def _weighted_rows(n: int, lam, modulus):
    """Rows of R(k, j, lam) for k <= n; lam None means the symbolic lambda."""
    key = (lam, modulus)
    rows = _ROWS.get(key)
    if rows is None:
        rows = _ROWS[key] = [[1]]
    L = DensePolynomial.gen("l", modulus) if lam is None else lam
    while len(rows) <= n:
        prev = rows[-1]
        k = len(rows)
        row = []
        for j in range(k + 1):
            v = (L + j) * prev[j] if j < len(prev) else 0
            if j:
                v = v + prev[j - 1]
            if modulus is not None and isinstance(v, int):
                v %= modulus
            row.append(v)
        rows.append(row)
    return rows


def weighted_stirling(n: int, j: int, modulus: int | None = None, lam=None):
    """R(n, j, lambda) as a polynomial in ``l``, or its value at ``lam``."""
    if n < 0 or j < 0:
        raise InvalidArgument("indices must be nonnegative")
    if j > n:
        return DensePolynomial([], "l", modulus) if lam is None else 0
    if modulus is None and n > EXACT_INDEX_CAP:
        raise InvalidArgument(f"exact computation capped at n <= {EXACT_INDEX_CAP}")
    v = _weighted_rows(n, lam, modulus)[n][j]
    if lam is None and not isinstance(v, DensePolynomial):
        v = DensePolynomial([v], "l", modulus)
    return v


def weighted_stirling_by_sum(n: int, j: int) -> DensePolynomial:
    """sum_m C(n, m) S(m, j) lambda^(n-m), the defining sum."""
    out = [0] * (n + 1)
    for m in range(j, n + 1):
        out[n - m] += comb(n, m) * stirling2(m, j)
    return DensePolynomial(out, "l")


def bell_poly(n: int, x=None, lam=None, modulus: int | None = None):
    """b_n(x, lambda); ``None`` leaves that argument symbolic.

    Symbolic x gives a polynomial in ``x`` whose coefficients are
    polynomials in ``l`` (or numbers once ``lam`` is fixed).
    """
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    if modulus is None and n > EXACT_INDEX_CAP:
        raise InvalidArgument(f"exact computation capped at n <= {EXACT_INDEX_CAP}")
    row = _weighted_rows(n, lam, modulus)[n]
    if x is None:
        return DensePolynomial(row, "x", modulus)
    acc = 0
    for c in reversed(row):
        acc = acc * x + c
    if modulus is not None:
        acc = acc.reduce(modulus) if isinstance(acc, DensePolynomial) else acc % modulus
    return acc


def bell_number(n: int) -> int:
    return bell_poly(n, 1, 0)


def bell_by_convolution(n: int, modulus: int | None = None) -> DensePolynomial:
    """sum_m C(n, m) b_m(x) lambda^(n-m), nested as x over lambda."""
    acc = DensePolynomial([], "x", modulus)
    lam = DensePolynomial.gen("l", modulus)
    for m in range(n + 1):
        acc = acc + bell_poly(m, lam=0, modulus=modulus) * (lam ** (n - m) * comb(n, m))
    return acc


def bell_values_mod(p: int, x0: int, count: int) -> list[int]:
    """b_0(x0), ..., b_{count-1}(x0) mod p straight from the Stirling table."""
    table = stirling_table(max(count - 1, 0), p)
    out = []
    for n in range(count):
        acc = 0
        for c in reversed(table[n]):
            acc = (acc * x0 + c) % p
        out.append(acc)
    return out


def _recurrence_coords(p: int, x0: int, N: int) -> list[int]:
    # z^N mod (z^p - z - x0^p) over F_p
    return kernels.trinomial_powmod([0, 1], N, p, pow(x0, p, p), p)


def bell_eval_huge(p: int, x0: int, N: int) -> int:
    """b_N(x0) mod p for arbitrarily large N."""
    require_prime(p)
    if N < 0:
        raise InvalidArgument("N must be nonnegative")
    x0 %= p
    init = bell_values_mod(p, x0, p)
    if N < p:
        return init[N]
    coords = _recurrence_coords(p, x0, N)
    return sum(a * b for a, b in zip(coords, init)) % p


def bell_window(p: int, x0: int, start: int, count: int) -> list[int]:
    """b_start(x0), ..., b_{start+count-1}(x0) mod p."""
    require_prime(p)
    x0 %= p
    init = bell_values_mod(p, x0, p)
    c = pow(x0, p, p)
    coords = _recurrence_coords(p, x0, start)
    out = []
    for _ in range(count):
        out.append(sum(a * b for a, b in zip(coords, init)) % p)
        top = coords[-1]
        coords = [0] + coords[:-1]
        coords[1] = (coords[1] + top) % p
        coords[0] = (coords[0] + c * top) % p
    return out


def bareiss_det(matrix) -> object:
    """Fraction-free determinant over Z or Z[x] (exact divisions only)."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if not (a[i][k] == 0)), None)
            if swap is None:
                return 0 * a[0][0]
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if isinstance(num, DensePolynomial) else _idiv(num, prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def _idiv(a, b):
    if isinstance(b, DensePolynomial):
        return DensePolynomial([a], b.var).exact_div(b)
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("Bareiss division was not exact")
    return q


def det_mod_p(matrix, p: int) -> int:
    """Determinant over F_p by Gaussian elimination with row pivoting."""
    a = [[v % p for v in row] for row in matrix]
    n = len(a)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                a[i] = [(u - f * v) % p for u, v in zip(a[i], a[k])]
    return det % p


def hankel_det(n: int) -> DensePolynomial:
    """det (b_{i+j}(x))_{0 <= i, j < n} exactly over Z[x]."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    b = [bell_poly(k, lam=0) for k in range(2 * n - 1)]
    det = bareiss_det([[b[i + j] for j in range(n)] for i in range(n)])
    if not isinstance(det, DensePolynomial):
        det = DensePolynomial([det], "x")
    return det


def hankel_closed_form(n: int) -> DensePolynomial:
    from math import factorial, prod

    return DensePolynomial.monomial(prod(factorial(j) for j in range(n)), n * (n - 1) // 2, "x")


def shifted_hankel_det(p: int, m: int, x0: int) -> int:
    """det (b_{m+i+j}(x0))_{0 <= i, j < p} mod p."""
    vals = bell_window(p, x0, m, 2 * p - 1)
    return det_mod_p([[vals[i + j] for j in range(p)] for i in range(p)], p)


def count_box_partitions(n: int, j: int, r: int) -> int:
    """Brute-force count of ways to place 1..n into r labelled boxes (any
    content) plus exactly j unlabelled nonempty blocks."""
    if n > BOX_PARTITION_CAP:
        raise InvalidArgument(f"brute force limited to n <= {BOX_PARTITION_CAP}")
    if min(n, j, r) < 0:
        raise InvalidArgument("arguments must be nonnegative")

    total = 0
    for labels in product(range(r + 1), repeat=n):
        # label r marks elements that go into the unlabelled blocks
        rest = sum(1 for v in labels if v == r)
        total += sum(1 for part in set_partitions(rest) if len(part) == j)
    return total


def set_partitions(n: int):
    """All partitions of range(n) as lists of blocks (brute-force oracle)."""
    if n == 0:
        yield []
        return
    for part in set_partitions(n - 1):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [n - 1]] + part[i + 1:]
        yield part + [[n - 1]]
