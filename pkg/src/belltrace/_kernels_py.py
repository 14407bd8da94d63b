"""Pure-Python kernels over F_p[t]; same signatures as the compiled module.

Polynomials are lists of ints in [0, p), lowest degree first.  Products use
Kronecker substitution so the inner loop runs inside CPython's bigint
multiply.
"""


def poly_mul(a, b, p):
    if not a or not b:
        return []
    a = [x % p for x in a]
    b = [x % p for x in b]
    n = min(len(a), len(b))
    width = (((p - 1) ** 2 * n).bit_length() + 8) // 8
    A = int.from_bytes(b"".join(x.to_bytes(width, "little") for x in a), "little")
    B = int.from_bytes(b"".join(x.to_bytes(width, "little") for x in b), "little")
    size = len(a) + len(b) - 1
    raw = (A * B).to_bytes(size * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") % p for i in range(size)]


def _reduce_trinomial(r, d, c, p):
    for k in range(len(r) - 1, d - 1, -1):
        ck = r[k] % p
        if ck:
            r[k - d + 1] += ck
            r[k - d] += c * ck
    out = [x % p for x in r[:d]]
    out.extend([0] * (d - len(out)))
    return out


def trinomial_mulmod(a, b, d, c, p):
    """a*b mod (t^d - t - c)."""
    return _reduce_trinomial(poly_mul(a, b, p), d, c, p)


def trinomial_powmod(base, e, d, c, p):
    result = [1] + [0] * (d - 1)
    base = _reduce_trinomial(list(base), d, c, p)
    for bit in bin(e)[2:]:
        result = _reduce_trinomial(poly_mul(result, result, p), d, c, p)
        if bit == "1":
            result = _reduce_trinomial(poly_mul(result, base, p), d, c, p)
    return result


def _reduce_monic(r, mod, p):
    d = len(mod) - 1
    for k in range(len(r) - 1, d - 1, -1):
        q = r[k] % p
        if q:
            off = k - d
            for i in range(d):
                if mod[i]:
                    r[off + i] -= q * mod[i]
        r[k] = 0
    out = [x % p for x in r[:d]]
    out.extend([0] * (d - len(out)))
    return out


def mulmod(a, b, mod, p):
    """a*b mod a monic polynomial ``mod`` (given with its leading 1)."""
    return _reduce_monic(poly_mul(a, b, p), mod, p)


def powmod(base, e, mod, p):
    d = len(mod) - 1
    result = _reduce_monic([1], mod, p)
    base = _reduce_monic(list(base), mod, p)
    for bit in bin(e)[2:]:
        result = _reduce_monic(poly_mul(result, result, p), mod, p)
        if bit == "1":
            result = _reduce_monic(poly_mul(result, base, p), mod, p)
    return result + [0] * (d - len(result))


def taylor_shift(a, c, p):
    """Coefficients of a(t + c) mod p."""
    out = [0] * len(a)
    for coef in reversed(a):
        # out = out * (t + c) + coef
        carry = 0
        for i in range(len(out)):
            cur = out[i]
            out[i] = (cur * c + carry) % p
            carry = cur
        out[0] = (out[0] + coef) % p
    return out
