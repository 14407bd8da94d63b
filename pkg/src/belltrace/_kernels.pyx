# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over F_p[t]; see _kernels_py for the reference versions.

Coefficients are held as C long longs.  Callers guarantee p < 2**31 and
len * p**2 < 2**62 so accumulations never overflow before reduction.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy

ctypedef long long i64


cdef i64* _alloc(Py_ssize_t n) except NULL:
    cdef i64* out = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    if out == NULL:
        raise MemoryError()
    return out


cdef i64* _to_c(list a, Py_ssize_t n, i64 p) except NULL:
    cdef i64* out = _alloc(n)
    cdef Py_ssize_t i, m = len(a)
    cdef i64 v
    for i in range(n):
        if i < m:
            v = (<i64> a[i]) % p
            out[i] = v + p if v < 0 else v
        else:
            out[i] = 0
    return out


cdef list _to_py(i64* a, Py_ssize_t n):
    cdef Py_ssize_t i
    return [a[i] for i in range(n)]


cdef void _mul(i64* a, Py_ssize_t na, i64* b, Py_ssize_t nb, i64* out, i64 p) nogil:
    # out must hold na + nb - 1 entries and must not alias a or b
    cdef Py_ssize_t i, j
    cdef i64 ai
    memset(out, 0, (na + nb - 1) * sizeof(i64))
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(nb):
            out[i + j] += ai * b[j]
    for i in range(na + nb - 1):
        out[i] %= p


cdef void _reduce_tri(i64* r, Py_ssize_t n, Py_ssize_t d, i64 c, i64 p) nogil:
    # in place modulo t^d - t - c; entries end in [0, p)
    cdef Py_ssize_t k
    cdef i64 ck
    for k in range(n - 1, d - 1, -1):
        ck = r[k] % p
        if ck:
            r[k - d + 1] = (r[k - d + 1] + ck) % p
            r[k - d] = (r[k - d] + c * ck) % p
        r[k] = 0


cdef void _reduce_gen(i64* r, Py_ssize_t n, i64* m, Py_ssize_t d, i64 p) nogil:
    # m is monic of degree d, stored as m[0..d]
    cdef Py_ssize_t k, i, off
    cdef i64 q, v
    for k in range(n - 1, d - 1, -1):
        q = r[k] % p
        if q:
            off = k - d
            for i in range(d):
                v = (r[off + i] - q * m[i]) % p
                r[off + i] = v + p if v < 0 else v
        r[k] = 0


def poly_mul(list a, list b, i64 p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef i64* ca = _to_c(a, na, p)
    cdef i64* cb = _to_c(b, nb, p)
    cdef i64* out = _alloc(na + nb - 1)
    try:
        _mul(ca, na, cb, nb, out, p)
        return _to_py(out, na + nb - 1)
    finally:
        free(ca); free(cb); free(out)


def trinomial_mulmod(list a, list b, Py_ssize_t d, i64 c, i64 p):
    cdef Py_ssize_t na = max(len(a), 1), nb = max(len(b), 1)
    cdef i64* ca = _to_c(a, na, p)
    cdef i64* cb = _to_c(b, nb, p)
    cdef i64* out = _alloc(max(na + nb - 1, d))
    c %= p
    try:
        memset(out, 0, max(na + nb - 1, d) * sizeof(i64))
        _mul(ca, na, cb, nb, out, p)
        _reduce_tri(out, na + nb - 1, d, c, p)
        return _to_py(out, d)
    finally:
        free(ca); free(cb); free(out)


def trinomial_powmod(list base, e, Py_ssize_t d, i64 c, i64 p):
    cdef Py_ssize_t nb = max(len(base), d)
    cdef i64* cb = _to_c(base, nb, p)
    cdef i64* res = _alloc(2 * d)
    cdef i64* tmp = _alloc(2 * d)
    c %= p
    try:
        _reduce_tri(cb, nb, d, c, p)
        memset(res, 0, 2 * d * sizeof(i64))
        res[0] = 1
        for ch in bin(e)[2:]:
            _mul(res, d, res, d, tmp, p)
            _reduce_tri(tmp, 2 * d - 1, d, c, p)
            if ch == "1":
                _mul(tmp, d, cb, d, res, p)
                _reduce_tri(res, 2 * d - 1, d, c, p)
            else:
                memcpy(res, tmp, d * sizeof(i64))
        return _to_py(res, d)
    finally:
        free(cb); free(res); free(tmp)


def mulmod(list a, list b, list mod, i64 p):
    cdef Py_ssize_t d = len(mod) - 1
    cdef Py_ssize_t na = max(len(a), 1), nb = max(len(b), 1)
    cdef Py_ssize_t n = max(na + nb - 1, d)
    cdef i64* ca = _to_c(a, na, p)
    cdef i64* cb = _to_c(b, nb, p)
    cdef i64* cm = _to_c(mod, d + 1, p)
    cdef i64* out = _alloc(n)
    try:
        memset(out, 0, n * sizeof(i64))
        _mul(ca, na, cb, nb, out, p)
        _reduce_gen(out, na + nb - 1, cm, d, p)
        return _to_py(out, d)
    finally:
        free(ca); free(cb); free(cm); free(out)


def powmod(list base, e, list mod, i64 p):
    cdef Py_ssize_t d = len(mod) - 1
    cdef Py_ssize_t nb = max(len(base), d)
    cdef i64* cb = _to_c(base, nb, p)
    cdef i64* cm = _to_c(mod, d + 1, p)
    cdef i64* res = _alloc(2 * d)
    cdef i64* tmp = _alloc(2 * d)
    try:
        _reduce_gen(cb, nb, cm, d, p)
        memset(res, 0, 2 * d * sizeof(i64))
        res[0] = 1
        _reduce_gen(res, 1, cm, d, p)
        for ch in bin(e)[2:]:
            _mul(res, d, res, d, tmp, p)
            _reduce_gen(tmp, 2 * d - 1, cm, d, p)
            if ch == "1":
                _mul(tmp, d, cb, d, res, p)
                _reduce_gen(res, 2 * d - 1, cm, d, p)
            else:
                memcpy(res, tmp, d * sizeof(i64))
        return _to_py(res, d)
    finally:
        free(cb); free(cm); free(res); free(tmp)


def taylor_shift(list a, i64 c, i64 p):
    cdef Py_ssize_t n = len(a), i, k
    cdef i64* ca = _to_c(a, n, p)
    cdef i64* out = _alloc(n)
    cdef i64 cur, carry
    c %= p
    if c < 0:
        c += p
    try:
        memset(out, 0, n * sizeof(i64))
        for k in range(n - 1, -1, -1):
            carry = 0
            for i in range(n):
                cur = out[i]
                out[i] = (cur * c + carry) % p
                carry = cur
            out[0] = (out[0] + ca[k]) % p
        return _to_py(out, n)
    finally:
        free(ca); free(out)
