"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``BELLTRACE_PURE=1`` to force the fallback (used by the benchmark and by
the cross-check tests).
"""
import os

from . import _kernels_py as pure

compiled = None
if os.environ.get("BELLTRACE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

# Compiled kernels accumulate in int64; fall back beyond that range.
_C_PRIME_LIMIT = 1 << 24


def _pick(p):
    return _impl if p < _C_PRIME_LIMIT else pure


def poly_mul(a, b, p):
    return _pick(p).poly_mul(a, b, p)


def trinomial_mulmod(a, b, d, c, p):
    return _pick(p).trinomial_mulmod(a, b, d, c, p)


def trinomial_powmod(base, e, d, c, p):
    if e < 0:
        raise ValueError("negative exponent")
    return _pick(p).trinomial_powmod(base, e, d, c, p)


def mulmod(a, b, mod, p):
    return _pick(p).mulmod(a, b, mod, p)


def powmod(base, e, mod, p):
    if e < 0:
        raise ValueError("negative exponent")
    return _pick(p).powmod(base, e, mod, p)


def taylor_shift(a, c, p):
    return _pick(p).taylor_shift(a, c, p)
