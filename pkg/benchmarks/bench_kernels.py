"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--suite]

Kernel timings use both modules directly; ``--suite`` also times a default
``verify`` run in a subprocess per backend (BELLTRACE_PURE=1 forces the
fallback).
"""
import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from belltrace import _kernels_py as pure
from belltrace import kernels
from belltrace.arith import tau, zeta_exponent


def cases():
    rng = random.Random(1)
    for p in (13, 31, 61):
        base = [rng.randrange(p) for _ in range(p)]
        yield f"trinomial_powmod p={p} e=Z_1", "trinomial_powmod", (base, zeta_exponent(p, 1), p, 1, p)
        yield f"trinomial_powmod p={p} e=tau_1", "trinomial_powmod", (base, tau(p, 1), p, 1, p)
    p = 61
    a = [rng.randrange(p) for _ in range(400)]
    b = [rng.randrange(p) for _ in range(400)]
    yield "poly_mul 400x400 p=61", "poly_mul", (a, b, p)
    yield "taylor_shift deg 60 p=61", "taylor_shift", (a[:61], 7, p)
    mod = [rng.randrange(p) for _ in range(25)] + [1]
    yield "powmod deg 25 p=61 e~2^256", "powmod", (a[:25], 2**256 - 189, mod, p)


def best_of(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    n, _ = timer.autorange()
    return min(timer.repeat(repeat, n)) / n


def bench_kernels(repeat):
    comp = kernels.compiled
    print(f"{'kernel':36} {'python':>12} {'compiled':>12} {'speedup':>8}")
    for label, name, args in cases():
        tp = best_of(getattr(pure, name), args, repeat)
        if comp is None:
            print(f"{label:36} {tp * 1e3:10.3f}ms {'n/a':>12}")
            continue
        assert getattr(comp, name)(*args) == getattr(pure, name)(*args)
        tc = best_of(getattr(comp, name), args, repeat)
        print(f"{label:36} {tp * 1e3:10.3f}ms {tc * 1e3:10.3f}ms {tp / tc:7.1f}x")


def bench_suite():
    for label, env in (("compiled", {}), ("python", {"BELLTRACE_PURE": "1"})):
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "belltrace", "verify", "--output", os.devnull],
                              env={**os.environ, **env}, capture_output=True, text=True)
        dt = time.perf_counter() - t0
        print(f"full verify ({label}): {dt:.1f}s, {proc.stderr.strip()}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--suite", action="store_true", help="also time full verify runs")
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    bench_kernels(args.repeat)
    if args.suite:
        bench_suite()


if __name__ == "__main__":
    main()
