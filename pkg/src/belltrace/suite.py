"""Suite runner: expands a config into check tasks, runs them, emits records.

Output order depends only on the config: tasks are merged in submission
order and then stably sorted by statement and parameters.
"""
from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from . import checks
from .arith import InvalidArgument, primes_between
from .checks import STATEMENTS, VerificationRecord

# Default prime ceilings per statement; an explicit pmax replaces them.
DEFAULT_PMAX = {
    "MAIN_1": 61, "CONSTANT_IN_A": 61, "BELL_TRACE": 61, "BELL_FACTORIAL": 61,
    "TRACE_FORMULA": 13, "INTERMEDIATE": 7, "SEPARABLE": 7, "DEFORMATION": 7,
    "SHIFTED_HANKEL": 7, "RATIONALITY": 7, "TOUCHARD_1": 11, "TOUCHARD_2": 11,
    "INVERSE_LEMMA": 31, "POWER_SUM": 97, "TRACE_CALCULUS": 11, "MORDELL_CHOWLA": 97,
}
# Smallest prime each statement covers.
PMIN = {
    "MAIN_1": 5, "CONSTANT_IN_A": 5, "MORDELL_CHOWLA": 5, "BELL_TRACE": 5,
    "BELL_FACTORIAL": 3, "TRACE_CALCULUS": 3, "SHIFTED_HANKEL": 3, "RATIONALITY": 3,
}


@dataclass(frozen=True)
class SuiteConfig:
    statements: tuple[str, ...] = STATEMENTS
    pmin: int = 2
    pmax: int | None = None
    amax: int | None = None
    mmax: int | None = None
    nmax: int | None = None
    precision: int | None = None
    workers: int = 1

    def validate(self):
        unknown = [s for s in self.statements if s not in STATEMENTS]
        if unknown:
            raise InvalidArgument(f"unknown statement(s): {', '.join(unknown)}")
        for name in ("amax", "mmax", "nmax", "pmax"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise InvalidArgument(f"--{name} must be nonnegative")
        if self.pmin < 0:
            raise InvalidArgument("--pmin must be nonnegative")
        if self.precision is not None and self.precision < 1:
            raise InvalidArgument("--precision must be positive")
        if self.workers < 1:
            raise InvalidArgument("--workers must be positive")

    def primes(self, statement: str) -> list[int]:
        hi = self.pmax if self.pmax is not None else DEFAULT_PMAX.get(statement, 0)
        return primes_between(max(self.pmin, PMIN.get(statement, 2)), hi)

    def a_values(self, p: int, default: int) -> list[int]:
        hi = default if self.amax is None else self.amax
        return [a for a in range(1, hi + 1) if gcd(a, p) == 1]

    def n_values(self, default: int, lo: int = 1) -> list[int]:
        return list(range(lo, (default if self.nmax is None else self.nmax) + 1))

    def m_max(self, default: int) -> int:
        return default if self.mmax is None else self.mmax


def build_tasks(cfg: SuiteConfig) -> list[tuple[str, tuple]]:
    """(checker name, args) pairs in a fixed order."""
    tasks = []
    sel = set(cfg.statements)

    def add(name, *args):
        tasks.append((name, args))

    if "MAIN_1" in sel:
        for p in cfg.primes("MAIN_1"):
            for a in cfg.a_values(p, 2 * p):
                add("check_main", p, a)
    if "TRACE_FORMULA" in sel:
        for p in cfg.primes("TRACE_FORMULA"):
            if cfg.amax is None:
                avals = list(range(1, p)) + [p + 1]
            else:
                avals = cfg.a_values(p, cfg.amax)
            for a in avals:
                for m in range(cfg.m_max(3 * p) + 1):
                    add("check_trace_formula", p, a, m)
    if "BELL_TRACE" in sel:
        for p in cfg.primes("BELL_TRACE"):
            for a in cfg.a_values(p, 10):
                add("check_bell_trace", p, a)
    if "BELL_FACTORIAL" in sel:
        for p in cfg.primes("BELL_FACTORIAL"):
            for a in cfg.a_values(p, 10):
                add("check_bell_factorial", p, a)
    if "INVERSE_LEMMA" in sel:
        for p in cfg.primes("INVERSE_LEMMA"):
            for a in cfg.a_values(p, 12):
                add("check_inverse_lemma", p, a)
    touch = sel & {"TOUCHARD_1", "TOUCHARD_2"}
    if touch:
        ps = sorted(set(cfg.primes("TOUCHARD_1") if "TOUCHARD_1" in sel else [])
                    | set(cfg.primes("TOUCHARD_2") if "TOUCHARD_2" in sel else []))
        for p in ps:
            add("check_touchard", p, cfg.m_max(3 * p))
    if "RATIONALITY" in sel:
        prec = cfg.precision or 30
        for n in cfg.n_values(4):
            add("check_rationality", n, None, None, prec)
        for p in cfg.primes("RATIONALITY"):
            for n in cfg.n_values(4):
                for r in range(3):
                    add("check_rationality", n, p, r, prec)
            add("check_touchard_extraction", p, prec)
    gf = sel & {"MEZO", "GF_BELL", "GF_STIRLING"}
    if gf:
        add("check_gf_identities", 8, cfg.precision or 12)
    if "DEFORMATION" in sel:
        for p in cfg.primes("DEFORMATION"):
            for n in cfg.n_values(4):
                add("check_deformation", p, n)
    if "SEPARABLE" in sel:
        for p in cfg.primes("SEPARABLE"):
            for n in cfg.n_values(4):
                if n % p:
                    add("check_separable", p, n)
    if "INTERMEDIATE" in sel:
        for p in cfg.primes("INTERMEDIATE"):
            for n in cfg.n_values(4):
                if n % p == 0:
                    continue
                for a in cfg.a_values(p, p - 1):
                    for m in range(cfg.m_max(2 * p) + 1):
                        add("check_intermediate", p, n, m, a)
    if "TRACE_CALCULUS" in sel:
        for p in cfg.primes("TRACE_CALCULUS"):
            add("check_trace_calculus", p, -1, cfg.m_max(3 * p))
    if "POWER_SUM" in sel:
        for p in cfg.primes("POWER_SUM"):
            add("check_power_sums", p)
    if "CONSTANT_IN_A" in sel:
        for p in cfg.primes("CONSTANT_IN_A"):
            add("check_constant_in_a", p)
    if "MORDELL_CHOWLA" in sel:
        for p in cfg.primes("MORDELL_CHOWLA"):
            add("check_mordell_chowla", p)
    if "HANKEL" in sel:
        for n in cfg.n_values(7):
            add("check_hankel", n)
    if "SHIFTED_HANKEL" in sel:
        for p in cfg.primes("SHIFTED_HANKEL"):
            for a in cfg.a_values(p, 2):
                add("check_shifted_hankel", p, a, cfg.m_max(5))
    if "P2_REMARK" in sel and cfg.pmin <= 2 and (cfg.pmax is None or cfg.pmax >= 2):
        add("check_p2_remark")
    return tasks


def run_task(task) -> list[VerificationRecord]:
    name, args = task
    out = getattr(checks, name)(*args)
    return out if isinstance(out, list) else [out]


def _chunks(tasks, size):
    for i in range(0, len(tasks), size):
        yield tasks[i:i + size]


def _run_chunk(chunk):
    return [run_task(t) for t in chunk]


def _sort_key(rec: VerificationRecord):
    def k(v):
        return -1 if v is None else v
    return (STATEMENTS.index(rec.statement), k(rec.p), k(rec.a), k(rec.m), k(rec.n))


def run_suite(cfg: SuiteConfig) -> list[VerificationRecord]:
    cfg.validate()
    tasks = build_tasks(cfg)
    if cfg.workers == 1 or len(tasks) < 2:
        results = [run_task(t) for t in tasks]
    else:
        # contiguous chunks keep related instances (and their caches) together
        size = max(1, len(tasks) // (cfg.workers * 8))
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = [r for chunk in pool.map(_run_chunk, _chunks(tasks, size)) for r in chunk]
    sel = set(cfg.statements)
    records = [r for batch in results for r in batch if r.statement in sel]
    records.sort(key=_sort_key)
    return records


def format_json(records, timings: bool = False) -> str:
    return "".join(json.dumps(r.as_dict(timings), ensure_ascii=False) + "\n" for r in records)


def _short(s: str, width: int) -> str:
    return s if len(s) <= width else s[: width - 3] + "..."


def format_table(records, timings: bool = False) -> str:
    cols = ["statement", "p", "a", "m", "n", "lhs", "rhs", "pass"] + (["micros"] if timings else [])
    rows = []
    for r in records:
        d = r.as_dict(timings)
        row = ["" if d[c] is None else str(d[c]) for c in cols]
        row[5], row[6] = _short(row[5], 32), _short(row[6], 32)
        row[7] = "ok" if d["pass"] else "FAIL"
        rows.append(row)
    widths = [max([len(c)] + [len(row[i]) for row in rows]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
    npass = sum(r.passed for r in records)
    lines.append(f"{npass}/{len(records)} passed")
    return "\n".join(lines) + "\n"


def summary_line(records) -> str:
    bad = sum(not r.passed for r in records)
    return f"{len(records)} records, {bad} failed"


def emit(records, fmt: str = "json", out=None, timings: bool = False):
    out = out or sys.stdout
    text = format_json(records, timings) if fmt == "json" else format_table(records, timings)
    out.write(text)
