"""Command line entry point: ``belltrace verify|trace|bell|class|unit``."""
from __future__ import annotations

import argparse
import ast
import json
import operator
import sys

from . import bell
from .arith import InvalidArgument, Unsupported, k_p, require_prime, tau, zeta_exponent
from .checks import STATEMENTS
from .ffield import pow_big, theta, trace
from .quadratic import class_number_imaginary, class_number_real, fundamental_unit
from .suite import SuiteConfig, emit, run_suite, summary_line

_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow, ast.Mod: operator.mod,
}


def parse_exponent(text: str, p: int) -> int:
    """Evaluate an integer expression such as ``tau(2)``, ``Z(1) - 1`` or ``kp``.

    Only integer literals, + - * // % **, unary minus, ``tau(a)``, ``Z(a)``
    and ``kp`` are accepted.
    """
    funcs = {"tau": lambda a: tau(p, a), "Z": lambda a: zeta_exponent(p, a)}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow) and (right < 0 or right > 10**6):
                raise InvalidArgument("exponent of ** out of range")
            return _BINOPS[type(node.op)](left, right)
        if isinstance(node, ast.Name) and node.id == "kp":
            return k_p(p)
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in funcs
                and len(node.args) == 1 and not node.keywords):
            return funcs[node.func.id](ev(node.args[0]))
        raise InvalidArgument(f"unsupported expression element: {ast.dump(node)[:40]}")

    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise InvalidArgument(f"cannot parse {text!r}") from exc
    return ev(tree)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="belltrace", description=__doc__)
    ap.add_argument("--format", choices=("json", "table"), default="json")
    ap.add_argument("--output", help="write the report to this file instead of stdout")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--statements", help="comma separated ids (default: all)")
    v.add_argument("--pmin", type=int, default=2)
    v.add_argument("--pmax", type=int)
    v.add_argument("--amax", type=int)
    v.add_argument("--mmax", type=int)
    v.add_argument("--nmax", type=int)
    v.add_argument("--precision", type=int)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="fill the micros field")
    v.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    v.add_argument("--output", default=argparse.SUPPRESS)

    t = sub.add_parser("trace", help="Tr(theta^e) in F_{p^p}")
    t.add_argument("p", type=int)
    t.add_argument("exponent", help="integer expression, e.g. 'Z(1)' or 'tau(2) - 1'")

    b = sub.add_parser("bell", help="b_N(x) mod p")
    b.add_argument("p", type=int)
    b.add_argument("x", type=int)
    b.add_argument("N", help="integer expression, e.g. 'tau(1)'")

    c = sub.add_parser("class", help="class number attached to p")
    c.add_argument("p", type=int)

    u = sub.add_parser("unit", help="fundamental unit of Q(sqrt p), p = 1 mod 4")
    u.add_argument("p", type=int)
    return ap


def _write(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _show(args, data: dict):
    if args.format == "json":
        _write(args, json.dumps(data) + "\n")
    else:
        _write(args, "".join(f"{k}: {v}\n" for k, v in data.items()))


def _verify(args) -> int:
    names = tuple(STATEMENTS)
    if args.statements:
        names = tuple(s.strip().upper() for s in args.statements.split(",") if s.strip())
    cfg = SuiteConfig(statements=names, pmin=args.pmin, pmax=args.pmax, amax=args.amax, mmax=args.mmax,
                      nmax=args.nmax, precision=args.precision, workers=args.workers)
    records = run_suite(cfg)
    if not records:
        print("warning: the selection produced no instances", file=sys.stderr)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            emit(records, args.format, fh, args.timings)
    else:
        emit(records, args.format, sys.stdout, args.timings)
    print(summary_line(records), file=sys.stderr)
    return 0 if all(r.passed for r in records) else 1


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)  # exits with status 2 on usage errors
    try:
        if args.cmd == "verify":
            return _verify(args)
        if args.cmd == "trace":
            require_prime(args.p)
            e = parse_exponent(args.exponent, args.p)
            _show(args, {"p": args.p, "exponent": str(e), "trace": trace(pow_big(theta(args.p), e))})
        elif args.cmd == "bell":
            require_prime(args.p)
            N = parse_exponent(args.N, args.p)
            _show(args, {"p": args.p, "x": args.x, "N": str(N), "value": bell.bell_eval_huge(args.p, args.x, N)})
        elif args.cmd == "class":
            p = args.p
            if p % 4 == 1:
                t, u, nrm = fundamental_unit(p)
                _show(args, {"p": p, "h": class_number_real(p), "t": t, "u": u, "norm": nrm})
            else:
                _show(args, {"p": p, "h": class_number_imaginary(p)})
        elif args.cmd == "unit":
            t, u, nrm = fundamental_unit(args.p)
            _show(args, {"p": args.p, "t": t, "u": u, "norm": nrm})
    except (InvalidArgument, Unsupported) as exc:
        print(f"belltrace: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
