"""Command-line front end.

Exit status: 0 on success, 1 for bad input, 2 when an internal consistency
check fails (a bug, reported with the result that was violated).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .counting import NoDecomposition, count_1bc
from .enumeration import MinimalSet, enumerate_minimal_bruteforce
from .errors import DomainError, InvariantViolation
from .forms import FormContext, contexts, enumerate_minimal_via_forms, fundamental_solutions
from .survey import (
    SERIES,
    TABLES,
    default_workers,
    emit,
    record_violations,
    resolve_method,
    scan,
    verify_prop_9m4,
)
from .tree import DEFAULT_MAX_COMPONENT, expand, locate, roots
from .triples import descend, make_triple

CROSS_CHECK_BELOW = 10**4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _m_arg(text: str) -> int:
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if m < 2:
        raise argparse.ArgumentTypeError(f"m must be at least 2, got {m}")
    return m


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {n}")
    return n


def _triple_arg(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(x) for x in text.replace(" ", "").strip("()").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer triple: {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"need three components, got {text!r}")
    return parts


def _range_arg(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like LO..HI, got {text!r}")
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"need 2 <= LO <= HI, got {text!r}")
    return lo, hi


def _ordered_input(m: int, abc: tuple[int, int, int]):
    t = make_triple(m, *abc)
    if not t.is_positive:
        raise DomainError(f"{t} has a non-positive component")
    a, b, c = sorted(abc)
    return make_triple(m, a, b, c)


def _strs(t) -> list[str]:
    return [str(x) for x in t.abc]


def _minimal_set(m: int, method: str) -> MinimalSet:
    if method == "auto":
        method = "both" if m < CROSS_CHECK_BELOW else "forms"
    if method == "brute":
        return enumerate_minimal_bruteforce(m)
    forms = enumerate_minimal_via_forms(m)
    if method == "both":
        brute = enumerate_minimal_bruteforce(m)
        if brute.triples != forms.triples:
            raise InvariantViolation(
                f"m={m}: brute-force {brute.abc} and fundamental-solution {forms.abc} "
                "enumerations of minimal triples differ"
            )
    return forms


def cmd_minimal(args) -> str:
    s = _minimal_set(args.m, args.method)
    rows = [(k, t) for k in (1, 2, 3) for t in s.by_order[k]]
    if args.format == "json":
        return json.dumps(
            {"m": args.m, "total": len(s),
             "triples": [{"order": k, "t": _strs(t)} for k, t in rows]},
            separators=(",", ":"),
        )
    lines = ["m,order,a,b,c"] + [f"{args.m},{k},{t.a},{t.b},{t.c}" for k, t in rows]
    return "\n".join(lines)


def cmd_fundsols(args) -> str:
    ctxs = [FormContext(args.m, args.a)] if args.a else contexts(args.m)
    rows = [(ctx.a, s) for ctx in ctxs for s in fundamental_solutions(ctx)]
    if args.format == "json":
        return json.dumps(
            [{"a": a, "N": args.m - a * a, "u": str(s.u), "v": str(s.v)} for a, s in rows],
            separators=(",", ":"),
        )
    return "\n".join(["a,N,u,v"] + [f"{a},{args.m - a * a},{s.u},{s.v}" for a, s in rows])


def cmd_tree(args) -> str:
    if args.root:
        chosen = [_ordered_input(args.m, args.root)]
    else:
        chosen = roots(args.m)
        if not chosen:
            raise DomainError(f"m={args.m} has no solutions, so no trees")
    trees = [expand(args.m, r, args.depth, args.bound) for r in chosen]
    if args.format == "json":
        return "\n".join(t.to_json() for t in trees)
    lines = ["root,path,depth,a,b,c"]
    for tree in trees:
        r = tree.root
        for n in tree.nodes:
            lines.append(f"{r.a} {r.b} {r.c},{n.path},{n.depth},{n.triple.a},{n.triple.b},{n.triple.c}")
    return "\n".join(lines)


def cmd_descend(args) -> str:
    d = descend(_ordered_input(args.m, args.triple))
    return json.dumps(
        {"minimal": _strs(d.minimal), "path": [_strs(t) for t in d.path]},
        separators=(",", ":"),
    )


def cmd_locate(args) -> str:
    loc = locate(_ordered_input(args.m, args.triple))
    return json.dumps(
        {"root": _strs(loc.root), "minimal": _strs(loc.minimal), "path": loc.path},
        separators=(",", ":"),
    )


def cmd_count1bc(args) -> str:
    res = count_1bc(args.m)
    doc = {"exists": res.exists, "count": res.count, "l": res.l}
    if args.terms:
        doc["terms"] = [{"d": d, "contribution": c} for d, c in res.terms]
    return json.dumps(doc, separators=(",", ":"))


def cmd_exists1bc(args) -> str:
    res = count_1bc(args.m)
    doc = {"exists": res.exists}
    if isinstance(res.decomposition, NoDecomposition):
        doc["offending_prime"] = res.decomposition.offending_prime
    return json.dumps(doc, separators=(",", ":"))


def cmd_survey(args) -> str:
    lo, hi = args.range
    t0 = time.perf_counter()
    keep = args.emit in TABLES
    records = scan(lo, hi, args.method, args.workers, keep_triples=keep)
    out = emit(records, args.emit, args.format, lo, hi).decode()
    print(f"scanned m in [{lo}, {hi}] in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return out.rstrip("\n")


def cmd_verify(args) -> str:
    lo, hi = args.range
    method = resolve_method(args.method, hi)
    records = scan(lo, hi, method, args.workers)
    failures = [(r.m, msg) for r in records for msg in record_violations(r)]
    failures += [
        (m, "9m-4 prime and m not a sum of two non-zero squares, yet 3 does not divide #O(m)")
        for m in verify_prop_9m4(records)
    ]
    if failures:
        m, msg = failures[0]
        raise InvariantViolation(f"{len(failures)} failures; first at m={m}: {msg}")
    summary = {
        "range": [lo, hi],
        "method": method,
        "records": len(records),
        "minimal_triples": sum(r.total for r in records),
        "checks": [
            "enumerators agree" if method == "both" else "enumeration via " + method,
            "sum_a |S_a| = 2 #minimal - #improper and |S_a| = |T_a|",
            "closed-form (1,b,c) count matches enumeration",
            "order-2 / order-3 class sizes divisible by 2 / 3",
            "9m-4 prime, m not a sum of two squares => 3 | #O(m)",
        ],
        "ok": True,
    }
    return json.dumps(summary, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="markoff-minimal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp, default="csv", choices=("csv", "json")):
        sp.add_argument("--format", choices=choices, default=default)

    sp = sub.add_parser("minimal", help="minimal triples for one m")
    sp.add_argument("--m", type=_m_arg, required=True)
    sp.add_argument("--method", choices=("auto", "brute", "forms", "both"), default="auto")
    fmt(sp)
    sp.set_defaults(func=cmd_minimal)

    sp = sub.add_parser("fundsols", help="fundamental solutions of x^2-3axy+y^2 = m-a^2")
    sp.add_argument("--m", type=_m_arg, required=True)
    sp.add_argument("--a", type=int, default=0, help="single a (default: every a with a^2 < m)")
    fmt(sp)
    sp.set_defaults(func=cmd_fundsols)

    sp = sub.add_parser("tree", help="expand solution trees")
    sp.add_argument("--m", type=_m_arg, required=True)
    sp.add_argument("--depth", type=_nonneg, default=3)
    sp.add_argument("--root", type=_triple_arg, help="a,b,c (default: every root)")
    sp.add_argument("--bound", type=int, default=DEFAULT_MAX_COMPONENT,
                    help="drop nodes whose largest entry exceeds this")
    fmt(sp, default="json")
    sp.set_defaults(func=cmd_tree)

    for name, func, text in (("descend", cmd_descend, "walk a triple down to its minimal triple"),
                             ("locate", cmd_locate, "find the tree and path of a triple")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--m", type=_m_arg, required=True)
        sp.add_argument("--triple", type=_triple_arg, required=True, help="a,b,c")
        sp.set_defaults(func=func)

    sp = sub.add_parser("count1bc", help="closed-form count of minimal (1,b,c) triples")
    sp.add_argument("--m", type=_m_arg, required=True)
    sp.add_argument("--terms", action="store_true", help="include per-divisor terms")
    sp.set_defaults(func=cmd_count1bc)

    sp = sub.add_parser("exists1bc", help="whether a triple (1,b,c) exists")
    sp.add_argument("--m", type=_m_arg, required=True)
    sp.set_defaults(func=cmd_exists1bc)

    for name, func, text in (("survey", cmd_survey, "scan a range of m"),
                             ("verify", cmd_verify, "run the invariant battery over a range")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--range", type=_range_arg, required=True, help="LO..HI")
        sp.add_argument("--method", choices=("auto", "brute", "forms", "both"), default="auto")
        sp.add_argument("--workers", type=int, default=default_workers(),
                        help="process count (env MARKOFF_WORKERS)")
        if name == "survey":
            sp.add_argument("--emit", choices=("survey", *TABLES, *SERIES), default="survey")
            fmt(sp)
        sp.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
