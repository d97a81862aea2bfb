"""Command-line entry point: ``newbasis {enum,verify,matrix,expand,poset}``.

Exit status is 0 on success, 1 when a verification check fails and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import CHECKS, run_checks
from .matrices import build_all, d_matrix, n_matrix, r_matrix, vd_expansion
from .phi import enumerate_phi, eps_label, hasse_dot

DEFAULT_MAX_DIM = 12
ENUM_MAX_DIM = 14
POSET_MAX_DIM = 8


def _dim_type(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if d < 2 or d % 2:
        raise argparse.ArgumentTypeError(f"D must be even and >= 2, got {d}")
    return d


def _checks_type(text: str) -> list[str]:
    if text == "all":
        return list(CHECKS)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [n for n in names if n not in CHECKS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown check(s) {', '.join(unknown) or '(none given)'}; choose from {', '.join(CHECKS)} or 'all'"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="newbasis", description="New basis of functions on V_D.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, limit: int) -> None:
        p.add_argument("--dim", type=_dim_type, required=True, help="even dimension D")
        p.add_argument("--force", action="store_true", help=f"allow D > {limit}")
        p.add_argument("--out", help="write to this file instead of stdout")
        p.set_defaults(dim_limit=limit)

    p = sub.add_parser("enum", help="list the patterns with |B|, epsilon and dim of span")
    common(p, ENUM_MAX_DIM)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="run verification checks")
    common(p, DEFAULT_MAX_DIM)
    p.add_argument("--checks", type=_checks_type, default=list(CHECKS), help="comma-separated names or 'all'")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("matrix", help="export the d, r or n matrix")
    common(p, DEFAULT_MAX_DIM)
    p.add_argument("--kind", choices=("d", "r", "n"), required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("expand", help="print the orbit expansion of the indicator of V_D")
    common(p, DEFAULT_MAX_DIM)

    p = sub.add_parser("poset", help="Hasse diagram of the order")
    common(p, POSET_MAX_DIM)
    p.add_argument("--format", choices=("dot",), default="dot")
    return parser


def _enum(args) -> tuple[str, int]:
    fam = enumerate_phi(args.dim)
    rows = [
        (fam.patterns[b].label(), len(fam.patterns[b]), eps_label(fam.eps[b], fam.dim), len(fam.spans[b]))
        for b in fam.linext
    ]
    if args.format == "json":
        doc = [{"pattern": p, "size": k, "epsilon": e, "span_dim": s} for p, k, e, s in rows]
        return json.dumps(doc, indent=1) + "\n", 0
    return "".join(f"{p}\t{k}\t{e}\t{s}\n" for p, k, e, s in rows), 0


def _verify(args) -> tuple[str, int]:
    report = run_checks(args.dim, args.checks)
    if args.format == "json":
        text = json.dumps(report.to_dict(), indent=1) + "\n"
    else:
        text = "\n".join(report.lines()) + "\n"
    return text, report.exit_status


def _matrix(args) -> tuple[str, int]:
    fam = enumerate_phi(args.dim)
    d = d_matrix(fam)
    if args.kind == "d":
        m = d
    else:
        m = r_matrix(fam, d)
        if args.kind == "n":
            m = n_matrix(fam, m)
    return (m.to_csv() if args.format == "csv" else m.to_json()), 0


def _expand(args) -> tuple[str, int]:
    fam = enumerate_phi(args.dim)
    return str(vd_expansion(fam, build_all(fam).n)) + "\n", 0


def _poset(args) -> tuple[str, int]:
    return hasse_dot(enumerate_phi(args.dim)), 0


COMMANDS = {"enum": _enum, "verify": _verify, "matrix": _matrix, "expand": _expand, "poset": _poset}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.dim > args.dim_limit and not args.force:
        parser.error(f"{args.command}: D={args.dim} exceeds the guard {args.dim_limit}; pass --force to run anyway")
    text, status = COMMANDS[args.command](args)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
