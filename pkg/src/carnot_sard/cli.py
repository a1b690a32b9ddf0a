"""carnot-sard command line.

Exit codes: 0 ok, 1 self-test failure, 2 parse error, 3 validation failure,
4 disagreement between the structural and general singularity verdicts.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__, acceptance, reports
from .formats import GroupValidationError, ParseError, parse_control, parse_group
from .step2 import SearchBudget

EXIT_OK, EXIT_SELFTEST, EXIT_PARSE, EXIT_VALIDATION, EXIT_DISAGREE = 0, 1, 2, 3, 4
BUILTIN = "builtin:"


class _ValidationFailure(ValueError):
    """Well-formed input that does not describe a usable group or request."""


def builtin_names(kind: str = "groups") -> list[str]:
    root = resources.files("carnot_sard") / kind
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _read(path: str, kind: str) -> tuple[str, str]:
    """Text of a file, or of a packaged definition named ``builtin:<name>``."""
    if path.startswith(BUILTIN):
        name = path[len(BUILTIN):]
        if name not in builtin_names(kind):
            raise ParseError(path, f"no builtin {kind[:-1]} {name!r}; known: {', '.join(builtin_names(kind))}")
        return path, (resources.files("carnot_sard") / kind / f"{name}.json").read_text()
    try:
        return path, Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, exc.strerror or str(exc)) from None


def _load_group(path: str):
    label, text = _read(path, "groups")
    try:
        return parse_group(text)
    except ParseError as exc:
        raise ParseError(f"{label}:{exc.location}", str(exc).split(": ", 1)[1]) from None


def _load_control(path: str, rank: int):
    label, text = _read(path, "controls")
    try:
        return parse_control(text, rank)
    except ParseError as exc:
        raise ParseError(f"{label}:{exc.location}", str(exc).split(": ", 1)[1]) from None


def render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(val)}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)) and not _flat(val):
                lines.append(f"{pad}-")
                lines.extend(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(val)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return lines


def _flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(v, dict) and _flat_item(v) for v in val)


def _flat_item(v) -> bool:
    return not isinstance(v, list) or all(not isinstance(x, (list, dict)) for x in v)


def _inline(val) -> str:
    if val is None:
        return "none"
    if isinstance(val, bool):
        return "yes" if val else "no"
    if isinstance(val, list):
        return "[" + ", ".join(_inline(v) for v in val) + "]"
    return str(val)


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(render_text(report)) + "\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(samples=args.budget, height=args.height, seed=args.seed)


def cmd_analyze(args) -> int:
    defn = _load_group(args.group)
    emit(reports.analyze(defn, args.seed, _budget(args)), args.format)
    return EXIT_OK


def cmd_classify(args) -> int:
    defn = _load_group(args.group)
    u = _load_control(args.control, defn.algebra.rank)
    try:
        rep = reports.classify(defn, u, args.seed, _budget(args))
    except reports.VerdictDisagreement as exc:
        emit(exc.report, args.format)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    emit(rep, args.format)
    return EXIT_OK


def cmd_sample(args) -> int:
    defn = _load_group(args.group)
    try:
        rep = reports.sample(defn, args.count, args.seed, args.height)
    except ValueError as exc:
        raise _ValidationFailure(str(exc)) from None
    emit(rep, args.format)
    return EXIT_OK


def cmd_selftest(args) -> int:
    only = set(args.only) if args.only else None
    results = acceptance.run_all(args.seed, only)
    for res in results:
        print(res.line(), flush=True)
    failed = [r.number for r in results if not r.passed]
    total = sum(r.elapsed for r in results)
    if failed:
        print(f"selftest: {len(failed)} of {len(results)} criteria failed ({', '.join(map(str, failed))}); "
              f"{total:.2f}s")
        return EXIT_SELFTEST
    print(f"selftest: all {len(results)} criteria passed; {total:.2f}s")
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--format", choices=("json", "text"), default="text", help="report format")
    common.add_argument("--height", type=_positive, default=10, help="height bound for random rationals")
    common.add_argument("--budget", type=_positive, default=200,
                        help="random candidates for searches that cannot be exhaustive")

    parser = argparse.ArgumentParser(prog="carnot-sard", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="k~, codimension bound and abnormal set of a group")
    p.add_argument("group", help="group definition file, or builtin:<name>")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", parents=[common], help="singularity of a piecewise-constant control")
    p.add_argument("group")
    p.add_argument("control", help="control file, or builtin:<name>")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sample", parents=[common], help="seeded points of the abnormal set")
    p.add_argument("group")
    p.add_argument("--count", "--samples", dest="count", type=_positive, default=100)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", type=int, nargs="+", metavar="N", help="run only these criteria")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("list", help="list packaged group and control definitions")
    p.set_defaults(func=cmd_list)
    return parser


def cmd_list(args) -> int:
    for kind in ("groups", "controls"):
        print(f"{kind}:")
        for name in builtin_names(kind):
            print(f"  {BUILTIN}{name}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GroupValidationError, _ValidationFailure) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
