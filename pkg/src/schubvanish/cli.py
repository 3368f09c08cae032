"""Command line: decide / count / witness / render / tree / selfcheck."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import core, schubitope, transition
from .oracle import schubert_polynomial

SCHEMA = "1"
EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2
DEFAULT_MAX_LENGTH = 200
SELFCHECK_MAX_N = 6


class QueryError(ValueError):
    pass


def parse_vector(text: Optional[str], what: str) -> tuple:
    if text is None:
        return ()
    text = text.strip()
    if not text:
        return ()
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            value = int(part)
        except ValueError:
            raise QueryError(f"{what}: {part!r} is not an integer") from None
        if value < 0:
            raise QueryError(f"{what}: negative entry {value}")
        out.append(value)
    return tuple(out)


def _check_budget(code: tuple, max_length: int) -> None:
    if len(code) > max_length:
        raise QueryError(f"code length {len(code)} exceeds --max-length {max_length}")


# -- commands: each returns (payload dict, text, exit status) ------------------------------

def do_decide(code, alpha, opts):
    yes = schubitope.decide_nonvanishing(code, alpha, compression=opts.get("compression", "rothe"),
                                         engine=opts.get("engine", "auto"))
    return {"result": "YES" if yes else "NO"}, "YES" if yes else "NO", EXIT_YES if yes else EXIT_NO


def do_count(code, alpha, opts):
    value = transition.count_coefficient(code, alpha)
    return {"result": value}, str(value), EXIT_YES


def do_witness(code, alpha, opts):
    tab = schubitope.witness_perfect_tableau(code, alpha, engine=opts.get("engine", "auto"))
    if tab is None:
        return {"result": "NO", "witness": None}, "NONE", EXIT_NO
    labels = [[r, c, lab] for (r, c), lab in tab.labels]
    return {"result": "YES", "witness": {"boxes": labels}}, tab.render(), EXIT_YES


COMMANDS = {"decide": do_decide, "count": do_count, "witness": do_witness}


def render_rothe(code: Sequence[int], plain: bool = False) -> str:
    """Rothe diagram as text: ``#`` box, ``o`` dot, ``.`` empty.

    Without ``plain`` the rays leaving each dot are drawn (``-`` east, ``|``
    south, ``+`` where they cross), essential boxes print as ``E`` and the
    accessible box as ``z``.
    """
    D = core.rothe_diagram(code)
    w = core.complete_permutation(core.code_to_oneline(code), D.n)
    dots = core.dots(w)
    if plain:
        return D.render(dots)
    ess = core.essential_set(D)
    z = core.accessible_box(code)
    dot_set = set(dots)
    east = {(i, j) for i, v in dots for j in range(v + 1, D.n + 1)}
    south = {(i, v) for r, v in dots for i in range(r + 1, D.n + 1)}
    lines = []
    for i in range(1, D.n + 1):
        row = []
        for j in range(1, D.n + 1):
            b = (i, j)
            if b == z:
                row.append("z")
            elif b in ess:
                row.append("E")
            elif b in D.boxes:
                row.append("#")
            elif b in dot_set:
                row.append("o")
            elif b in east and b in south:
                row.append("+")
            elif b in east:
                row.append("-")
            elif b in south:
                row.append("|")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines)


def selfcheck(n: int) -> tuple[dict, bool]:
    """Compare the decision and counting routines with the oracle on all of ``S_n``."""
    if not 1 <= n <= SELFCHECK_MAX_N:
        raise QueryError(f"--n must be between 1 and {SELFCHECK_MAX_N}")
    stats = {"decide": [0, 0], "count": [0, 0], "witness": [0, 0]}
    for w in itertools.permutations(range(1, n + 1)):
        poly = schubert_polynomial(w)
        code = core.oneline_to_code(w)
        d = sum(code)
        for alpha in itertools.product(range(d + 1), repeat=len(code)):
            if sum(alpha) != d:
                continue
            c = poly.coefficient(alpha)
            yes = schubitope.decide_nonvanishing(code, alpha)
            stats["decide"][0] += yes == (c > 0)
            stats["decide"][1] += 1
            stats["count"][0] += transition.count_coefficient(code, alpha) == c
            stats["count"][1] += 1
            tab = schubitope.witness_perfect_tableau(code, alpha)
            good = (tab is None) if c == 0 else (
                tab is not None and tab.is_perfect() and tab.is_column_strict()
                and tab.content(len(alpha))[: len(alpha)] == tuple(alpha)
            )
            stats["witness"][0] += good
            stats["witness"][1] += 1
    ok = all(p == t for p, t in stats.values())
    return stats, ok


# -- plumbing ------------------------------------------------------------------------------

def _emit(args, command: str, query: dict, payload: dict, text: str) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "command": command, "query": query,
               "result": payload.get("result"), "witness": payload.get("witness")}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


def _run_line(job):
    command, line, opts = job
    parts = line.split()
    try:
        if not parts or len(parts) > 2:
            raise QueryError(f"expected 'CODE [ALPHA]', got {line!r}")
        code = core.make_code(parse_vector(parts[0], "code"))
        alpha = parse_vector(parts[1] if len(parts) > 1 else "", "alpha")
        _check_budget(code, opts["max_length"])
        payload, text, status = COMMANDS[command](code, alpha, opts)
        return {"code": list(code), "alpha": list(alpha)}, payload, text, status, None
    except (QueryError, ValueError) as exc:
        return {"line": line}, {}, "", EXIT_ERROR, str(exc)


def _batch(args, command: str, opts: dict) -> int:
    lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
    jobs = [(command, ln, opts) for ln in lines]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_line, jobs))
    else:
        results = [_run_line(j) for j in jobs]
    status = 0
    for query, payload, text, code, err in results:
        if err is not None:
            status = EXIT_ERROR
            if args.json:
                print(json.dumps({"schema": SCHEMA, "command": command, "query": query,
                                  "error": err}, sort_keys=True))
            else:
                print(f"ERROR {err}")
            continue
        _emit(args, command, query, payload, text)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    query = argparse.ArgumentParser(add_help=False)
    query.add_argument("--code", help="comma-separated Lehmer code, e.g. 2,0,2")
    query.add_argument("--alpha", nargs="?", const="", default="",
                       help="comma-separated exponent vector (may be empty)")
    query.add_argument("--stdin", action="store_true",
                       help="read one 'CODE [ALPHA]' query per line")
    query.add_argument("--jobs", type=int, default=1, help="worker processes for --stdin")
    query.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH,
                       help="reject codes longer than this")

    parser = argparse.ArgumentParser(prog="schubvanish",
                                     description="Vanishing and values of Schubert coefficients.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("decide", parents=[common, query], help="is the coefficient nonzero?")
    p.add_argument("--compression", choices=schubitope.COMPRESSIONS, default="rothe")
    p.add_argument("--engine", choices=schubitope.ENGINES, default="auto")
    sub.add_parser("count", parents=[common, query], help="exact coefficient")
    p = sub.add_parser("witness", parents=[common, query], help="a perfect tableau certificate")
    p.add_argument("--engine", choices=schubitope.ENGINES, default="auto")
    p = sub.add_parser("render", parents=[common], help="draw the Rothe diagram")
    p.add_argument("--code", required=True)
    p.add_argument("--plain", action="store_true", help="only '#', 'o' and '.'")
    p = sub.add_parser("tree", parents=[common], help="dump the transition tree")
    p.add_argument("--code", required=True)
    p = sub.add_parser("selfcheck", parents=[common], help="compare against the oracle on S_n")
    p.add_argument("--n", type=int, default=4)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in COMMANDS:
            opts = {"max_length": args.max_length,
                    "compression": getattr(args, "compression", "rothe"),
                    "engine": getattr(args, "engine", "auto")}
            if args.stdin:
                return _batch(args, args.command, opts)
            if args.code is None:
                raise QueryError("--code is required unless --stdin is given")
            code = core.make_code(parse_vector(args.code, "code"))
            alpha = parse_vector(args.alpha, "alpha")
            _check_budget(code, args.max_length)
            payload, text, status = COMMANDS[args.command](code, alpha, opts)
            _emit(args, args.command, {"code": list(code), "alpha": list(alpha)}, payload, text)
            return status
        if args.command == "render":
            code = core.make_code(parse_vector(args.code, "code"))
            text = render_rothe(code, plain=args.plain)
            payload = {"result": {"diagram": text.splitlines(),
                                  "essential": sorted(map(list, core.essential_set(core.rothe_diagram(code)))),
                                  "accessible_box": list(core.accessible_box(code) or []) or None}}
            _emit(args, "render", {"code": list(code)}, payload, text)
            return EXIT_YES
        if args.command == "tree":
            code = core.make_code(parse_vector(args.code, "code"))
            if args.json:
                _emit(args, "tree", {"code": list(code)},
                      {"result": transition.transition_tree(code)}, "")
            else:
                print(transition.render_tree(code))
            return EXIT_YES
        if args.command == "selfcheck":
            stats, ok = selfcheck(args.n)
            text = "\n".join(
                f"{name}: {p}/{t} {'PASS' if p == t else 'FAIL'}" for name, (p, t) in stats.items()
            )
            _emit(args, "selfcheck", {"n": args.n},
                  {"result": {k: {"passed": p, "total": t} for k, (p, t) in stats.items()}}, text)
            return EXIT_YES if ok else EXIT_NO
    except (QueryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    parser.error(f"unknown command {args.command}")
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
