"""Command-line interface.

Exit codes: 0 success, 1 parse/usage error, 2 precondition violated,
3 internal invariant violated (including failed verification).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import campaigns
from .polygons import (
    PolygonError,
    c_value,
    enumerate_nps,
    is_saturated,
    minimal_word,
    np_eval,
    parse_polygon,
)
from .specialization import (
    PreconditionError,
    PropositionViolation,
    chain_for,
    verify_chain,
)
from .words import (
    F,
    WordError,
    cycle_decomposition,
    direct_sum_all,
    dual,
    fv_permutation,
    length_ell,
    minus,
    validate_word,
)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _word(text: str) -> str:
    try:
        return validate_word(text.strip())
    except WordError as exc:
        raise UsageError(str(exc)) from exc


def _polygon(text: str):
    try:
        return parse_polygon(text)
    except (PolygonError, ValueError) as exc:
        raise UsageError(f"bad Newton polygon {text!r}: {exc}") from exc


def _emit(obj, args) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    elif isinstance(obj, (list, tuple)):
        for item in obj:
            print(item)
    elif isinstance(obj, bool):
        print("true" if obj else "false")
    else:
        print(obj)


# ---------------------------------------------------------------------------
# diagrams
# ---------------------------------------------------------------------------


def _arrow(label: str) -> str:
    return "F" if label == F else "V⁻¹"


def render_text(w: str) -> str:
    perm = fv_permutation(w)
    width = max(2, len(str(len(w)))) + 1
    lines = [
        f"word {w}  (h={len(w)}, ones={w.count('1')}, zeros={w.count('0')})",
        "pos " + "".join(f"{i:>{width}}" for i in range(1, len(w) + 1)),
        "bit " + "".join(f"{c:>{width}}" for c in w),
        "arrows:",
    ]
    for i, j in enumerate(perm.succ, 1):
        lines.append(f"  {w[i - 1]}_{i} --{_arrow(perm.label[j - 1])}--> {w[j - 1]}_{j}")
    cyc = " ".join(f"{c.word}{{{','.join(map(str, c.positions))}}}" for c in cycle_decomposition(w))
    lines.append(f"cycles: {cyc}")
    return "\n".join(lines)


def render_dot(w: str) -> str:
    perm = fv_permutation(w)
    lines = [f'digraph "{w or "empty"}" {{', "  rankdir=LR;"]
    for i, c in enumerate(w, 1):
        lines.append(f'  n{i} [label="{c}_{i}"];')
    for i, j in enumerate(perm.succ, 1):
        lines.append(f'  n{i} -> n{j} [label="{_arrow(perm.label[j - 1])}"];')
    lines.append("}")
    return "\n".join(lines)


def diagram_json(w: str) -> dict:
    perm = fv_permutation(w)
    return {
        "word": w,
        "succ": list(perm.succ),
        "label": list(perm.label),
        "cycles": [{"word": c.word, "positions": list(c.positions)} for c in cycle_decomposition(w)],
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_word(args) -> int:
    words = [_word(t) for t in args.words]
    action = args.action
    if action == "sum":
        _emit(direct_sum_all(words), args)
        return EXIT_OK
    if len(words) != 1:
        raise UsageError(f"word {action} takes exactly one word")
    w = words[0]
    if action == "show":
        if args.json:
            _emit(diagram_json(w), args)
        else:
            print(render_dot(w) if args.dot else render_text(w))
    elif action == "minus":
        _emit(minus(w), args)
    elif action == "cycles":
        cyc = cycle_decomposition(w)
        if args.json:
            _emit([{"word": c.word, "positions": list(c.positions)} for c in cyc], args)
        else:
            _emit([c.word for c in cyc], args)
    elif action == "ell":
        _emit(length_ell(w), args)
    elif action == "dual":
        _emit(dual(w), args)
    return EXIT_OK


def cmd_np(args) -> int:
    a = args.args
    action = args.action
    need = {"eval": 2, "c": 2, "saturated": 2, "enumerate": 2, "minword": 1}[action]
    if len(a) != need:
        raise UsageError(f"np {action} takes {need} argument(s)")
    if action == "eval":
        xi = _polygon(a[0])
        try:
            x = Fraction(a[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad abscissa {a[1]!r}") from exc
        y = np_eval(xi, x)
        _emit(str(y) if not args.json else {"x": str(x), "y": str(y)}, args)
    elif action == "c":
        _emit(c_value(_polygon(a[0]), _polygon(a[1])), args)
    elif action == "saturated":
        _emit(is_saturated(_polygon(a[0]), _polygon(a[1])), args)
    elif action == "enumerate":
        try:
            h, d = int(a[0]), int(a[1])
        except ValueError as exc:
            raise UsageError("np enumerate takes integers h d") from exc
        polys = enumerate_nps(h, d)
        _emit([p.to_json() for p in polys] if args.json else [str(p) for p in polys], args)
    elif action == "minword":
        _emit(minimal_word(_polygon(a[0])), args)
    return EXIT_OK


def cmd_chain(args) -> int:
    zeta, xi = _polygon(args.zeta), _polygon(args.xi)
    ch = chain_for(zeta, xi)
    if args.json:
        print(json.dumps(ch.to_json(), sort_keys=True, indent=2))
    else:
        print(f"zeta = {zeta}, xi = {xi}, c = {ch.c}, method = {ch.method}")
        for i, w in enumerate(ch.words):
            print(f"A({i}) = {w}")
    if args.verify:
        verdict = verify_chain(ch)
        if not verdict:
            print(f"verification failed: {verdict.reason}", file=sys.stderr)
            return EXIT_INTERNAL
        print("verified", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        rep = campaigns.run_campaign(args.campaign, args.hmax, seed=args.seed, jobs=args.jobs)
    except campaigns.BoundError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True, indent=2))
    else:
        print(rep.summary())
        for ce in rep.counterexamples[:20]:
            print(f"  counterexample: {ce}")
        if len(rep.counterexamples) > 20:
            print(f"  ... {len(rep.counterexamples) - 20} more")
    return EXIT_OK if rep.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--json", action="store_true", help="machine-readable JSON output")
    fmt.add_argument("--dot", action="store_true", help="Graphviz output (word show)")

    p = _Parser(prog="newton-dm1", description="DM1 words, Newton polygons and specialization chains")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pw = sub.add_parser("word", parents=[fmt], help="operations on 0/1 words")
    pw.add_argument("action", choices=["show", "sum", "minus", "cycles", "ell", "dual"])
    pw.add_argument("words", nargs="+")
    pw.set_defaults(func=cmd_word)

    pn = sub.add_parser("np", parents=[fmt], help="operations on Newton polygons")
    pn.add_argument("action", choices=["eval", "c", "saturated", "enumerate", "minword"])
    pn.add_argument("args", nargs="+")
    pn.set_defaults(func=cmd_np)

    pc = sub.add_parser("chain", parents=[fmt], help="specialization chain from A_xi down to A_zeta")
    pc.add_argument("zeta")
    pc.add_argument("xi")
    pc.add_argument("--verify", action="store_true", help="re-check every step and witness")
    pc.set_defaults(func=cmd_chain)

    pv = sub.add_parser("verify", parents=[fmt], help="run an exhaustive verification campaign")
    pv.add_argument("campaign", choices=sorted(campaigns.CAMPAIGNS))
    pv.add_argument("--hmax", type=int, default=None)
    pv.add_argument("--seed", type=int, default=campaigns.DEFAULT_SEED)
    pv.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${campaigns.JOBS_ENV} or 1)")
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"newton-dm1: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PropositionViolation as exc:
        print(f"newton-dm1: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ArithmeticError as exc:
        print(f"newton-dm1: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (PreconditionError, PolygonError, WordError) as exc:
        print(f"newton-dm1: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
