"""Command-line interface.

Exit codes: 0 success, 1 negative result (no witness, counterexample found),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Callable

from . import verify as V
from .digraph import Digraph, double_cycle, is_two_connected, symmetrize
from .exceptions import NonevenError, ParseError, SearchSpaceTooLarge
from .io import format_digraph, format_witness, parse_digraph, parse_graph, parse_pattern, plain
from .parity import is_combinatorially_singular, is_even_weighted, is_sns
from .pattern import SignPattern, digraph_of
from .structures import (
    CaterpillarSpec,
    CockadeSpec,
    build_cockade,
    build_extended_caterpillar,
    is_cockade,
    is_even_2connected_graph,
    w4,
)
from .symplectic import DEFAULT_BUDGET, DEFAULT_TOL, find_symplectic_pair, is_irreducible, prop31_check, prop61_check


class UsageError(Exception):
    pass


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _check(result) -> str:
    return "pass" if result.passed else "fail"


# -- filter expressions ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))")

Predicate = Callable[[V.Flags], bool]


def _tokenize(text: str) -> list[str]:
    out = []
    for name, op in _TOKEN.findall(text):
        tok = name or op
        if not tok.strip():
            continue
        if not name and tok not in "&|!()":
            raise UsageError(f"unexpected character {tok!r} in filter")
        out.append(tok)
    return out


def parse_filter(text: str) -> Predicate:
    """Compile ``a & (b | !c)`` over flag names; ``!`` binds tightest, then ``&``, then ``|``."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise UsageError(f"filter: expected {expected or 'a term'}, got {tok or 'end of input'}")
        pos += 1
        return tok

    def disj():
        terms = [conj()]
        while peek() == "|":
            take("|")
            terms.append(conj())
        return terms[0] if len(terms) == 1 else (lambda fl: any(t(fl) for t in terms))

    def conj():
        terms = [unary()]
        while peek() == "&":
            take("&")
            terms.append(unary())
        return terms[0] if len(terms) == 1 else (lambda fl: all(t(fl) for t in terms))

    def unary():
        tok = peek()
        if tok == "!":
            take("!")
            inner = unary()
            return lambda fl: not inner(fl)
        if tok == "(":
            take("(")
            inner = disj()
            take(")")
            return inner
        name = take()
        if name not in V.FLAG_NAMES:
            raise UsageError(f"unknown flag {name!r}; known: {', '.join(V.FLAG_NAMES)}")
        return lambda fl: fl[name]

    expr = disj()
    if peek() is not None:
        raise UsageError(f"filter: unexpected {peek()!r}")
    return expr


# -- subcommands ---------------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _record_lines(D: Digraph) -> list[str]:
    rec = V.classify(D)
    lines = [f"id={rec.canonical_id}", f"n={rec.n}", f"m={rec.m}"]
    lines += [f"{name}={_bool(rec.flags[name])}" for name in V.FLAG_NAMES]
    lines.append("indegrees=" + ",".join(map(str, rec.indegrees)))
    lines.append("outdegrees=" + ",".join(map(str, rec.outdegrees)))
    return lines


def _classify_pattern(H: SignPattern) -> list[str]:
    Dw = digraph_of(H)
    sns = is_sns(H)
    lines = _record_lines(Dw.base)
    lines.append(f"negative_diagonal={_bool(H.is_negative_diagonal)}")
    lines.append(f"weighted_noneven={_bool(not is_even_weighted(Dw).even)}")
    lines.append(f"sns={_bool(sns)}")
    lines.append(f"combinatorially_singular={_bool(is_combinatorially_singular(H))}")
    lines.append(f"prop31={_check(prop31_check(H))}")
    lines.append(f"prop61={_check(prop61_check(H)) if sns else 'n/a'}")
    lines.append(f"irreducible={_bool(is_irreducible(H))}")
    return lines


def _classify_graph(text: str) -> list[str]:
    G = parse_graph(text)
    two = is_two_connected(G)
    lines = [f"n={G.n}", f"m={len(G.edges)}", f"two_connected={_bool(two)}"]
    if two:
        verdict = is_even_2connected_graph(G)
        lines.append(f"even={_bool(verdict.even)}")
        lines.append(f"cockade_subgraph={_bool(not verdict.even)}")
        lines.append(f"cockade={_bool(is_cockade(G))}")
    if G.n <= V.SYMMETRIC_MAX_N:
        lines += ["symmetrized." + line for line in _record_lines(symmetrize(G))]
    return lines


def cmd_classify(args) -> int:
    text = _read(args.input)
    if args.kind == "pattern":
        lines = _classify_pattern(parse_pattern(text))
    elif args.kind == "digraph":
        lines = _record_lines(parse_digraph(text))
    else:
        lines = _classify_graph(text)
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_witness(args) -> int:
    H = parse_pattern(_read(args.input))
    result = find_symplectic_pair(H, budget=args.budget, tol=args.tol, seed=args.seed,
                                  orthogonal=args.orthogonal, prescreen=not args.no_prescreen)
    if result:
        sys.stdout.write(format_witness(result))
        return 0
    sys.stdout.write(f"NOT-FOUND best_residual={plain(result.best_residual)} "
                     f"restarts={result.restarts} reason={result.reason}\n")
    return 1


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()] if text else []
    except ValueError:
        raise UsageError(f"{what}: expected integers, got {text!r}") from None


def cmd_generate(args) -> int:
    try:
        if args.family == "w4":
            G = w4()
        elif args.family == "double-cycle":
            G = double_cycle(args.k if args.k is not None else 2)
        elif args.family == "caterpillar":
            k = args.k if args.k is not None else 2
            blossoms = _int_list(args.blossoms, "--blossoms") if args.blossoms else [0] * max(k - 2, 0)
            G = build_extended_caterpillar(CaterpillarSpec(k, blossoms))
        else:
            steps = []
            for part in (args.steps or "").split(";"):
                if part.strip():
                    pair = _int_list(part, "--steps")
                    if len(pair) != 2:
                        raise UsageError(f"--steps: each step needs two vertices, got {part!r}")
                    steps.append(tuple(pair))
            G = build_cockade(CockadeSpec(steps))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(format_digraph(G), args.out)
    return 0


def cmd_verify(args) -> int:
    fn = V.THEOREMS[args.theorem]
    kwargs = {}
    if args.theorem in ("t42", "t63"):
        kwargs = {"seed": args.seed, "budget": args.budget}
    elif args.theorem == "st":
        kwargs = {"seed": args.seed}
    elif args.theorem == "bs":
        kwargs = {"strong_only": args.strong_only}
    report = fn(args.n, **kwargs)
    sys.stdout.write(report.render())
    return 0 if report.success else 1


def cmd_catalog(args) -> int:
    pred = parse_filter(args.filter) if args.filter else None
    filters = [pred] if pred else []
    lines = [V.classify(D, fl).line()
             for D, fl in V.enumerate_with_flags(args.n, filters, symmetric=args.symmetric)]
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


# -- argument parsing ----------------------------------------------------------------------


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _nonnegative_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noneven", description="Sign patterns, noneven digraphs and symplectic pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="print classification flags for one input file")
    c.add_argument("input", help="input file, or - for standard input")
    c.add_argument("--kind", choices=("pattern", "digraph", "graph"), default="pattern")
    c.set_defaults(func=cmd_classify)

    w = sub.add_parser("witness", help="search for a symplectic pair in a pattern's sign class")
    w.add_argument("input")
    w.add_argument("--budget", type=_nonnegative_int, default=DEFAULT_BUDGET, help="number of restarts")
    w.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="max |A^T D - I| accepted")
    w.add_argument("--seed", type=int, default=V.DEFAULT_SEED)
    w.add_argument("--orthogonal", action="store_true", help="constrain D = A")
    w.add_argument("--no-prescreen", action="store_true",
                   help="search even when the row-overlap condition already rules pairs out")
    w.set_defaults(func=cmd_witness)

    g = sub.add_parser("generate", help="write a member of a named family")
    g.add_argument("family", choices=("cockade", "caterpillar", "w4", "double-cycle"))
    g.add_argument("--k", type=int, help="backbone length (caterpillar) or cycle length (double-cycle)")
    g.add_argument("--blossoms", help="caterpillar pendant counts on x_2..x_{k-1}, comma separated")
    g.add_argument("--steps", help='cockade attachment edges, e.g. "0,1;4,5"')
    g.add_argument("--out", help="output file (default standard output)")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="exhaustively re-check a characterization at small sizes")
    v.add_argument("theorem", choices=sorted(V.THEOREMS))
    v.add_argument("--n", type=_nonnegative_int, default=4, help="largest order checked")
    v.add_argument("--seed", type=int, default=V.DEFAULT_SEED)
    v.add_argument("--budget", type=_nonnegative_int, default=DEFAULT_BUDGET)
    v.add_argument("--strong-only", action="store_true", help="bs: restrict to strong digraphs")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("catalog", help="classification records, one per isomorphism class")
    k.add_argument("--n", type=_nonnegative_int, required=True)
    k.add_argument("--filter", help='boolean expression over flags, e.g. "strong & !symmetric"')
    k.add_argument("--symmetric", action="store_true", help="enumerate symmetric digraphs only")
    k.add_argument("--out")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UsageError, SearchSpaceTooLarge) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
    except NonevenError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
