"""Command-line interface.

Exit codes: 0 derivable, 1 not derivable, 2 usage or parse error,
3 internal failure, 4 oracle budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time

from . import automaton
from .decider import FAMILIES, bench_family, decide
from .languages import dump, enumerate_language, intersect
from .pentus import build_grammar, grammar_stats, profile_count_bound, size_bound
from .proofnets import CodeWord, InternalError, decode, encode, enumerate_nets, to_dot
from .prover import BudgetExceeded, SearchBudget, prove
from .syntax import ParseError, parse_sequent, print_sequent
from .translation import params, translate

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL, EXIT_BUDGET = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _inputs(args) -> list:
    texts = args.sequent or [line for line in sys.stdin.read().splitlines()
                             if line.strip() and not line.lstrip().startswith("#")]
    if not texts:
        raise ParseError("no sequent given")
    return [parse_sequent(t) for t in texts]


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text)


def cmd_decide(args, witness=False) -> int:
    code = EXIT_YES
    for s in _inputs(args):
        d = decide(s, want_witness=witness or args.witness)
        if not d.derivable:
            code = EXIT_NO
        lines = [f"{print_sequent(s)}: {'derivable' if d.derivable else 'not derivable'}"]
        if d.witness is not None:
            lines.append(f"  code: {d.witness.code}")
            if witness:
                lines.append(d.witness.derivation.pretty(1))
        _emit(args, d.to_json(), "\n".join(lines))
    return code


def cmd_net(args) -> int:
    seqs = _inputs(args)
    if len(seqs) != 1:
        raise ParseError("net takes exactly one sequent")
    s = seqs[0]
    w = translate(s)
    if args.all:
        if args.ignore_sisterhood:
            words = [encode(net.structure).letters for net in enumerate_nets(w, limit=args.limit, max_n=args.max_n)]
        else:
            g = intersect(build_grammar(w), automaton.build(w))
            words = enumerate_language(g, args.limit)
    else:
        d = decide(s)
        words = [d.witness.code.letters] if d.witness else []
    codes = [" ".join(f"e{j + 1}" for j in word) for word in words]
    _emit(args, {"sequent": print_sequent(s), "omega": str(w), "nets": [[j + 1 for j in x] for x in words]},
          "\n".join([str(w)] + codes) if codes else f"{w}\nno net")
    if args.dot and words:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(decode(CodeWord(tuple(words[0]))), w) + "\n")
    return EXIT_YES if words else EXIT_NO


def cmd_oracle(args) -> int:
    budget = SearchBudget(args.max_connectives, args.timeout)
    code = EXIT_YES
    for s in _inputs(args):
        d = prove(s, budget)
        if d is None:
            code = EXIT_NO
        payload = {"sequent": print_sequent(s), "derivable": d is not None}
        if d is not None:
            payload["derivation"] = d.to_json()
        text = f"{print_sequent(s)}: {'derivable' if d else 'not derivable'}"
        if d is not None and args.show:
            text += "\n" + d.pretty(1)
        _emit(args, payload, text)
    return code


def cmd_stats(args) -> int:
    for s in _inputs(args):
        w = translate(s)
        p = params(w)
        payload = {"sequent": print_sequent(s), "n": p.n, "d": p.d, "b": p.b}
        lines = [f"{print_sequent(s)}", f"  n={p.n} d={p.d} b={p.b}", f"  omega: {w}"]
        if args.dump_omega:
            lines.append(w.dump())
            payload["omega"] = w.tokens()
        if args.grammar:
            g = build_grammar(w)
            gs = grammar_stats(g)
            bound = size_bound(p.n, profile_count_bound(p.d))
            payload["grammar"] = {"nonterminals": gs.nonterminals, "rules": gs.rules, "size": gs.size,
                                  "max_profiles": gs.max_profiles, "profile_bound": profile_count_bound(p.d),
                                  "size_bound": bound}
            lines.append(f"  grammar: {gs.nonterminals} nonterminals, {gs.rules} rules, size {gs.size}"
                         f" (bound {bound}); profiles per triple {gs.max_profiles}"
                         f" (bound {profile_count_bound(p.d)})")
            if args.dump_grammar:
                lines.append(dump(g))
        if args.dfa:
            a = automaton.build(w)
            payload["dfa"] = {"states": len(a.states), "transitions": a.transition_count,
                              "bound": automaton.bound(w)}
            lines.append(f"  dfa: {len(a.states)} states, {a.transition_count} transitions"
                         f" (bound {automaton.bound(w)})")
        _emit(args, payload, "\n".join(lines))
    return EXIT_YES


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(max(y, 1e-9)) for y in ys]
    return statistics.linear_regression(lx, ly).slope


def run_bench(kind, ks, repeat=1):
    rows = []
    for k in ks:
        s = bench_family(kind, k)
        best = math.inf
        for _ in range(repeat):
            t0 = time.perf_counter()
            d = decide(s, want_witness=False)
            best = min(best, time.perf_counter() - t0)
        rows.append({"k": k, "n": d.params["n"], "derivable": d.derivable, "seconds": best,
                     "grammar_rules": d.stats["grammar_rules"],
                     "intersection_rules": d.stats["intersection_rules"]})
    return rows


def cmd_bench(args) -> int:
    ks = range(1, args.k + 1) if args.sweep else [args.k]
    rows = run_bench(args.family, ks, args.repeat)
    payload = {"family": args.family, "rows": rows}
    lines = [f"{'k':>3} {'n':>4} {'derivable':>9} {'rules':>7} {'ms':>9}"]
    for r in rows:
        lines.append(f"{r['k']:>3} {r['n']:>4} {str(r['derivable']):>9} {r['grammar_rules']:>7}"
                     f" {r['seconds'] * 1000:>9.2f}")
    if len(rows) >= 2:
        slope = loglog_slope([r["n"] for r in rows], [r["seconds"] for r in rows])
        payload["loglog_slope"] = slope
        lines.append(f"log-log slope of time against n: {slope:.2f}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_YES if all(r["derivable"] for r in rows) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lbstar", description="Decide derivability in the Lambek calculus with brackets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(p):
        p.add_argument("sequent", nargs="*", help="sequents such as 'p/q, q => p'; stdin if omitted")
        p.add_argument("--json", action="store_true", help="one JSON object per sequent")
        return p

    p = with_input(sub.add_parser("decide", help="decide derivability"))
    p.add_argument("--witness", action="store_true", help="also extract and check a net")
    p = with_input(sub.add_parser("prove", help="decide and print a derivation"))
    p.set_defaults(witness=True)
    p = with_input(sub.add_parser("net", help="show nets over the translation"))
    p.add_argument("--all", action="store_true", help="list every sisterhood-respecting net")
    p.add_argument("--ignore-sisterhood", action="store_true", help="with --all, list all nets by brute force")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--max-n", type=int, default=20, help="brute-force literal bound")
    p.add_argument("--dot", metavar="PATH", help="write the first net as DOT")
    p = with_input(sub.add_parser("oracle", help="exhaustive backward proof search"))
    p.add_argument("--max-connectives", type=int, default=None)
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.add_argument("--show", action="store_true", help="print the derivation")
    p = with_input(sub.add_parser("stats", help="translation parameters and construction sizes"))
    p.add_argument("--dump-omega", action="store_true")
    p.add_argument("--grammar", action="store_true")
    p.add_argument("--dump-grammar", action="store_true")
    p.add_argument("--dfa", action="store_true")
    p = sub.add_parser("bench", help="time a benchmark family")
    p.add_argument("--family", choices=FAMILIES, default="pp")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--sweep", action="store_true", help="run k = 1 .. K")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return parser


COMMANDS = {
    "decide": cmd_decide,
    "prove": lambda a: cmd_decide(a, witness=True),
    "net": cmd_net,
    "oracle": cmd_oracle,
    "stats": cmd_stats,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
