"""Command line front end.

Exit codes: 0 on success and agreement, 1 when a check or comparison
fails, 2 on usage or input errors.  All numbers print as exact fractions;
anything decimal is explicitly marked approximate.  Output depends only
on the arguments, so identical invocations produce identical bytes.
"""

import argparse
import os
import sys
from fractions import Fraction

from .automata import (ACCEPT, REJECT, accept_probability, parse_automaton,
                       format_automaton, validate)
from .compiler import compile_automaton, format_compiled
from .corpus import by_name, corpus
from .errors import GraphingError
from .execution import ExecOptions, accept_path_sum, discretize, plug
from .generators import random_det_pair, random_subprob_pair, split_sources
from .graphing import format_graphing, parse_graphing
from .measurement import make_test, membership
from .space import Atom, Region
from .theta import format_theta, reduce, reduce_random
from .words import canonical_representation, word_graph, bang_representation


def _load_machine(spec: str):
    if os.path.exists(spec):
        with open(spec) as fh:
            a = parse_automaton(fh.read())
    else:
        try:
            a = by_name(spec)
        except KeyError:
            raise GraphingError(
                f"no machine named {spec!r} and no such file") from None
    problems = validate(a)
    if problems:
        raise GraphingError(f"invalid machine: " + "; ".join(problems))
    return a


def _word(arg: str) -> str:
    w = "" if arg == "-" else arg
    if any(ch not in "01" for ch in w):
        raise GraphingError(f"word must be over 01 (use - for empty): {arg!r}")
    return w


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise GraphingError(f"not a fraction: {text!r}") from None


def _println(*parts):
    print(" ".join(str(p) for p in parts))


def cmd_compile(args) -> int:
    a = _load_machine(args.machine)
    m = compile_automaton(a)
    g = m.graphing
    _println("machine:", a.name)
    _println("heads:", a.heads)
    _println("stack:", "yes" if a.stack else "no")
    _println("dialect-states:", len(g.dialect))
    _println("edges:", len(g.edges))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(format_compiled(m))
        _println("wrote:", args.out)
    return 0


def cmd_accept(args) -> int:
    a = _load_machine(args.machine)
    w = _word(args.word)
    p_oracle, oracle_exact = accept_probability(a, w, args.stack_depth)
    m = compile_automaton(a)
    cells = args.grid if args.grid else len(w) + 1
    rep = bang_representation(word_graph(w), tuple(range(len(w) + 1)), cells)
    opts = ExecOptions(stack_depth=args.stack_depth)
    ps = accept_path_sum(m, rep, Region((Atom("a"),)), opts)
    _println("machine:", a.name)
    _println("word:", args.word)
    _println("oracle:", p_oracle, "(exact)" if oracle_exact else "(lower bound)")
    _println("dialogue:", ps.lower_bound,
             "(exact)" if ps.exact else "(lower bound)")
    _println("classes:")
    for theta, mass in ps.classes():
        _println(" ", format_theta(theta), mass)
    if not ps.exact:
        _println("dropped:", ps.dropped)
    agree = p_oracle == ps.lower_bound and oracle_exact == ps.exact
    _println("verdict:", "agree" if agree else "disagree")
    return 0 if agree else 1


def cmd_membership(args) -> int:
    a = _load_machine(args.machine)
    test = make_test(args.test, heads=a.heads,
                     epsilon=_fraction(args.epsilon) if args.epsilon else None)
    opts = ExecOptions(stack_depth=args.stack_depth)
    m = compile_automaton(a)
    _println("machine:", a.name)
    _println("test:", args.test + (f"[{test.epsilon}]" if test.epsilon is not None
                                   else ""))
    failures = 0
    for raw in args.words:
        w = _word(raw)
        report = membership(m, w, test, opts)
        if args.test == "neg":
            q, _ = accept_probability(a, w, args.stack_depth, outcome=REJECT)
            oracle = q == 0
        else:
            p, _ = accept_probability(a, w, args.stack_depth, outcome=ACCEPT)
            oracle = p > 0 if args.test == "pos" else p > test.epsilon
        ok = report.orthogonal == oracle
        failures += 0 if ok else 1
        _println(raw, "orthogonal" if report.orthogonal else "crossing",
                 "oracle=" + ("yes" if oracle else "no"),
                 "ok" if ok else "MISMATCH")
    return 0 if failures == 0 else 1


def cmd_equiv(args) -> int:
    with open(args.left) as fh:
        f = parse_graphing(fh.read())
    with open(args.right) as fh:
        g = parse_graphing(fh.read())
    same = f.equivalent(g)
    _println("equivalent:", "yes" if same else "no")
    return 0 if same else 1


def cmd_dump(args) -> int:
    a = _load_machine(args.machine)
    if args.graphing:
        m = compile_automaton(a)
        sys.stdout.write(format_compiled(m))
        return 0
    if args.word is not None:
        w = _word(args.word)
        m = compile_automaton(a)
        rep = canonical_representation(w)
        grid = args.grid if args.grid else rep.cells
        thick_m, thick_w = discretize(m.graphing, rep.graphing, grid)
        for label, tg in (("machine", thick_m), ("word", thick_w)):
            _println(f"{label}: {len(tg.nodes)} nodes, {len(tg.edges)} edges, "
                     f"grid {tg.grid}")
            for e in tg.edges:
                s, t = tg.nodes[e.source], tg.nodes[e.target]
                _println(" ", _thick_node(s), "->", _thick_node(t),
                         f"w={e.weight.p}", f"theta={format_theta(e.theta)}",
                         f"guard={e.guard or '-'}")
        return 0
    sys.stdout.write(format_automaton(a))
    return 0


def _thick_node(n) -> str:
    cube = ",".join(f"{c}:{i}" for c, i in n.cube) or "-"
    return f"{n.sym}[{cube}]@{n.state}"


def _dump_counterexample(directory, name, text) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def _suite_det_closure(args) -> list:
    bad = []
    for seed in range(args.seed, args.seed + args.count):
        f, g, cut = random_det_pair(seed)
        result = plug(f, g, cut)
        if not result.is_deterministic():
            bad.append((seed, f, g))
    return bad


def _suite_subprob_closure(args) -> list:
    bad = []
    for seed in range(args.seed, args.seed + args.count):
        f, g, cut = random_subprob_pair(seed)
        result = plug(f, g, cut)
        if not result.is_subprobabilistic():
            bad.append((seed, f, g))
    return bad


def _suite_refinement(args) -> list:
    bad = []
    for seed in range(args.seed, args.seed + args.count):
        f, g, cut = random_det_pair(seed)
        fine = split_sources(f, seed)
        ok = (fine.is_refinement(f) and fine.equivalent(f)
              and plug(fine, g, cut).equivalent(plug(f, g, cut)))
        if not ok:
            bad.append((seed, f, fine))
    return bad


def _suite_theta_confluence(args) -> list:
    import random

    bad = []
    for seed in range(args.seed, args.seed + args.count):
        rng = random.Random(seed)
        word = "".join(rng.choice("01*c") for _ in range(rng.randrange(9)))
        if reduce_random(word, rng) != reduce(word):
            bad.append((seed, word, None))
    return bad


def _suite_uniformity(args) -> list:
    from .measurement import check_uniformity

    bad = []
    names = ("even-ones", "contains-one", "coin-half")
    words = ("", "1", "01", "110")
    test_cache = {}
    for i, name in enumerate(names):
        a = by_name(name)
        test = test_cache.setdefault(a.heads, make_test("pos", heads=a.heads))
        m = compile_automaton(a)
        for j, w in enumerate(words):
            uniform, _ = check_uniformity(m, w, test, samples=args.reps,
                                          seed=args.seed + i * 31 + j)
            if not uniform:
                bad.append((f"{name}/{w or '-'}", None, None))
    return bad


_SUITES = {
    "det-closure": _suite_det_closure,
    "subprob-closure": _suite_subprob_closure,
    "refinement": _suite_refinement,
    "theta-confluence": _suite_theta_confluence,
    "uniformity": _suite_uniformity,
}


def cmd_properties(args) -> int:
    suite = _SUITES[args.suite]
    bad = suite(args)
    total = args.count if args.suite != "uniformity" else 12
    _println(f"suite {args.suite}: {total - len(bad)}/{total} pass")
    for case, left, right in bad:
        _println("fail:", case)
        if left is not None:
            path = _dump_counterexample(
                args.dump_dir, f"{args.suite}-{case}-left.graphing",
                format_graphing(left))
            _println("  wrote", path)
        if right is not None:
            path = _dump_counterexample(
                args.dump_dir, f"{args.suite}-{case}-right.graphing",
                format_graphing(right))
            _println("  wrote", path)
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="graphings",
        description="compile multihead machines to measurable graphings and "
                    "check them against exact dialogue semantics")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a machine and show its size")
    c.add_argument("machine", help="catalog name or rule-table file")
    c.add_argument("--out", help="write the compiled graphing to a file")
    c.set_defaults(fn=cmd_compile)

    c = sub.add_parser("accept", help="acceptance probability two ways")
    c.add_argument("machine")
    c.add_argument("word", help="word over 01, or - for the empty word")
    c.add_argument("--stack-depth", type=int, default=16)
    c.add_argument("--grid", type=int, default=0,
                   help="word cells (default: length + 1)")
    c.set_defaults(fn=cmd_accept)

    c = sub.add_parser("membership", help="language membership through tests")
    c.add_argument("machine")
    c.add_argument("words", nargs="+")
    c.add_argument("--test", choices=("neg", "pos", "prob"), default="pos")
    c.add_argument("--epsilon", help="threshold fraction for prob tests")
    c.add_argument("--stack-depth", type=int, default=16)
    c.set_defaults(fn=cmd_membership)

    c = sub.add_parser("equiv", help="compare two graphing files")
    c.add_argument("left")
    c.add_argument("right")
    c.set_defaults(fn=cmd_equiv)

    c = sub.add_parser("dump", help="print a machine, its graphing, or a grid view")
    c.add_argument("machine")
    c.add_argument("--graphing", action="store_true",
                   help="print the compiled graphing instead of the rules")
    c.add_argument("--word", help="discretize against this word")
    c.add_argument("--grid", type=int, default=0)
    c.set_defaults(fn=cmd_dump)

    c = sub.add_parser("properties", help="run a randomized property suite")
    c.add_argument("suite", choices=sorted(_SUITES))
    c.add_argument("--count", type=int, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--reps", type=int, default=5)
    c.add_argument("--dump-dir", default=".")
    c.set_defaults(fn=cmd_properties)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GraphingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
