"""``permmatch`` command-line entry point.

Exit codes: 0 success / occurrence found, 1 no occurrence or a failed
verification, 2 usage or input error, 3 time cap exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import COLUMNS, SUITES, run_bench
from .matchers import ALGORITHMS, enumerate_occurrences, match
from .patterns import (
    Classical,
    PatternError,
    cells_stat,
    cols_stat,
    parse_pattern,
    pattern_complement,
    pattern_inverse,
    pattern_reverse,
    print_pattern,
    rows_stat,
)
from .perm import PermutationError, complement, inverse, lrun, parse_permutation, reverse, runs
from .reductions import (
    InstanceError,
    format_sppm,
    parse_graph,
    parse_sppm,
    reduce_clique_to_sppm,
    reduce_sppm_to_bivincular,
    reduce_sppm_to_mesh,
    reduce_sppm_to_vincular,
)
from .transforms import blowup_run2
from .verify import BoundsError, blowup_suite, boxed_list, oracle_agreement, pop_suite, reduction_chain

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnostic instead of usage dump
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _u64(s: str) -> int:
    v = int(s, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _first_line(text: str) -> str:
    for ln in text.splitlines():
        if ln.strip() and not ln.lstrip().startswith("#"):
            return ln
    raise UsageError("input contains no data line")


def _line(args, name: str) -> str | None:
    inline, path = getattr(args, name), getattr(args, f"{name}_file")
    if inline is not None and path is not None:
        raise UsageError(f"give --{name} or --{name}-file, not both")
    if path is not None:
        return _first_line(_read(path))
    return inline


def _pattern_from(line: str):
    """Grammar line, or a bare permutation taken as a classical pattern."""
    if ":" in line:
        return parse_pattern(line)
    return Classical(parse_permutation(line))


def _require(value, what: str):
    if value is None:
        raise UsageError(f"missing {what}")
    return value


# -- subcommands ----------------------------------------------------------------

def cmd_match(args, out) -> int:
    pat = _pattern_from(_require(_line(args, "pattern"), "--pattern"))
    txt = parse_permutation(_require(_line(args, "text"), "--text"))
    say = (lambda s: None) if args.quiet else (lambda s: print(s, file=out))
    if args.count or args.enumerate:
        occ = enumerate_occurrences(pat.to_mesh(), txt)
        if args.count:
            say(str(len(occ)))
        else:
            for m in occ:
                say(" ".join(map(str, m.positions)))
        return EXIT_OK if occ else EXIT_NO
    res = match(pat, txt, algo=args.algo, use_separable=args.separable, time_cap=args.time_cap)
    if res.timed_out:
        print("permmatch: time cap exceeded", file=sys.stderr)
        return EXIT_TIMEOUT
    if args.format == "tabular":
        say("#found\talgorithm\tmapping\tpositions\tnodes")
        w = res.witness
        mapping = " ".join(f"{v}->{x}" for v, x in w.as_dict().items()) if w else ""
        positions = " ".join(map(str, w.positions)) if w else ""
        say(f"{'yes' if res.found else 'no'}\t{res.algorithm}\t{mapping}\t{positions}\t{res.stats.nodes}")
    elif res.found:
        say("yes")
        say("mapping: " + " ".join(f"{v}->{x}" for v, x in res.witness.as_dict().items()))
        say("positions: " + " ".join(map(str, res.witness.positions)))
    else:
        say("no")
    return EXIT_OK if res.found else EXIT_NO


def cmd_transform(args, out) -> int:
    pline, tline = _line(args, "pattern"), _line(args, "text")
    if pline is None and tline is None:
        raise UsageError("transform needs --pattern and/or --text")
    pat = _pattern_from(pline) if pline is not None else None
    txt = parse_permutation(tline) if tline is not None else None
    if args.kind == "blowup":
        pat, txt = _require(pat, "--pattern"), _require(txt, "--text")
        if not isinstance(pat, Classical):
            raise UsageError("blowup is defined for classical patterns only")
        res = blowup_run2(pat.perm, txt)
        print(print_pattern(Classical(res.pattern_out)), file=out)
        print(res.text_out, file=out)
        return EXIT_OK
    on_pattern = {
        "reverse": pattern_reverse,
        "complement": pattern_complement,
        "inverse": lambda p: pattern_inverse(p, promote=args.promote),
    }[args.kind]
    on_text = {"reverse": reverse, "complement": complement, "inverse": inverse}[args.kind]
    if pat is not None:
        print(print_pattern(on_pattern(pat)), file=out)
    if txt is not None:
        print(on_text(txt), file=out)
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    data = _read(args.input)
    if args.kind == "clique-sppm":
        if args.k is None:
            raise UsageError("clique-sppm needs -k")
        g = parse_graph(data)
        if not 1 <= args.k <= g.n_vertices:
            raise UsageError(f"k={args.k} outside [1,{g.n_vertices}]")
        inst, trace = reduce_clique_to_sppm(g, args.k)
        for side, st in (("pattern", trace.pattern), ("text", trace.text)):
            print(f"# {side} blocks: " + " ".join(f"{a}-{b}" for a, b in st.blocks), file=out)
            print(f"# {side} guard positions: " + " ".join(f"{a},{b}" for a, b in st.guard_positions), file=out)
            print(f"# {side} non-guard maximum: {st.maximum}", file=out)
        out.write(format_sppm(inst))
        return EXIT_OK
    inst = parse_sppm(data)
    fn = {
        "sppm-vincular": reduce_sppm_to_vincular,
        "sppm-bivincular": reduce_sppm_to_bivincular,
        "sppm-mesh": reduce_sppm_to_mesh,
    }[args.kind]
    pat, txt = fn(inst)
    print(print_pattern(pat), file=out)
    print(txt, file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    def opt(name, default):
        value = getattr(args, name)
        return default if value is None else value

    jobs = args.jobs
    if args.kind == "oracle-agreement":
        rep = oracle_agreement(opt("max_k", 3), opt("max_n", 6), mesh_samples=args.mesh_samples, seed=args.seed, jobs=jobs)
    elif args.kind == "boxed-list":
        rep = boxed_list(opt("max_n", 7), opt("max_k", 4), args.witness_max_n, jobs=jobs)
    elif args.kind == "blowup":
        rep = blowup_suite(opt("cases", 500), args.seed, opt("max_k", 4), opt("max_n", 8), jobs=jobs)
    elif args.kind == "reduction-chain":
        rep = reduction_chain(args.vertices, sppm_cases=opt("cases", 200), seed=args.seed,
                              time_cap=opt("time_cap", 60.0), jobs=jobs)
    else:
        rep = pop_suite(opt("cases", 100), args.seed, opt("max_k", 5), opt("max_n", 8), jobs=jobs)
    for line in rep.lines():
        print(line, file=out)
    return EXIT_OK if rep.passed else EXIT_NO


def cmd_bench(args, out) -> int:
    sizes = [int(x) for x in args.sizes.split(",")] if args.sizes else None
    if sizes is not None and any(n < 1 for n in sizes):
        raise UsageError("sizes must be positive")
    print("#" + "\t".join(COLUMNS), file=out)
    for row in run_bench(args.suite, sizes, args.k, args.seed, args.time_cap, args.repeats, args.min_seconds):
        print(row.tsv(), file=out)
    return EXIT_OK


def cmd_stats(args, out) -> int:
    pline, tline = _line(args, "pattern"), _line(args, "text")
    if pline is None and tline is None:
        raise UsageError("stats needs --pattern and/or --text")
    if pline is not None:
        pat = _pattern_from(pline)
        perm = pat.perm
        print(f"kind: {pat.kind}", file=out)
        print(f"cols: {cols_stat(pat)}", file=out)
        print(f"rows: {rows_stat(pat)}", file=out)
        print(f"cells: {cells_stat(pat)}", file=out)
    else:
        perm = parse_permutation(tline)
    print("runs: " + " | ".join(" ".join(map(str, r)) for r in runs(perm)), file=out)
    print(f"lrun: {lrun(perm)}", file=out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def _io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-p", "--pattern", help="pattern line, e.g. 'vincular: perm=1 3 2; cols=1'")
    p.add_argument("--pattern-file", help="file whose first data line is the pattern ('-' = stdin)")
    p.add_argument("-t", "--text", help="text permutation, e.g. '1 6 4 2 5 3'")
    p.add_argument("--text-file", help="file whose first data line is the text ('-' = stdin)")


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags; SUPPRESS keeps a value given
        # before the subcommand from being reset by the subparser's default
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g.add_argument("--seed", type=_u64, default=d(0), help="random seed (default 0)")
        g.add_argument("--time-cap", type=_positive_float, default=d(None), help="seconds per solver call")
        g.add_argument("--jobs", type=int, default=d(1), help="worker processes for verify (>= 1)")
        g.add_argument("--format", choices=("plain", "tabular"), default=d("plain"))
        return g

    glob = global_flags(suppress=True)
    ap = _Parser(prog="permmatch", description="Permutation pattern matching toolkit.", parents=[global_flags(suppress=False)])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("match", parents=[glob], help="decide whether a pattern occurs in a text")
    _io_flags(m)
    m.add_argument("--algo", choices=ALGORITHMS, default="auto")
    m.add_argument("--separable", action="store_true", help="let auto use the separable DP")
    m.add_argument("--quiet", action="store_true", help="no output; the exit code carries the answer")
    grp = m.add_mutually_exclusive_group()
    grp.add_argument("--count", action="store_true", help="print the number of occurrences")
    grp.add_argument("--enumerate", action="store_true", help="print every occurrence's positions")
    m.set_defaults(func=cmd_match)

    t = sub.add_parser("transform", parents=[glob], help="apply a symmetry or the run-length blow-up")
    t.add_argument("kind", choices=("reverse", "complement", "inverse", "blowup"))
    _io_flags(t)
    t.add_argument("--promote", action="store_true", help="inverse of vincular/consecutive becomes bivincular")
    t.set_defaults(func=cmd_transform)

    r = sub.add_parser("reduce", parents=[glob], help="build a reduced instance")
    r.add_argument("kind", choices=("clique-sppm", "sppm-vincular", "sppm-bivincular", "sppm-mesh"))
    r.add_argument("input", help="graph or SPPM file ('-' = stdin)")
    r.add_argument("-k", type=int, help="clique size (clique-sppm)")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", parents=[glob], help="run an oracle-backed invariant suite")
    v.add_argument("kind", choices=("oracle-agreement", "boxed-list", "blowup", "reduction-chain", "pop"))
    v.add_argument("--max-k", type=int)
    v.add_argument("--max-n", type=int)
    v.add_argument("--witness-max-n", type=int, default=9)
    v.add_argument("--cases", type=int)
    v.add_argument("--vertices", type=int, default=4)
    v.add_argument("--mesh-samples", type=int, default=32, help="random k=3 mesh shadings per permutation")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[glob], help="timing table (TSV)")
    b.add_argument("suite", choices=SUITES)
    b.add_argument("--sizes", help="comma-separated n values")
    b.add_argument("-k", type=int, help="pattern length")
    b.add_argument("--repeats", type=int, default=9, help="minimum timed runs per size (best run is reported)")
    b.add_argument("--min-seconds", type=float, default=1.0, help="keep sampling until each size has this much run time")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("stats", parents=[glob], help="runs, lrun and shading statistics")
    _io_flags(s)
    s.set_defaults(func=cmd_stats)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args, out)
    except (UsageError, PatternError, PermutationError, InstanceError, BoundsError, ValueError) as exc:
        print(f"permmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
