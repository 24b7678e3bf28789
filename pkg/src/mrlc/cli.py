"""Command-line entry point.

Exit codes: 0 success / MR, 1 negative result (NotMR, Uncorrectable,
NoneExists), 2 usage, input or budget error.  Data goes to stdout,
diagnostics to stderr.
"""
import argparse
import csv
import dataclasses
import sys

from . import __version__, fileformat
from .codec import CorruptionError, UncorrectableError, encode, decode_erasures, Codeword
from .constructions import construct, derive_data_local
from .experiments import (DEFAULT_GRID, RANDOM_BUDGET, SEARCH_BUDGET, exhaustive_lower_bound_search,
                          field_size_table, random_mr_probability)
from .gf2 import format_element, table_digest
from .verification import FAST_BUDGET, RANK_BUDGET, BudgetExceeded, verify

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _index_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}") from None


def _grid(text):
    out = []
    for item in text.split(";"):
        parts = item.split(",")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"grid entries look like k,r,h; got {item!r}")
        out.append(tuple(int(p) for p in parts))
    return out


def build_parser():
    p = _Parser(prog="mrlc", description="Maximally recoverable local codes over GF(2^t).",
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version",
                   version=f"mrlc {__version__} irreducible-table sha256:{table_digest()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build an explicit MR code and write it out")
    c.add_argument("--kind", choices=("basic", "optimized"), required=True)
    c.add_argument("--k", type=_positive, required=True)
    c.add_argument("--r", type=_positive, required=True)
    c.add_argument("--h", type=_positive, required=True)
    c.add_argument("--data-local", action="store_true", help="reduce to a data-local code")
    c.add_argument("--k-target", type=_positive, help="data symbols of the data-local code")
    c.add_argument("--out", help="output file (default stdout)")

    v = sub.add_parser("verify", help="check maximal recoverability of a code file")
    v.add_argument("file")
    v.add_argument("--oracle", action="store_true", help="use the rank-based check")
    v.add_argument("--budget", type=_positive)
    v.add_argument("--sample", type=_positive, help="check this many random puncturings")
    v.add_argument("--seed", type=_nonneg, default=0)
    v.add_argument("--jobs", type=_positive, default=1)

    e = sub.add_parser("encode", help="read k hex data symbols on stdin, print n codeword symbols")
    e.add_argument("file")

    d = sub.add_parser("decode", help="read n hex symbols on stdin, print the repaired codeword")
    d.add_argument("file")
    d.add_argument("--erase", type=_index_list, default=[], help="erased positions, e.g. 0,3,7")
    d.add_argument("--data-only", action="store_true", help="print only the k data symbols")

    x = sub.add_parser("experiment", help="random codes, exhaustive search or field-size table (CSV)")
    x.add_argument("mode", choices=("random", "search", "table"))
    x.add_argument("--k", type=_positive)
    x.add_argument("--r", type=_positive)
    x.add_argument("--h", type=_positive)
    x.add_argument("--q-degree", type=_positive, action="append",
                   help="field degree; repeat for several fields (random mode)")
    x.add_argument("--trials", type=_positive)
    x.add_argument("--seed", type=_nonneg, default=0)
    x.add_argument("--budget", type=_positive)
    x.add_argument("--grid", type=_grid, help="table rows as 'k,r,h;k,r,h'")
    x.add_argument("--jobs", type=_positive, default=1)
    return p


def _err(msg):
    print(f"mrlc: {msg}", file=sys.stderr)


def _read_symbols(stream, field, count, allow_unknown=()):
    toks = stream.read().split()
    if len(toks) != count:
        raise ValueError(f"expected {count} symbols on stdin, got {len(toks)}")
    out = []
    for i, tok in enumerate(toks):
        if i in allow_unknown and tok in ("?", "-"):
            out.append(0)
            continue
        value = int(tok, 16)
        if value not in field:
            raise ValueError(f"symbol {tok} is outside GF(2^{field.degree})")
        out.append(value)
    return out


def _cmd_construct(args, parser):
    if args.k_target is not None and not args.data_local:
        parser.error("--k-target requires --data-local")
    code = construct(args.kind, args.k, args.r, args.h)
    if args.data_local:
        code = derive_data_local(code, args.k_target)
    text = fileformat.dumps(code)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    t = code.topology
    _err(f"{args.kind} {t.kind.value} ({t.k},{t.r},{t.h}) code: n={t.n} over GF(2^{code.field.degree})")
    return EXIT_OK


def _cmd_verify(args, parser):
    code = fileformat.load(args.file)
    budget = args.budget or (RANK_BUDGET if args.oracle else FAST_BUDGET)
    verdict = verify(code, oracle=args.oracle, budget=budget, sample=args.sample,
                     seed=args.seed, jobs=args.jobs)
    mode = "exhaustive" if verdict.exhaustive else f"sampled seed={args.seed}"
    if verdict:
        print(f"MR method={verdict.method} checked={verdict.checked} {mode}")
        return EXIT_OK
    w = verdict.witness
    line = (f"NotMR method={verdict.method} puncture={','.join(map(str, w.puncture))} "
            f"erasures={','.join(map(str, w.erasures))}")
    if w.subset is not None:
        line += f" subset={','.join(map(str, w.subset))}"
    print(line)
    return EXIT_NEGATIVE


def _cmd_encode(args, parser):
    code = fileformat.load(args.file)
    data = _read_symbols(sys.stdin, code.field, code.topology.k)
    print(" ".join(format_element(s) for s in encode(code, data).symbols))
    return EXIT_OK


def _cmd_decode(args, parser):
    code = fileformat.load(args.file)
    t = code.topology
    bad = [i for i in args.erase if not 0 <= i < t.n]
    if bad:
        parser.error(f"--erase positions {bad} out of range for n={t.n}")
    symbols = _read_symbols(sys.stdin, code.field, t.n, allow_unknown=set(args.erase))
    try:
        word = decode_erasures(code, Codeword(symbols, frozenset(args.erase)))
    except UncorrectableError as exc:
        _err(str(exc))
        return EXIT_NEGATIVE
    out = word.symbols
    if args.data_only:
        out = [out[c] for c in t.data_coords]
    print(" ".join(format_element(s) for s in out))
    return EXIT_OK


def _write_csv(rows, fields):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow(["" if row[f] is None else row[f] for f in fields])


def _cmd_experiment(args, parser):
    khr = (args.k, args.r, args.h)
    if args.mode == "table":
        if any(v is not None for v in khr) or args.q_degree or args.trials:
            parser.error("table mode takes --grid only")
        rows = [dataclasses.asdict(r) for r in field_size_table(args.grid or DEFAULT_GRID)]
        _write_csv(rows, ["k", "r", "h", "t_basic", "t_optimized"])
        return EXIT_OK
    if args.grid:
        parser.error("--grid only applies to table mode")
    if any(v is None for v in khr) or not args.q_degree:
        parser.error(f"{args.mode} mode needs --k, --r, --h and --q-degree")
    if args.mode == "random":
        if args.trials is None:
            parser.error("random mode needs --trials")
        rows = []
        for qd in args.q_degree:
            est = random_mr_probability(*khr, qd, args.trials, args.seed, budget=args.budget or RANDOM_BUDGET,
                                        jobs=args.jobs)
            row = dataclasses.asdict(est)
            row["fraction"] = est.fraction
            rows.append(row)
        _write_csv(rows, ["k", "r", "h", "q_degree", "trials", "successes", "fraction",
                          "ci_low", "ci_high", "bound", "seed"])
        return EXIT_OK
    if args.trials is not None or len(args.q_degree) != 1:
        parser.error("search mode takes exactly one --q-degree and no --trials")
    res = exhaustive_lower_bound_search(*khr, args.q_degree[0], budget=args.budget or SEARCH_BUDGET,
                                         jobs=args.jobs)
    witness = "" if res.witness is None else ";".join(" ".join(format_element(x) for x in row)
                                                     for row in res.witness)
    _write_csv([{"k": args.k, "r": args.r, "h": args.h, "q_degree": args.q_degree[0],
                 "status": res.status, "searched": res.searched, "total": res.total, "witness": witness}],
               ["k", "r", "h", "q_degree", "status", "searched", "total", "witness"])
    return EXIT_OK if res.exists else EXIT_NEGATIVE


COMMANDS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "experiment": _cmd_experiment,
}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except BudgetExceeded as exc:
        _err(f"budget exceeded: {exc}")
    except fileformat.FormatError as exc:
        _err(f"bad code file: {exc}")
    except CorruptionError as exc:
        _err(f"corrupted input: {exc}")
    except OSError as exc:
        _err(f"cannot access file: {exc}")
    except ValueError as exc:
        _err(str(exc))
    return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
