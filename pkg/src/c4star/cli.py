"""Command line entry point.

Machine-readable output goes to stdout (TSV or one-line results); summaries
and diagnostics go to stderr. Exit codes: 0 success, 1 verification failure
or inconsistency, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bounds as bd
from .extremal import ExTable, default_table_path, ex_exact
from .graph_core import GraphFormatError, serialize_graph
from .search import EXHAUSTIVE_MAX_ORDER, CapExceeded, Infeasible, SearchParams, exact_f_bruteforce, \
    local_search_witness, sidecar_line
from .witness import WitnessError, load_extra_witnesses, load_witness_set, read_graph_file, verify_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_verify(args) -> int:
    if args.file is not None:
        if args.star is None:
            _err("verify: --file needs --star")
            return EXIT_USAGE
        g = read_graph_file(args.file)
        cert = verify_witness(g, args.star, name=Path(args.file).stem)
        print(cert.describe())
        return EXIT_OK if cert.valid else EXIT_FAIL
    report = load_witness_set(args.dir, strict=False)
    for cert in report.certificates:
        line = cert.describe()
        if not report.matches(cert.name):
            line += "  [MISMATCH: " + "; ".join(str(m) for m in report.mismatches if m.name == cert.name) + "]"
        print(line)
    if report.checksums_ok is False:
        _err("verify: witness files do not match SHA256SUMS")
    _err(f"verify: {sum(c.valid for c in report.certificates)}/{len(report.certificates)} certificates valid")
    return EXIT_OK if report.ok else EXIT_FAIL


def build_table(max_n: int, holdout: bool = False, seeds=None, ex=None, witness_dir=None,
                extra_dir=None, use_extra: bool = True) -> bd.BoundTable:
    table = bd.seed_table(max_n, "holdout" if holdout else "full", seeds)
    witnesses = list(load_witness_set(witness_dir).certificates)
    if use_extra:
        witnesses += load_extra_witnesses(extra_dir)
    ex_table = ExTable.load(ex if ex is not None else default_table_path())
    return bd.propagate(table, witnesses, ex_table)


def cmd_bounds(args) -> int:
    try:
        table = build_table(args.max_n, args.holdout, args.seeds, args.ex, args.witness_dir,
                            args.extra_dir, not args.no_extra)
    except bd.Inconsistent as exc:
        _err(f"bounds: inconsistent table: {exc}")
        for rec in exc.lo_chain + exc.hi_chain:
            _err(f"  {rec.format()}")
        return EXIT_FAIL
    sys.stdout.write(table.to_tsv(chains=args.chains))
    n_exact = sum(iv.exact for iv in table.intervals.values())
    _err(f"bounds: {table.n_max} rows, {n_exact} exact, {sum(1 for _ in table.records())} derivation records")
    if args.plot:
        from .report import plot_bounds

        plot_bounds(table, args.plot)
        _err(f"bounds: figure written to {args.plot}")
    return EXIT_OK


def cmd_search(args) -> int:
    params = SearchParams(
        seed=args.seed,
        max_steps=args.max_steps,
        restarts=args.restarts,
        tabu_tenure=args.tabu_tenure,
        penalty_weight=args.penalty_weight,
    )
    out = local_search_witness(args.vertices, args.star, params, workers=args.workers)
    ok = out.found is not None
    print("found\tvertices\tstar\tsteps\trestarts\tbest_objective")
    print(f"{'yes' if ok else 'no'}\t{args.vertices}\t{args.star}\t{out.steps_used}\t{out.restarts_used}\t"
          f"{out.best_objective:g}")
    if ok:
        _err(f"search: witness certifies f({args.star})>={args.vertices + 1}")
        if args.out:
            Path(args.out).write_text(serialize_graph(out.found) + "\n")
            Path(str(args.out) + ".sidecar").write_text(sidecar_line(out, args.vertices, args.star, params) + "\n")
    else:
        _err("search: no witness found")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_exact(args) -> int:
    n = args.star
    if n < 1:
        _err("exact: --star must be >= 1")
        return EXIT_USAGE
    cap = args.cap
    if cap is None:
        cap = build_table(max(n, 2), use_extra=False).hi(n)
    if cap > EXHAUSTIVE_MAX_ORDER + 1:
        _err(f"exact: cap {cap} needs orders beyond the exhaustive limit {EXHAUSTIVE_MAX_ORDER}")
        return EXIT_USAGE
    try:
        value = exact_f_bruteforce(n, min(cap, EXHAUSTIVE_MAX_ORDER))
    except Infeasible:
        if cap == EXHAUSTIVE_MAX_ORDER + 1:
            value = cap
        else:
            _err(f"exact: good graphs exist up to the cap {cap}; the cap is wrong")
            return EXIT_FAIL
    except CapExceeded as exc:
        _err(f"exact: undecided ({exc})")
        return EXIT_FAIL
    print(f"f({n}) = {value}")
    return EXIT_OK


def cmd_ex(args) -> int:
    q = args.vertices
    if q < 1:
        _err("ex: --vertices must be >= 1")
        return EXIT_USAGE
    table = ExTable.load_default()
    known = table.get(q)
    entry = known if known is not None and not args.compute else ex_exact(q, args.budget, table)
    print("q\tvalue\tkind\tprovenance")
    print(f"{entry.q}\t{entry.value}\t{entry.kind}\t{entry.provenance}")
    if entry.kind == "lower":
        _err(f"ex: budget exhausted; {entry.value} edges attained but maximality unconfirmed")
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="c4star", description="Bounds and certificates for R(C4, K1,n).")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="certify witness graphs")
    v.add_argument("--dir", default=None, help="directory with H34.mat ... H43.mat (default: bundled)")
    v.add_argument("--file", default=None, help="a single bit-matrix file")
    v.add_argument("--star", type=int, default=None, help="star index n for --file")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="propagate bounds and print the table as TSV")
    b.add_argument("--max-n", type=int, default=82)
    b.add_argument("--holdout", action="store_true", help="withhold the values first proved in the source tables")
    b.add_argument("--seeds", default=None, help="known-values TSV (default: bundled)")
    b.add_argument("--ex", default=None, help="ex(q; C4) TSV (default: bundled)")
    b.add_argument("--witness-dir", default=None)
    b.add_argument("--extra-dir", default=None, help="directory of additional witness .mat files")
    b.add_argument("--no-extra", action="store_true", help="use only the seven appendix witnesses")
    b.add_argument("--chains", action="store_true", help="append derivation chains per endpoint")
    b.add_argument("--plot", default=None, metavar="PATH", help="also render the table to an image file")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="tabu search for a good graph")
    s.add_argument("--vertices", type=int, required=True)
    s.add_argument("--star", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-steps", type=int, default=2000)
    s.add_argument("--restarts", type=int, default=20)
    s.add_argument("--tabu-tenure", type=int, default=7)
    s.add_argument("--penalty-weight", type=float, default=1.0)
    s.add_argument("--out", default=None)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("exact", help="f(n) by exhaustive search (small n)")
    e.add_argument("--star", type=int, required=True)
    e.add_argument("--cap", type=int, default=None)
    e.set_defaults(func=cmd_exact)

    x = sub.add_parser("ex", help="ex(q; C4)")
    x.add_argument("--vertices", type=int, required=True)
    x.add_argument("--budget", type=float, default=60.0)
    x.add_argument("--compute", action="store_true", help="compute even if the table has the value")
    x.set_defaults(func=cmd_ex)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphFormatError, WitnessError, FileNotFoundError, bd.SeedInconsistent, ValueError) as exc:
        _err(f"{args.command}: {exc}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
