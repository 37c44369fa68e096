"""Command line driver: ``gwloc <command> [options]``.

Rationals are always printed as ``p/q``.  Exit codes: 0 ok, 1 check
failure, 2 invalid arguments, 3 unsupported genus, 4 missing Hodge table
entries, 5 graph cap exceeded, 6 non-generic weights.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from fractions import Fraction

from . import __version__
from .cache import default_cache_path, load_into, write_cache
from .errors import GWLocError, InvalidArgumentError
from .exact import format_rational, to_rational
from .graphs import DEFAULT_GRAPH_CAP, enumerate_graphs
from .gw import InvariantQuery, gw_invariant, plane_curve_query, weight_independence_check
from .hodge import HodgeTable
from .integrals import default_cache
from .localization import WeightVector
from .multicover import (
    conjecture_value,
    conjecture_value_chi,
    gamma_series,
    gamma_series_from_psi,
    manin_sum,
    mast_sum,
    mast2_sum,
    multicover_graphsum,
    psi_series,
    s_beta,
)
from .parallel import available_workers

log = logging.getLogger("gwloc")

LONG_RUNNING_HINT = "note: this query is long-running"


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _weights(text: str) -> WeightVector:
    try:
        return WeightVector(tuple(to_rational(x) for x in text.split(",")))
    except GWLocError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed of the weight stream")
    common.add_argument("--trials", type=_positive, default=1, help="weight vectors to compare")
    common.add_argument("--cap", type=_positive, default=DEFAULT_GRAPH_CAP, help="graph enumeration cap")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache", default=None, help="integral cache file (env GWLOC_CACHE)")
    common.add_argument("--workers", type=_positive, default=None, help="worker processes (default: all CPUs)")
    common.add_argument("--timing", action="store_true", help="include elapsed_ms and cache_hits in records")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress and dump per-graph values")

    p = argparse.ArgumentParser(prog="gwloc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gwloc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    gw = sub.add_parser("gw", parents=[common], help="Gromov-Witten invariant of P^r")
    gw.add_argument("--g", type=int, required=True)
    gw.add_argument("--d", type=int, required=True)
    gw.add_argument("--r", type=int, required=True)
    gw.add_argument("--insertions", type=_int_list, default=None, help="comma separated powers of H")
    gw.add_argument("--points", type=int, default=0, help="add this many point insertions H^r")
    gw.add_argument("--weights", type=_weights, default=None)
    gw.add_argument("--method", choices=("skeleton", "graphs"), default="skeleton")

    cnt = sub.add_parser("count", parents=[common], help="plane curves through 3d+g-1 points")
    cnt.add_argument("--g", type=int, default=0)
    cnt.add_argument("--d", type=int, required=True)

    mc = sub.add_parser("multicover", parents=[common], help="multiple-cover contributions")
    mc.add_argument("--g", type=int, required=True)
    mc.add_argument("--d", type=int, required=True)
    mc.add_argument("--mode", choices=("graph", "partition", "both"), default="both")
    mc.add_argument("--weights", type=_weights, default=None)
    mc.add_argument("--hodge-table", default=None, help="Hodge integral table for g >= 2")

    se = sub.add_parser("series", parents=[common], help="generating series coefficients")
    se.add_argument("--kind", choices=("gamma", "gamma-from-psi", "psi", "sbeta", "manin"), default="gamma")
    se.add_argument("--order", type=_positive, default=10)

    cj = sub.add_parser("conjecture", parents=[common], help="higher-genus closed form table")
    cj.add_argument("--g", type=int, default=None)
    cj.add_argument("--d", type=int, default=None)
    cj.add_argument("--gmax", type=int, default=6)
    cj.add_argument("--dmax", type=int, default=5)

    gr = sub.add_parser("graphs", parents=[common], help="enumerate fixed graphs as JSON")
    gr.add_argument("--g", type=int, default=0)
    gr.add_argument("--n", type=int, default=0)
    gr.add_argument("--r", type=int, required=True)
    gr.add_argument("--d", type=int, required=True)

    sc = sub.add_parser("selfcheck", parents=[common], help="run the acceptance criteria")
    sc.add_argument("--quick", action="store_true", help="skip the degree-4 plane curve checks")
    return p


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    elif fmt == "csv":
        flat = [_flatten(r) for r in records]
        fields = sorted({k for r in flat for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in flat:
            writer.writerow(r)
        out.write(buf.getvalue())
    else:
        for rec in records:
            out.write(" ".join(f"{k}={_text(v)}" for k, v in sorted(_flatten(rec).items())) + "\n")


def _flatten(rec: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v
    return out


def _text(v):
    return v if isinstance(v, str) else json.dumps(v)


def _series_records(kind: str, order: int) -> list[dict]:
    if kind == "gamma":
        coeffs = gamma_series(order)
    elif kind == "gamma-from-psi":
        coeffs = gamma_series_from_psi(order)
    elif kind == "psi":
        coeffs = psi_series(order)
    elif kind == "sbeta":
        coeffs = [Fraction(0)] + [s_beta(b) for b in range(1, order + 1)]
    else:
        coeffs = [Fraction(0)] + [manin_sum(d) for d in range(1, order + 1)]
    start = 0 if kind == "psi" else 1
    return [{"series": kind, "k": k, "value": format_rational(coeffs[k])} for k in range(start, order + 1)]


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    workers = args.workers or available_workers()
    cache_path = args.cache or default_cache_path()
    if cache_path:
        n = load_into(default_cache, cache_path)
        log.info("loaded %d cached integrals from %s", n, cache_path)
    try:
        status = _dispatch(args, workers, out)
    except GWLocError as exc:
        print(f"gwloc: error: {exc}", file=sys.stderr)
        return exc.exit_code
    finally:
        if cache_path:
            write_cache(cache_path, dict(default_cache.entries))
    return status


def _dispatch(args, workers: int, out) -> int:
    cmd = args.command
    if cmd in ("gw", "count"):
        if cmd == "gw":
            ins = list(args.insertions or []) + [args.r] * args.points
            query = InvariantQuery(args.g, args.d, args.r, tuple(ins))
            method = args.method
            weights = args.weights
        else:
            query = plane_curve_query(args.g, args.d)
            method, weights = "skeleton", None
        if query.r == 2 and query.d >= 4 and method == "graphs":
            print(LONG_RUNNING_HINT, file=sys.stderr)
        res = gw_invariant(
            query,
            weights=weights,
            seed=args.seed,
            trials=args.trials,
            workers=workers,
            cap=args.cap,
            method=method,
            dump=args.verbose,
        )
        _emit([res.to_record(timing=args.timing)], args.format, out)
        return 0
    if cmd == "multicover":
        return _multicover(args, workers, out)
    if cmd == "series":
        _emit(_series_records(args.kind, args.order), args.format, out)
        return 0
    if cmd == "conjecture":
        gs = [args.g] if args.g is not None else range(2, args.gmax + 1)
        ds = [args.d] if args.d is not None else range(1, args.dmax + 1)
        recs = []
        for g in gs:
            for d in ds:
                recs.append(
                    {
                        "g": g,
                        "d": d,
                        "value": format_rational(conjecture_value(g, d)),
                        "chi_form": format_rational(conjecture_value_chi(g, d)),
                    }
                )
        _emit(recs, args.format, out)
        return 0
    if cmd == "graphs":
        graphs = enumerate_graphs(args.g, args.n, args.r, args.d, cap=args.cap)
        if args.format == "json":
            out.write(json.dumps([g.to_dict() for g in graphs], sort_keys=True, indent=1) + "\n")
        else:
            _emit([{"index": i, "graph": json.dumps(g.to_dict(), sort_keys=True)} for i, g in enumerate(graphs)], args.format, out)
        return 0
    if cmd == "selfcheck":
        from .selfcheck import run_all

        ok = run_all(extended=not args.quick, emit=lambda line: out.write(line + "\n"))
        return 0 if ok else 1
    raise InvalidArgumentError(f"unknown command {cmd}")


def _multicover(args, workers, out) -> int:
    start = time.perf_counter()
    rec: dict = {"query": {"g": args.g, "d": args.d, "mode": args.mode}}
    table = HodgeTable.load(args.hodge_table) if args.hodge_table else None
    if args.mode in ("partition", "both"):
        if args.g == 1 and table is None:
            rec["partition_value"] = format_rational(mast_sum(args.d))
        elif args.g == 0:
            raise InvalidArgumentError("the partition form is stated for g >= 1; use --mode graph")
        else:
            rec["partition_value"] = format_rational(mast2_sum(args.g, args.d, table))
    if args.mode in ("graph", "both") and args.g <= 1:
        vals = []
        weights = [args.weights] if args.weights else None
        if weights is None:
            from itertools import islice

            from .localization import weight_stream

            weights = list(islice(weight_stream(1, args.seed), args.trials))
        for w in weights:
            vals.append(multicover_graphsum(args.g, args.d, w, workers=workers))
        if len(set(vals)) != 1:
            raise ArithmeticError(f"weight dependence: {vals}")
        rec["graph_value"] = format_rational(vals[0])
        rec["weight_vectors_used"] = [[str(x) for x in w] for w in weights]
    elif args.mode == "graph":
        raise InvalidArgumentError("graph sums are native for g <= 1 only")
    rec["value"] = rec.get("partition_value", rec.get("graph_value"))
    if args.g >= 2:
        rec["conjecture_value"] = format_rational(conjecture_value(args.g, args.d))
    if args.timing:
        rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    _emit([rec], args.format, out)
    return 0


def main() -> None:  # pragma: no cover
    sys.exit(run())
