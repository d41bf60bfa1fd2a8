"""Command-line surface: single computations, identity sweeps, and the
acceptance selftest.

JSON goes to stdout with sorted keys so identical inputs produce identical
bytes; diagnostics go to stderr.  Exit codes: 0 success, 1 verification
failure, 2 usage/parameter error, 3 exhausted budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import BudgetError, ConvergenceError, QSuperError, SupportError
from .qpoly import HalfInt, QPoly
from .supernomial import LVec, big_t, big_t_explicit, q_supernomial, tilde_t
from .partitions import admissible_genfun, enumerate_admissible
from .tsdecomp import build_ts
from .identities import BFParams, bosonic_b, compute_delta, fermionic_f, theorem_grid
from .qseries import (
    BranchParams,
    SeriesCtx,
    StringParams,
    branching_function,
    string_function,
    vira_char_limit,
)
from .matprod import matrix_identity_check, monomial_matrix, supernomial_matrix_element
from . import report
from .selftest import resolve_workers, run_selftest

SCHEMA = report.SCHEMA_VERSION


def _parse_l(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _halfint_obj(h: HalfInt) -> Dict:
    return {"num": h.twice, "den": 2}


def _emit(obj: Dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        flat = _flatten_for_tsv(obj)
        sys.stdout.write("\t".join(flat[0]) + "\n")
        sys.stdout.write("\t".join(flat[1]) + "\n")


def _flatten_for_tsv(obj: Dict):
    keys, vals = [], []
    for k in sorted(obj):
        keys.append(k)
        v = obj[k]
        vals.append(json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v))
    return keys, vals


def _poly_obj(p: QPoly) -> List:
    return p.to_json_terms()


def _timing(seconds: float, deterministic: bool) -> float:
    return 0.0 if deterministic else round(seconds, 6)


def _deterministic(args) -> bool:
    return bool(args.no_timing or os.environ.get("QSUPER_DETERMINISTIC"))


# -- subcommands --------------------------------------------------------------

def cmd_supernomial(args) -> int:
    L = LVec(_parse_l(args.L))
    a = HalfInt.parse(args.a)
    forms = {
        "q": q_supernomial,
        "T": big_t,
        "tilde": tilde_t,
        "explicit": big_t_explicit,
    }
    value = forms[args.form](L, a)
    _emit(
        {
            "schema": SCHEMA,
            "form": args.form,
            "L": list(L.entries),
            "a": _halfint_obj(a),
            "terms": _poly_obj(value),
        },
        args.format,
    )
    return 0


def cmd_partitions(args) -> int:
    L = LVec(_parse_l(args.L))
    out: Dict = {"schema": SCHEMA, "L": list(L.entries), "a": args.a}
    if args.list:
        parts = enumerate_admissible(L, args.a, budget=args.budget)
        out["partitions"] = [list(p.parts) for p in parts]
    else:
        out["terms"] = _poly_obj(admissible_genfun(L, args.a, budget=args.budget))
    _emit(out, args.format)
    return 0


def cmd_ts_decomp(args) -> int:
    ts = build_ts(args.p, args.k)
    payload = {"schema": SCHEMA}
    payload.update(ts.as_dict())
    _emit(payload, args.format)
    return 0


def cmd_identity_check(args) -> int:
    t0 = time.time()
    ts = build_ts(args.p, args.k)
    bf = BFParams(ts, args.N, args.a, args.b, LVec(_parse_l(args.L)))
    lhs = bosonic_b(bf)
    rhs = fermionic_f(bf)
    equal = lhs == rhs
    delta = compute_delta(ts, args.a, args.b)
    _emit(
        {
            "schema": SCHEMA,
            "lhs": _poly_obj(lhs),
            "rhs": _poly_obj(rhs),
            "equal": equal,
            "delta": {"num": delta.numerator, "den": delta.denominator},
            "elapsed": _timing(time.time() - t0, _deterministic(args)),
        },
        args.format,
    )
    return 0 if equal else 1


def cmd_series(args) -> int:
    ctx = SeriesCtx(Fraction(args.order))
    if args.what == "string":
        sp = StringParams(args.N, tuple(_parse_l(args.Lbar)), args.sigma, args.a)
        value = string_function(sp, ctx)
        label = {"N": args.N, "Lbar": list(sp.L), "sigma": args.sigma, "a": args.a}
    elif args.what == "branching":
        bp = BranchParams(
            args.N, args.P, args.Pp, args.r, args.s,
            tuple(_parse_l(args.Lbar)), args.sigma,
        )
        value = branching_function(bp, ctx)
        label = {
            "N": args.N, "P": args.P, "Pp": args.Pp,
            "r": args.r, "s": args.s, "Lbar": list(bp.L), "sigma": args.sigma,
        }
    else:  # virasoro
        ts = build_ts(args.p, args.k)
        base = tuple(((args.a + args.b) % 2 if i == 1 else 0) for i in range(1, args.N + 1))
        bf = BFParams(ts, args.N, args.a, args.b, LVec(base))
        value = vira_char_limit(bf, ctx)
        label = {"p": args.p, "k": args.k, "N": args.N, "a": args.a, "b": args.b}
    out = {"schema": SCHEMA, "what": args.what, "order": args.order,
           "terms": _poly_obj(value)}
    out.update(label)
    _emit(out, args.format)
    return 0


def cmd_matprod(args) -> int:
    L = _parse_l(args.L)
    ok = matrix_identity_check(args.p, L, args.a, args.b)
    mat = monomial_matrix(args.p, L)
    _emit(
        {
            "schema": SCHEMA,
            "p": args.p,
            "L": L,
            "a": args.a,
            "b": args.b,
            "matrix_element": mat[args.a - 1][args.b - 1],
            "supernomial_sum": supernomial_matrix_element(
                args.p, LVec(L), args.a, args.b
            ),
            "equal": ok,
        },
        args.format,
    )
    return 0 if ok else 1


def _sweep_chunk(points) -> List[Dict]:
    rows = []
    for idx, p, k, n, a, b, entries in points:
        t0 = time.time()
        bf = BFParams(build_ts(p, k), n, a, b, LVec(entries))
        equal = bosonic_b(bf) == fermionic_f(bf)
        rows.append(
            {
                "index": idx,
                "p": p,
                "k": k,
                "N": n,
                "a": a,
                "b": b,
                "L": list(entries),
                "equal": equal,
                "seconds": round(time.time() - t0, 6),
            }
        )
    return rows


def run_sweep(config: Dict, workers: Optional[int] = None,
              deterministic: bool = False) -> Dict:
    """Evaluate the boson-fermion identity over the configured grid."""
    pairs = [tuple(x) for x in config.get("pk", [[5, 1]])]
    sum_l = int(config.get("sum_l_max", 3))
    points = []
    idx = 0
    for p, k in pairs:
        for bf in theorem_grid(p, k, sum_l):
            points.append((idx, p, k, bf.n, bf.a, bf.b, bf.L.entries))
            idx += 1
    nworkers = resolve_workers(workers if workers is not None else config.get("workers"))
    chunk_count = max(1, min(len(points), nworkers * 4))
    chunks = [points[i::chunk_count] for i in range(chunk_count)]
    from .selftest import _pmap

    rows: List[Dict] = []
    for part in _pmap(_sweep_chunk, chunks, nworkers):
        rows.extend(part)
    rows.sort(key=lambda r: r["index"])
    return report.report_payload(rows, {"pk": [list(x) for x in pairs],
                                        "sum_l_max": sum_l}, deterministic)


def cmd_sweep(args) -> int:
    with open(args.config) as fh:
        config = json.load(fh)
    payload = run_sweep(config, args.workers, _deterministic(args))
    if args.out:
        written = report.write_report(payload, args.out, args.format)
        print("\n".join(written), file=sys.stderr)
    else:
        text = (
            report.render_json(payload)
            if args.format == "json"
            else report.render_tsv(payload)
        )
        sys.stdout.write(text)
    return 0 if payload["failures"] == 0 else 1


def cmd_selftest(args) -> int:
    profile = "quick" if args.quick else "full"
    results = run_selftest(profile, args.workers, echo=lambda s: print(s, file=sys.stderr))
    payload = {
        "schema": SCHEMA,
        "profile": profile,
        "criteria": [
            {
                "name": r.name,
                "passed": r.passed,
                "points": r.points,
                "seconds": _timing(r.seconds, _deterministic(args)),
                "detail": r.detail,
            }
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    _emit(payload, args.format)
    return 0 if payload["passed"] else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "tsv"), default=argparse.SUPPRESS,
        help="output encoding (default json)",
    )
    common.add_argument(
        "--no-timing", action="store_true", default=argparse.SUPPRESS,
        help="zero elapsed fields for byte-reproducible output",
    )
    parser = argparse.ArgumentParser(
        prog="qsuper",
        description="Exact q-supernomial computations and boson-fermion identity checks",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    sp = add("supernomial", help="evaluate one supernomial coefficient")
    sp.add_argument("--L", required=True, help="comma-separated degree vector")
    sp.add_argument("--a", required=True, help="index, e.g. 2 or -1/2")
    sp.add_argument("--form", choices=("q", "T", "tilde", "explicit"), default="q")
    sp.set_defaults(func=cmd_supernomial)

    pp = add("partitions", help="admissible partitions and their series")
    pp.add_argument("--L", required=True)
    pp.add_argument("--a", type=int, required=True)
    pp.add_argument("--list", action="store_true", help="list partitions instead")
    pp.add_argument("--genfun", action="store_true", help="emit the generating function (default)")
    pp.add_argument("--budget", type=int, default=4096)
    pp.set_defaults(func=cmd_partitions)

    tp = add("ts-decomp", help="continued-fraction decomposition data")
    tp.add_argument("--p", type=int, required=True)
    tp.add_argument("--k", type=int, required=True)
    tp.set_defaults(func=cmd_ts_decomp)

    ip = add("identity-check", help="one boson-fermion identity instance")
    ip.add_argument("--p", type=int, required=True)
    ip.add_argument("--k", type=int, required=True)
    ip.add_argument("--N", type=int, required=True)
    ip.add_argument("--a", type=int, required=True)
    ip.add_argument("--b", type=int, required=True)
    ip.add_argument("--L", required=True)
    ip.set_defaults(func=cmd_identity_check)

    se = add("series", help="truncated q-series evaluators")
    se.add_argument("--what", choices=("string", "branching", "virasoro"), required=True)
    se.add_argument("--order", type=int, default=12)
    se.add_argument("--N", type=int, default=1)
    se.add_argument("--Lbar", default="")
    se.add_argument("--sigma", type=int, default=0)
    se.add_argument("--a", type=int, default=0)
    se.add_argument("--b", type=int, default=2)
    se.add_argument("--r", type=int, default=1)
    se.add_argument("--s", type=int, default=1)
    se.add_argument("--P", type=int, default=3)
    se.add_argument("--Pp", type=int, default=5)
    se.add_argument("--p", type=int, default=5)
    se.add_argument("--k", type=int, default=1)
    se.set_defaults(func=cmd_series)

    mp = add("matprod", help="q=1 matrix family identity")
    mp.add_argument("--p", type=int, required=True)
    mp.add_argument("--L", required=True)
    mp.add_argument("--a", type=int, required=True)
    mp.add_argument("--b", type=int, required=True)
    mp.set_defaults(func=cmd_matprod)

    sw = add("sweep", help="identity sweep over a config grid")
    sw.add_argument("--config", required=True)
    sw.add_argument("--out", help="report path; a .png figure lands alongside")
    sw.add_argument("--workers", type=int)
    sw.set_defaults(func=cmd_sweep)

    st = add("selftest", help="run the acceptance criteria")
    st.add_argument("--quick", action="store_true", help="reduced bounds")
    st.add_argument("--workers", type=int)
    st.set_defaults(func=cmd_selftest)

    return parser


def _glue_negative_values(argv: List[str]) -> List[str]:
    """Join '--a -1/2' into '--a=-1/2' so argparse does not read the value
    as an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--a", "--L", "--Lbar") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(
            _glue_negative_values(list(argv if argv is not None else sys.argv[1:]))
        )
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "format"):
        args.format = "json"
    if not hasattr(args, "no_timing"):
        args.no_timing = False
    try:
        return args.func(args)
    except (BudgetError, ConvergenceError, SupportError) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except QSuperError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
