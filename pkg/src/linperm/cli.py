"""Command-line front end.

Subcommands: verify, theorems, weil, criterion, catalog.
Exit codes: 0 all checks pass, 1 a check failed, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .catalog import Catalog, dumps, make_record, replay
from .cyclo import (DivisibilityError, ParityError, _require_odd_qn, gauss_sum, parity_criterion,
                    weil_sum_closed, weil_sum_direct)
from .exppoly import ScanBoundError, check_scan_bound, ep_from_fraction, is_permutation
from .families import (DEFAULT_SEED, E0_VARIANTS, Family, HypothesisError, PreconditionError,
                       build_instance, e1_linpolys, enumerate_family, theorem_suite)
from .gf import FieldError, parse_elem, parse_field_spec
from .linpoly import LinPoly, SingularError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ALIASES = {
    "e0": Family.E0_TRINOMIAL,
    "prop-first": Family.PROP_FIRST,
    "prop-second": Family.PROP_SECOND,
    "thm-rs": Family.THM_RS_INVERSE,
    "reciprocal-b1": Family.THM_RECIPROCAL_B1,
    "reciprocal-b2": Family.THM_RECIPROCAL_B2,
    "cor1": Family.COR_N2K_CASE1,
    "cor2": Family.COR_N2K_CASE2,
    "cor3": Family.COR_N2K_CASE3,
    "sextic": Family.PROP_N3_SEXTIC,
    "e1": Family.E1_FAMILY,
    "f4k": Family.F4K_EXAMPLE,
    "conclusion1": Family.CONCLUSION_1,
    "conclusion2": Family.CONCLUSION_2,
    "conclusion3": Family.CONCLUSION_3,
    "conclusion4": Family.CONCLUSION_4,
}


class UsageError(Exception):
    pass


def resolve_family(name):
    key = name.strip()
    if key.lower() in ALIASES:
        return ALIASES[key.lower()]
    try:
        return Family(key.upper())
    except ValueError:
        raise UsageError(f"unknown family {name!r}; known: {', '.join(ALIASES)}") from None


# ---------------------------------------------------------------------------
# static gates: conditions on the field alone
# ---------------------------------------------------------------------------

def field_gate(family, ctx, variant="base"):
    q, n = ctx.q, ctx.n
    need = []
    if family is Family.E0_TRINOMIAL:
        need.append((n == 3, "n must be 3"))
        if variant == "half-exponent":
            need.append((q % 2 == 1, "half-exponent variant needs q odd"))
    elif family in (Family.THM_RS_INVERSE,):
        need.append((n % 2 == 1 and n >= 3, "n must be odd and at least 3"))
    elif family is Family.PROP_SECOND:
        need.append((n >= 2, "n >= 2 needed"))
    elif family is Family.COR_N2K_CASE1:
        need.append((n % 4 == 2, "case 1 needs n = 2k with k odd"))
    elif family is Family.COR_N2K_CASE2:
        need += [(n % 4 == 0, "case 2 needs n = 2k with k even"), (q % 2 == 1, "q must be odd")]
    elif family in (Family.COR_N2K_CASE3, Family.CONCLUSION_4):
        need += [(n == 4, "n must be 4"), (q % 2 == 1, "q must be odd")]
    elif family is Family.CONCLUSION_3:
        need.append((n % 2 == 0, "n must be even"))
        if n % 4 == 0:
            need.append((q % 2 == 1, "q must be odd when n/2 is even"))
    elif family in (Family.PROP_N3_SEXTIC, Family.E1_FAMILY):
        need += [(n == 3, "n must be 3"), (q % 2 == 1, "q must be odd")]
    for ok, msg in need:
        if not ok:
            raise PreconditionError(msg)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def fmt_elem(ctx, coeffs):
    """Coefficient vector, plus g^k when log tables exist."""
    v = ctx.from_coeffs(coeffs)
    log = ctx.log_of(v)
    if v == 0:
        return f"{coeffs} (0)"
    return f"{coeffs} (g^{log})" if log is not None else str(coeffs)


def _human_params(ctx, params):
    parts = []
    for k, v in params.items():
        if isinstance(v, list) and ctx is not None and len(v) == ctx.m \
                and all(isinstance(c, int) for c in v):
            parts.append(f"{k}={fmt_elem(ctx, v)}")
        elif isinstance(v, dict) and "linpoly" in v:
            parts.append(f"{k}=<linpoly {v['linpoly']}>")
        else:
            parts.append(f"{k}={v}")
    return ", ".join(parts)


def _write_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)


@contextlib.contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _stamp(args, doc):
    if not args.no_timestamp:
        import datetime as _dt
        doc["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return doc


def _ctx(args, required=True):
    if args.field is None:
        if required:
            raise UsageError("--field p=..,e=..,n=.. is required")
        return None
    ctx = parse_field_spec(args.field)
    check_scan_bound(ctx, args.scan_bound)
    return ctx


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_params(args, family, ctx):
    params = {}
    for name in ("a", "b", "beta"):
        text = getattr(args, name)
        if text is not None:
            params[name] = parse_elem(ctx, text)
    if family is Family.E0_TRINOMIAL:
        params["variant"] = args.variant
    if family is Family.THM_RECIPROCAL_B2:
        if args.L is None or args.sub_k is None:
            raise UsageError("reciprocal-b2 needs --L and --sub-k")
        params["L"] = LinPoly.from_json(ctx, json.loads(args.L))
        params["k"] = args.sub_k
    needs = {Family.COR_N2K_CASE1: ("b",), Family.COR_N2K_CASE2: ("b",),
             Family.COR_N2K_CASE3: ("a", "b"), Family.CONCLUSION_3: ("b",),
             Family.CONCLUSION_4: ("a", "b"), Family.THM_RECIPROCAL_B2: ()}
    for name in needs.get(family, ("a",)):
        if name not in params:
            raise UsageError(f"{family.value} needs --{name} (or --all)")
    return params


def _collect_instances(args, family):
    if family is Family.F4K_EXAMPLE:
        k = args.k if args.k is not None else 1
        from .gf import make_field
        ctx = make_field(2, 2 * k, 3)
        if args.field is not None and parse_field_spec(args.field).key != ctx.key:
            raise PreconditionError(f"f4k with k={k} lives over {ctx.spec}")
        check_scan_bound(ctx, args.scan_bound)
        choices = (0, 1) if args.alpha_choice == "both" else (int(args.alpha_choice),)
        return ctx, [build_instance(family, ctx, {"k": k, "alpha_choice": c}) for c in choices]
    ctx = _ctx(args)
    field_gate(family, ctx, args.variant)
    if args.all:
        fixed = {"variant": args.variant} if family is Family.E0_TRINOMIAL else {}
        return ctx, list(enumerate_family(family, ctx, threads=args.threads,
                                          scan_bound=args.scan_bound, **fixed))
    return ctx, [build_instance(family, ctx, _verify_params(args, family, ctx))]


def _emit_reports(args, ctx, reports):
    with _open_out(args.out) as out:
        if args.format == "json":
            for rep in reports:
                out.write(dumps(make_record(rep, timestamp=not args.no_timestamp)) + "\n")
        elif args.format == "csv":
            _write_csv(out, ["family", "field", "params", "pass", "failed_checks"],
                       [[r["family"], r["field"], dumps(r["params"]),
                         all(c["pass"] for c in r["checks"]),
                         ";".join(c["name"] for c in r["checks"] if not c["pass"])]
                        for r in reports])
        else:
            for r in reports:
                n_ok = sum(c["pass"] for c in r["checks"])
                status = "PASS" if n_ok == len(r["checks"]) else "FAIL"
                out.write(f"{r['family']} {r['field']} {_human_params(ctx, r['params'])}: "
                          f"{status} {n_ok}/{len(r['checks'])} checks\n")
                for c in r["checks"]:
                    if not c["pass"]:
                        out.write(f"  failed: {c['name']} witness={c.get('witness')}\n")
            if not reports:
                out.write("no instance satisfies the preconditions\n")


def cmd_verify(args):
    family = resolve_family(args.family)
    ctx, instances = _collect_instances(args, family)
    reports = [inst.to_report() for inst in instances]
    _emit_reports(args, ctx, reports)
    ok = all(inst.ok for inst in instances)
    if args.catalog and ok:
        cat = Catalog(args.catalog)
        for rep in reports:
            cat.append(rep, timestamp=not args.no_timestamp)
    if not args.quiet:
        print(f"{family.value}: {sum(i.ok for i in instances)}/{len(instances)} instances verified",
              file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# theorems
# ---------------------------------------------------------------------------

def cmd_theorems(args):
    ctx = _ctx(args)
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    forward_only = args.mode == "forward-only"
    rows, violations = [], 0
    for i, (L, t1, t2) in enumerate(theorem_suite(ctx, args.trials, args.seed)):
        if forward_only:
            t1.converse_asserted = t2.converse_asserted = False
        violations += (not t1.ok) + (not t2.ok)
        rows.append({"trial": i, "L": L.to_json(), "theorem1": t1.to_json(),
                     "theorem2": t2.to_json()})
    doc = _stamp(args, {"command": "theorems", "version": __version__, "field": ctx.spec,
                        "seed": args.seed, "trials": args.trials, "mode": args.mode,
                        "violations": violations, "results": rows})
    with _open_out(args.out) as out:
        if args.format == "json":
            out.write(dumps(doc) + "\n")
        elif args.format == "csv":
            hdr = ["trial", "L"]
            for t in ("theorem1", "theorem2"):
                hdr += [f"{t}_predicates", f"{t}_forward_ok", f"{t}_converse_holds",
                        f"{t}_converse_asserted"]
            body = []
            for r in rows:
                line = [r["trial"], dumps(r["L"])]
                for t in ("theorem1", "theorem2"):
                    rep = r[t]
                    line += [dumps(rep["predicates"]), rep["forward_ok"], rep["converse_holds"],
                             rep["converse_asserted"]]
                body.append(line)
            _write_csv(out, hdr, body)
        else:
            conv = sum(1 for r in rows for t in ("theorem1", "theorem2")
                       if r[t]["converse_holds"] is False)
            out.write(f"theorems over {ctx.spec}: {args.trials} trials (seed {args.seed}), "
                      f"{violations} violations, {conv} converse failures observed\n")
    return EXIT_OK if violations == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# weil
# ---------------------------------------------------------------------------

def cmd_weil(args):
    ctx = _ctx(args)
    _require_odd_qn(ctx)
    G = gauss_sum(ctx)
    if args.A is not None or args.B is not None:
        if args.A is None or args.B is None:
            raise UsageError("single-pair mode needs both --A and --B")
        pairs = [(parse_elem(ctx, args.A), parse_elem(ctx, args.B))]
        mode = "pair"
    elif args.exhaustive:
        pairs = [(A, B) for A in ctx.nonzero() for B in ctx.elements()]
        mode = "exhaustive"
    elif args.pairs:
        rng = np.random.default_rng(args.seed)
        draws = zip(rng.integers(1, ctx.order, args.pairs), rng.integers(0, ctx.order, args.pairs))
        pairs = [(ctx.elem(int(A)), ctx.elem(int(B))) for A, B in draws]
        mode = "sample"
    else:
        raise UsageError("weil needs --exhaustive, --pairs N, or --A/--B")
    if pairs[0][0].value == 0:
        raise UsageError("A must be nonzero")
    table, mismatches = [], 0
    for A, B in pairs:
        d = weil_sum_direct(A, B)
        c = weil_sum_closed(A, B, G)
        mismatches += d != c
        table.append({"A": A.to_json(), "B": B.to_json(), "direct": d.to_json(),
                      "closed": c.to_json(), "agree": d == c})
    doc = _stamp(args, {"command": "weil", "version": __version__, "field": ctx.spec,
                        "mode": mode, "pairs": len(pairs), "mismatches": mismatches,
                        "gauss_sum": G.to_json(), "table": table})
    with _open_out(args.out) as out:
        if args.format == "json":
            out.write(dumps(doc) + "\n")
        elif args.format == "csv":
            _write_csv(out, ["A", "B", "direct", "closed", "agree"],
                       [[dumps(r["A"]), dumps(r["B"]), dumps(r["direct"]["coeffs"]),
                         dumps(r["closed"]["coeffs"]), r["agree"]] for r in table])
        else:
            if mode == "pair":
                A, B = pairs[0]
                out.write(f"A = {fmt_elem(ctx, A.to_json())}, B = {fmt_elem(ctx, B.to_json())}\n")
                out.write(f"direct: {weil_sum_direct(A, B)}\nclosed: {weil_sum_closed(A, B, G)}\n")
            out.write(f"weil over {ctx.spec}: {len(pairs)} pairs, {mismatches} mismatches\n")
    return EXIT_OK if mismatches == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# criterion
# ---------------------------------------------------------------------------

def cmd_criterion(args):
    ctx = _ctx(args)
    _require_odd_qn(ctx)
    if ctx.n != 3:
        raise PreconditionError("the e1 sweep needs n = 3")
    avals = [parse_elem(ctx, args.a)] if args.a is not None else list(ctx.nonzero())
    ident = LinPoly.identity(ctx)
    rows, disagreements, exit_code = [], 0, EXIT_OK
    for a in avals:
        ell, _ = e1_linpolys(a)
        bij = is_permutation(ep_from_fraction(ell, ctx.q + 1)).ok
        try:
            holds, counts = parity_criterion(ident, ell)
        except DivisibilityError as exc:
            rows.append({"a": a.to_json(), "error": str(exc)})
            exit_code = EXIT_FAIL
            continue
        agree = holds == bij
        disagreements += not agree
        rows.append({"a": a.to_json(), "criterion": holds, "bijective": bij, "agree": agree,
                     "m_t": {str(t): m for t, m in sorted(counts.items())}})
    if disagreements:
        exit_code = EXIT_FAIL
    doc = _stamp(args, {"command": "criterion", "version": __version__, "field": ctx.spec,
                        "family": Family.E1_FAMILY.value, "swept": len(avals),
                        "disagreements": disagreements, "rows": rows})
    with _open_out(args.out) as out:
        if args.format == "json":
            out.write(dumps(doc) + "\n")
        elif args.format == "csv":
            _write_csv(out, ["a", "criterion", "bijective", "agree"],
                       [[dumps(r["a"]), r.get("criterion"), r.get("bijective"), r.get("agree")]
                        for r in rows])
        else:
            for r in rows:
                if "error" in r:
                    out.write(f"a={fmt_elem(ctx, r['a'])}: ERROR {r['error']}\n")
                    continue
                out.write(f"a={fmt_elem(ctx, r['a'])}: criterion={r['criterion']} "
                          f"bijective={r['bijective']}\n")
            out.write(f"criterion over {ctx.spec}: {len(avals)} values of a, "
                      f"{disagreements} disagreements\n")
    return exit_code


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _parse_where(items):
    where = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        name, text = item.split("=", 1)
        try:
            where[name] = json.loads(text)
        except ValueError:
            where[name] = text
    return where


def cmd_catalog(args):
    cat = Catalog(args.catalog)
    if args.action == "append":
        return cmd_verify(args)
    family = resolve_family(args.family).value if args.family else None
    field = parse_field_spec(args.field).spec if args.field else None
    res = cat.query(family=family, field=field, where=_parse_where(args.param))
    for lineno, msg in res.errors:
        print(f"{args.catalog}:{lineno}: corrupt record: {msg}", file=sys.stderr)
    if args.action == "query":
        with _open_out(args.out) as out:
            for rec in res.records:
                out.write(dumps(rec) + "\n")
        return EXIT_USAGE if res.errors else EXIT_OK
    # replay
    diverged = 0
    with _open_out(args.out) as out:
        for rec in res.records:
            same, _ = replay(rec)
            diverged += not same
            rep = rec["report"]
            out.write(f"{rep['family']} {rep['field']} "
                      f"{'identical' if same else 'DIVERGED'}\n")
    if diverged:
        return EXIT_FAIL
    return EXIT_USAGE if res.errors else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--field", help="field spec 'p=<p>,e=<e>,n=<n>' for F_{q^n}, q = p^e")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"seed for randomized suites (default {DEFAULT_SEED})")
    g.add_argument("--scan-bound", type=_positive, default=None,
                   help="largest field order scanned exhaustively (default 2^20)")
    g.add_argument("--format", choices=("json", "csv", "human"), default="json")
    g.add_argument("--out", help="write the report here instead of stdout")
    g.add_argument("--no-timestamp", action="store_true", help="omit timestamps (reproducible)")
    g.add_argument("--threads", type=_positive, default=1)
    g.add_argument("--quiet", action="store_true", help="no summary on stderr")
    return p


def _add_verify_args(p):
    p.add_argument("family", help="family id, e.g. e0, thm-rs, cor1, e1, f4k, conclusion3")
    p.add_argument("--all", action="store_true", help="every parameter meeting the preconditions")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--beta")
    p.add_argument("--variant", choices=E0_VARIANTS, default="base")
    p.add_argument("--k", type=_positive, help="f4k: q = 4^k")
    p.add_argument("--alpha-choice", choices=("0", "1", "both"), default="both")
    p.add_argument("--L", help="reciprocal-b2: JSON list of n coefficient vectors")
    p.add_argument("--sub-k", type=_positive, help="reciprocal-b2: subfield degree k")


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(
        prog="linperm",
        description="Verify permutation polynomials of F_{q^n} built from linearized polynomials.")
    parser.add_argument("--version", action="version", version=f"linperm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="construct and verify family instances")
    _add_verify_args(p)
    p.add_argument("--catalog", help="append verified records to this JSON-lines file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theorems", parents=[common], help="random suites for the L / L' theorems")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--mode", choices=("auto", "forward-only"), default="auto",
                   help="auto asserts the converse for odd n only")
    p.set_defaults(func=cmd_theorems)

    p = sub.add_parser("weil", parents=[common], help="direct vs closed-form Weil sums")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--pairs", type=_positive, help="seeded random sample of (A, B)")
    p.add_argument("--A")
    p.add_argument("--B")
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("criterion", parents=[common],
                       help="M_t parity criterion vs bijectivity over the e1 sweep")
    p.add_argument("--a", help="a single parameter instead of the full sweep")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("catalog", help="JSON-lines catalog of verified instances")
    csub = p.add_subparsers(dest="action", required=True)
    pa = csub.add_parser("append", parents=[common], help="verify, then append passing records")
    _add_verify_args(pa)
    pa.add_argument("--catalog", required=True)
    for action in ("query", "replay"):
        pq = csub.add_parser(action, parents=[common],
                             help=f"{action} records (filters: --family, --field, --param)")
        pq.add_argument("--catalog", required=True)
        pq.add_argument("--family")
        pq.add_argument("--param", action="append", metavar="NAME=JSON")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(dumps(exc.check.to_json()), file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, PreconditionError, ParityError, FieldError, ScanBoundError,
            SingularError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
