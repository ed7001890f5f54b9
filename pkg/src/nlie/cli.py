"""Command line front end.

One verb per library operation; every verb supports ``--json`` emitting a
stable machine-readable report (schema ``nlie-report-v1``).  Exit codes:
0 success / predicate true, 1 predicate false or verification failure,
2 usage or parse errors, 3 unsupported requests and undecided verdicts.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import (
    CATALOG,
    associated_lie,
    catalog_build,
    classify_theorem44,
    direct_sum,
    lie_catalog_build,
    trivial_extension,
)
from .core import (
    check_fundamental_identity,
    load_algebra,
    load_subspace,
    serialize_algebra,
)
from .errors import NLieError, ParseError, UnsupportedRequestError
from .fields import GF, QQ
from .invariants import (
    center,
    classify_subspace,
    derived_algebra,
    full_space,
    invariant_report,
    s_derived_series,
)
from .iso import are_isomorphic, fingerprint
from .search import abelian_bounds_q, alpha_beta_exact_fp, reduce_mod_p
from .verify import run_suite

SCHEMA = "nlie-report-v1"

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3


def _emit(args, verb, result, text_lines):
    if getattr(args, "json", False):
        doc = {"schema": SCHEMA, "verb": verb, "result": result}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _format_subspace(S):
    if S is None or S.dim == 0:
        return ["(zero subspace)"]
    f = S.field
    return [" ".join(f.format(x) for x in row) for row in S.basis]


def _subspace_dict(S):
    if S is None:
        return None
    f = S.field
    return {"dim": S.dim, "ambient": S.ambient_dim,
            "rows": [[f.format(x) for x in row] for row in S.basis]}


def cmd_check(args):
    L = load_algebra(args.algebra)
    report = check_fundamental_identity(L)
    lines = ["fundamental identity: holds" if report.holds
             else f"fundamental identity: violated ({len(report.violations)} instances)"]
    for v in report.violations[:10]:
        lines.append(f"  x={list(v.x_indices)} y={list(v.y_indices)} "
                     f"residual={[L.field.format(c) for c in v.residual]}")
    _emit(args, "check", report.to_dict(L.field), lines)
    return EXIT_OK if report.holds else EXIT_FALSE


def cmd_report(args):
    L = load_algebra(args.algebra)
    rep = invariant_report(L)
    d = rep.to_dict()
    lines = [f"arity {rep.arity}, dim {rep.dim}",
             f"derived dim: {rep.derived_dim}",
             f"center dim: {rep.center_dim}"]
    lines += [f"{s}-derived series dims: {list(dims)}"
              for s, dims in rep.derived_series]
    lines += [f"lower central dims: {list(rep.lower_central)}",
              f"nilpotent: {rep.nilpotent}",
              "solvable: " + ", ".join(f"s={s}: {flag}" for s, flag in rep.solvable)]
    _emit(args, "report", d, lines)
    return EXIT_OK


def cmd_center(args):
    L = load_algebra(args.algebra)
    z = center(L)
    _emit(args, "center", _subspace_dict(z),
          [f"center dim {z.dim}"] + _format_subspace(z))
    return EXIT_OK


def cmd_derived(args):
    L = load_algebra(args.algebra)
    if args.s > L.arity:
        raise UnsupportedRequestError(f"s={args.s} exceeds the arity {L.arity}")
    rep = s_derived_series(L, full_space(L), args.s)
    terms = rep.terms[: args.steps + 1] if args.steps is not None else rep.terms
    lines = [f"{args.s}-derived series dims: {[t.dim for t in terms]}",
             f"terminates at zero: {rep.terminated_at_zero}"]
    d1 = derived_algebra(L)
    lines.append(f"derived algebra dim {d1.dim}:")
    lines += _format_subspace(d1)
    _emit(args, "derived", {
        "s": args.s, "dims": [t.dim for t in terms],
        "terminated_at_zero": rep.terminated_at_zero,
        "derived_algebra": _subspace_dict(d1),
    }, lines)
    return EXIT_OK


def cmd_classify(args):
    L = load_algebra(args.algebra)
    S = load_subspace(args.subspace)
    cls = classify_subspace(L, S)
    d = cls.to_dict()
    lines = [f"{k}: {v}" for k, v in d.items()]
    _emit(args, "classify", d, lines)
    return EXIT_OK


def cmd_alphabeta(args):
    L = load_algebra(args.algebra)
    results = []
    lines = []
    if L.field.p is not None:
        res = alpha_beta_exact_fp(L, budget=args.budget, threads=args.threads)
        results.append(res.to_dict())
        lines.append(f"alpha = {res.alpha}, beta = {res.beta} "
                     f"(exact over GF({L.field.p}); {res.subspaces_scanned} subspaces)")
    elif args.p:
        for p in args.p:
            Lp = reduce_mod_p(L, p)
            res = alpha_beta_exact_fp(Lp, budget=args.budget, threads=args.threads)
            results.append(res.to_dict())
            lines.append(f"p={p}: alpha = {res.alpha}, beta = {res.beta} "
                         f"({res.subspaces_scanned} subspaces)")
        values = {(r["alpha"], r["beta"]) for r in results}
        agree = len(values) == 1
        lines.append(f"primes agree: {agree} "
                     "(modular values corroborate, but do not prove, "
                     "the characteristic-0 values)")
    elif args.q_bounds:
        res = abelian_bounds_q(L)
        results.append(res.to_dict())
        lines.append(f"alpha >= {res.alpha} (upper bound {res.alpha_upper}), "
                     f"beta >= {res.beta} (upper bound {res.beta_upper})")
        lines.append("certified lower bounds only; exact alpha/beta over Q "
                     "is not computed")
    else:
        raise UnsupportedRequestError(
            "exact alpha/beta over Q is unsupported: pass --p P (modular "
            "corroboration) or --q-bounds (certified bounds)")
    _emit(args, "alphabeta", {"runs": results}, lines)
    return EXIT_OK


def cmd_assoc_lie(args):
    L = load_algebra(args.algebra)
    parts = [t.strip() for t in args.w.split(",")]
    if len(parts) != L.dim:
        raise ParseError(f"--w needs {L.dim} comma-separated scalars")
    w = tuple(L.field.parse(t) for t in parts)
    L0 = associated_lie(L, w)
    text = serialize_algebra(L0)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, "assoc-lie", {"written": args.out}, [f"written: {args.out}"])
    else:
        _emit(args, "assoc-lie", json.loads(text), text.rstrip().splitlines())
    return EXIT_OK


def _output_algebra(args, verb, L):
    text = serialize_algebra(L)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, verb, {"written": args.out}, [f"written: {args.out}"])
    else:
        _emit(args, verb, json.loads(text), text.rstrip().splitlines())
    return EXIT_OK


def cmd_extend(args):
    J0 = load_algebra(args.algebra)
    return _output_algebra(args, "extend", trivial_extension(J0))


def cmd_sum(args):
    L1 = load_algebra(args.algebra1)
    L2 = load_algebra(args.algebra2)
    return _output_algebra(args, "sum", direct_sum(L1, L2))


def cmd_catalog(args):
    if args.action == "list":
        rows = [{"id": e.family_id, "params": list(e.params),
                 "min_dim": e.min_dim, "summary": e.summary}
                for e in sorted(CATALOG.values(), key=lambda e: e.family_id)]
        lines = [f"{r['id']:10s} params={','.join(r['params']) or '-':12s} "
                 f"min dim {r['min_dim']}: {r['summary']}" for r in rows]
        _emit(args, "catalog-list", {"families": rows}, lines)
        return EXIT_OK
    params = {}
    if args.dim is not None:
        params["m"] = args.dim
    if args.n is not None:
        params["n"] = args.n
    if args.alpha is not None:
        params["alpha"] = QQ.parse(args.alpha) if args.p is None else int(args.alpha)
    if args.t is not None:
        params["t"] = args.t
    if args.r is not None:
        params["r"] = args.r
    field = GF(args.p) if args.p else QQ
    try:
        L = catalog_build(args.family, field, **params)
    except TypeError as exc:
        raise NLieError(f"bad parameters for {args.family}: {exc}") from exc
    return _output_algebra(args, "catalog-build", L)


def cmd_lie_catalog(args):
    params = {}
    if args.dim is not None:
        params["dim"] = args.dim
    if args.n is not None:
        params["n"] = args.n
    field = GF(args.p) if args.p else QQ
    try:
        L = lie_catalog_build(args.family, field, **params)
    except TypeError as exc:
        raise NLieError(f"bad parameters for {args.family}: {exc}") from exc
    return _output_algebra(args, "lie-catalog-build", L)


def cmd_fingerprint(args):
    L = load_algebra(args.algebra)
    fp = fingerprint(L)
    d = fp.to_dict()
    lines = [f"{k}: {v}" for k, v in d.items()]
    _emit(args, "fingerprint", d, lines)
    return EXIT_OK


def cmd_iso(args):
    L1 = load_algebra(args.algebra1)
    L2 = load_algebra(args.algebra2)
    if args.p:
        L1 = reduce_mod_p(L1, args.p) if L1.field.p is None else L1
        L2 = reduce_mod_p(L2, args.p) if L2.field.p is None else L2
    res = are_isomorphic(L1, L2, budget=args.budget)
    lines = [f"verdict: {res.verdict}"]
    if res.reason:
        lines.append(f"reason: {res.reason}")
    if res.witness is not None:
        f = res.witness.field
        lines.append("witness columns (images of the basis):")
        lines += [" ".join(f.format(x) for x in row) for row in res.witness.rows]
    _emit(args, "iso", res.to_dict(), lines)
    return EXIT_OK if res.verdict == "yes" else (
        EXIT_FALSE if res.verdict == "no" else EXIT_UNSUPPORTED)


def cmd_classify44(args):
    L = load_algebra(args.algebra)
    v = classify_theorem44(L, p=args.p, budget=args.budget)
    lines = [f"case: {v.case}", f"evidence: {v.evidence}"]
    if v.tau is not None:
        lines.append(f"abelian ideal (dim {v.tau.dim}):")
        lines += _format_subspace(v.tau)
    _emit(args, "classify44", v.to_dict(), lines)
    return EXIT_OK if v.case != "unknown" else EXIT_UNSUPPORTED


def cmd_verify_paper(args):
    quiet = getattr(args, "json", False)
    lines = []

    def sink(line):
        lines.append(line)
        if not quiet:
            print(line)

    suite = run_suite(only=args.only or None, seed=args.seed,
                      threads=args.threads, report=sink)
    if quiet:
        _emit(args, "verify-paper", suite.to_dict(), [])
    else:
        print("suite:", "PASS" if suite.passed else "FAIL")
    return EXIT_OK if suite.passed else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlie",
        description="Exact computations for n-ary Lie algebras given by "
                    "structure constants (nlie-v1 documents)")
    parser.add_argument("--version", action="version", version=f"nlie {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("check", cmd_check, help="verify the fundamental identity")
    p.add_argument("algebra")

    p = add("report", cmd_report, help="basis-invariant structure report")
    p.add_argument("algebra")

    p = add("center", cmd_center, help="center of the algebra")
    p.add_argument("algebra")

    p = add("derived", cmd_derived, help="derived series")
    p.add_argument("algebra")
    p.add_argument("--s", type=int, default=2, choices=(2, 3), help="series parameter")
    p.add_argument("--steps", type=int, default=None, help="maximum steps shown")

    p = add("classify", cmd_classify, help="classify a subspace against an algebra")
    p.add_argument("algebra")
    p.add_argument("subspace", help="subspace-v1 document")

    p = add("alphabeta", cmd_alphabeta, help="maximal abelian subalgebra/ideal dims")
    p.add_argument("algebra")
    p.add_argument("--p", type=int, action="append",
                   help="reduce mod p and enumerate exhaustively (repeatable)")
    p.add_argument("--q-bounds", action="store_true",
                   help="certified lower bounds over Q")
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--threads", type=int, default=1)

    p = add("assoc-lie", cmd_assoc_lie, help="associated binary algebra at w")
    p.add_argument("algebra")
    p.add_argument("--w", required=True, help="comma-separated coordinates of w")
    p.add_argument("--out")

    p = add("extend", cmd_extend, help="trivial one-point extension of a Lie algebra")
    p.add_argument("algebra")
    p.add_argument("--out")

    p = add("sum", cmd_sum, help="direct sum of two algebras")
    p.add_argument("algebra1")
    p.add_argument("algebra2")
    p.add_argument("--out")

    p = add("catalog", cmd_catalog, help="list or build catalog families")
    p.add_argument("action", choices=("list", "build"))
    p.add_argument("family", nargs="?")
    p.add_argument("--dim", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha")
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int, help="build over GF(p) instead of Q")
    p.add_argument("--out")

    p = add("lie-catalog", cmd_lie_catalog, help="build binary (Lie) fixtures")
    p.add_argument("family")
    p.add_argument("--dim", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--out")

    p = add("fingerprint", cmd_fingerprint, help="basis-invariant fingerprint")
    p.add_argument("algebra")

    p = add("iso", cmd_iso, help="isomorphism semidecision")
    p.add_argument("algebra1")
    p.add_argument("algebra2")
    p.add_argument("--p", type=int, help="compare reductions mod p")
    p.add_argument("--budget", type=int, default=2_000_000)

    p = add("classify44", cmd_classify44,
            help="trichotomy: 3-solvable / simple 4-dim / semidirect")
    p.add_argument("algebra")
    p.add_argument("--p", type=int)
    p.add_argument("--budget", type=int, default=2_000_000)

    p = add("verify-paper", cmd_verify_paper,
            help="run the full verification suite")
    p.add_argument("--only", type=int, action="append",
                   help="run a single criterion (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "catalog" and args.action == "build" and not args.family:
        parser.error("catalog build requires a family id")
    try:
        return args.func(args)
    except UnsupportedRequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except NLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
