"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or parameter
error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path

from . import lrc, nmds, weights
from .errors import (
    FieldDomainError,
    InsufficientDataError,
    NoLocalRepairError,
    OvalCodeError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedParameterError,
)
from .gf2m import FieldContext, field_new
from .linalg import FieldMatrix, rank
from .ovalpoly import FAMILIES, custom, make_family, oval_report, parse_oval, parse_terms

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
DEFAULT_SEED = 20221


def _oval_from_args(args, ctx: FieldContext):
    if args.oval:
        return parse_oval(args.oval, ctx)
    if args.family is None:
        raise UnsupportedParameterError("--family (or --oval) is required")
    if args.family == "custom":
        if not args.terms:
            raise UnsupportedParameterError("custom family needs --terms exp:coeff,...")
        return custom(ctx, parse_terms(args.terms))
    return make_family(args.family, ctx, args.h)


def _field(args) -> FieldContext:
    if args.m is None:
        raise UnsupportedParameterError("--m is required")
    return field_new(args.m)


def _code(args) -> nmds.LinearCode:
    ctx = _field(args)
    if ctx.m < 3 or ctx.m % 2 == 0:
        raise UnsupportedParameterError(f"the code needs odd m >= 3, got m={ctx.m}")
    return nmds.build_generator(_oval_from_args(args, ctx))


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_construct(args) -> int:
    C = _code(args)
    _emit(_dumps(C.to_json()), args.out)
    return EXIT_OK


def cmd_check_oval(args) -> int:
    ctx = _field(args)
    rep = oval_report(_oval_from_args(args, ctx))
    if args.format == "text":
        _emit("".join(f"{k}: {v}\n" for k, v in rep.items()), args.out)
    else:
        _emit(_dumps(rep), args.out)
    return EXIT_OK if rep["oval"] else EXIT_CHECK


def cmd_weights(args) -> int:
    C = _code(args)
    W = nmds.weight_distribution_bruteforce(C, max_m=args.max_m)
    if args.dual:
        W = weights.macwilliams_dual(W, C.n, C.k, C.q)
    if args.format == "json":
        _emit(_dumps({"n": W.n, "counts": list(W.counts), "enumerator": W.enumerator()}), args.out)
    elif args.format == "text":
        _emit(W.enumerator() + "\n", args.out)
    else:
        _emit(_csv(W.to_rows(), ("weight", "count")), args.out)
    if args.figure:
        expected = None if args.dual else weights.theoretical_weight_distribution(C.q)
        from .plotting import plot_weight_distribution
        plot_weight_distribution(W, args.figure, expected)
    return EXIT_OK


def run_checks(C: nmds.LinearCode, samples: int, seed: int, max_m: int | None = None):
    """Every verification as (name, passed, detail), plus intermediate data."""
    q, n, k = C.q, C.n, C.k
    W = nmds.weight_distribution_bruteforce(C, max_m=max_m)
    T = weights.theoretical_weight_distribution(q)
    dual = nmds.dual_distance_and_weight3(C)
    rep = nmds.verify_nmds(C, W, dual)
    buckets = nmds.classify_weight3_supports(C, dual.supports)
    expected_buckets = nmds.expected_case_counts(q)
    mw = weights.macwilliams_dual(W, n, k, q)
    rec_dual = weights.nmds_recurrence_dual(n, k, q, dual.A3_dual)
    rec_primal = weights.nmds_recurrence_primal(n, k, q, W[n - k])
    pairing = nmds.min_weight_support_pairing(C, dual, max_m=max_m)
    r = lrc.minimum_locality_primal(C, dual)
    r_dual = lrc.minimum_locality_dual(C, dual, rep.d)
    opt, opt_dual = lrc.optimality_report(C, dual, rep.d)

    rng = random.Random(seed)
    plans = lrc.repair_plans(C, dual)
    bad_repairs = 0
    for _ in range(samples):
        word = nmds.encode(C, [rng.randrange(q) for _ in range(k)])
        bad_repairs += sum(lrc.repair(p, C.ctx, word) != word[p.i] for p in plans)

    checks = [
        ("weights.closed_form", W == T, W.enumerator()),
        ("nmds.parameters", rep.d == q + 2 and rep.d_dual == 3,
         f"[{n},{k},{rep.d}] with dual distance {rep.d_dual}"),
        ("nmds.verdict", rep.ok, f"AMDS={rep.amds} dual AMDS={rep.dual_amds} MDS={rep.mds}"),
        ("dual.weight3", dual.A3_dual == weights.theoretical_dual_weight3(q),
         f"A3_dual={dual.A3_dual} from {len(dual.supports)} supports"),
        ("dual.cases", buckets == expected_buckets,
         ", ".join(f"{lab}={c}" for lab, c in buckets.items() if c)),
        ("dual.macwilliams_vs_recurrence", mw == rec_dual, f"A_3..A_5 = {mw.counts[3:6]}"),
        ("primal.recurrence", rec_primal == W, f"seed A_{n - k}={W[n - k]}"),
        ("pairing", pairing.ok, f"{pairing.primal_count} primal / {pairing.dual_count} dual"),
        ("locality.primal", r == 2, f"r={r}"),
        ("locality.dual", r_dual == q + 1, f"r={r_dual}"),
        ("optimal.primal", opt.distance_optimal and opt.dimension_optimal,
         f"SL rhs={opt.singleton_like_rhs} CM rhs={opt.cm_rhs}"),
        ("optimal.dual", opt_dual.distance_optimal and opt_dual.dimension_optimal,
         f"SL rhs={opt_dual.singleton_like_rhs} CM rhs={opt_dual.cm_rhs}"),
        ("repair.sample", bad_repairs == 0, f"{samples} codewords x {n} coordinates, {bad_repairs} failures"),
    ]
    data = {"W": W, "T": T, "dual": dual, "report": rep, "buckets": buckets,
            "expected_buckets": expected_buckets, "macwilliams": mw,
            "optimality": (opt, opt_dual), "plans": plans}
    return checks, data


def _write_report(directory, C, data):
    from .plotting import plot_case_buckets, plot_weight_distribution

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "generator.json").write_text(_dumps(C.to_json()))
    (d / "weights.csv").write_text(_csv(
        [(w, a, t) for (w, a), t in zip(data["W"].to_rows(), data["T"].counts)],
        ("weight", "count", "closed_form")))
    (d / "dual_weights.csv").write_text(_csv(data["macwilliams"].to_rows(), ("weight", "count")))
    (d / "cases.csv").write_text(_csv(
        [(lab, c, data["expected_buckets"][lab]) for lab, c in data["buckets"].items()],
        ("bucket", "count", "closed_form")))
    (d / "repair_plans.json").write_text(_dumps([p.to_json() for p in data["plans"]]))
    opt, opt_dual = data["optimality"]
    (d / "optimality.json").write_text(_dumps({"code": opt.to_json(), "dual": opt_dual.to_json()}))
    plot_weight_distribution(data["W"], d / "weights.png", data["T"],
                             title=f"[{C.n},{C.k}] code over GF({C.q}), f = {C.oval.describe()}")
    plot_case_buckets(data["buckets"], data["expected_buckets"], d / "cases.png")


def cmd_verify(args) -> int:
    C = _code(args)
    nmds._guard(C, args.max_m)
    checks, data = run_checks(C, args.samples, args.seed, args.max_m)
    if args.report_dir:
        _write_report(args.report_dir, C, data)
    failed = [name for name, ok, _ in checks if not ok]
    if args.format == "json":
        _emit(_dumps({
            "code": {"m": C.ctx.m, "modulus": C.ctx.modulus, "oval": C.oval.to_json()},
            "nmds": data["report"].to_json(),
            "weights": data["W"].nonzero(),
            "checks": [{"name": nm, "passed": ok, "detail": det} for nm, ok, det in checks],
            "passed": not failed,
        }), args.out)
    else:
        lines = [f"{'PASS' if ok else 'FAIL'} {nm}: {det}" for nm, ok, det in checks]
        _emit("\n".join(lines) + "\n", args.out)
    if failed:
        print(f"first failing check: {failed[0]}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_locality(args) -> int:
    C = _code(args)
    dual = nmds.dual_distance_and_weight3(C)
    d = nmds.weight_distribution_bruteforce(C, max_m=args.max_m).min_distance
    out = {
        "n": C.n,
        "d": d,
        "d_dual": dual.d_dual,
        "support_union_is_all": lrc.weight3_support_union(dual) == set(range(C.n)),
        "support_intersection": sorted(lrc.weight3_support_intersection(dual)),
        "locality": lrc.minimum_locality_primal(C, dual),
        "dual_locality": lrc.minimum_locality_dual(C, dual, d),
        "repair_plans": [p.to_json() for p in lrc.repair_plans(C, dual)],
    }
    if args.dual_plans:
        _, words = nmds.minimum_weight_codewords(C, max_m=args.max_m)
        out["dual_repair_plans"] = [lrc.dual_repair_plan(C, i, words).to_json() for i in range(C.n)]
    _emit(_dumps(out), args.out)
    return EXIT_OK


def read_word(text: str, q: int) -> tuple[list[int], set[int]]:
    """Space-separated symbols; ``?`` marks an erasure (stored as 0 plus a mask entry)."""
    word, erased = [], set()
    for j, tok in enumerate(text.split()):
        if tok == "?":
            word.append(0)
            erased.add(j)
            continue
        try:
            v = int(tok)
        except ValueError:
            raise FieldDomainError(f"bad symbol {tok!r} at position {j}") from None
        if not 0 <= v < q:
            raise FieldDomainError(f"symbol {v} at position {j} outside [0, {q})")
        word.append(v)
    return word, erased


def _consistent(A: FieldMatrix, b) -> bool:
    aug = FieldMatrix(A.rows, A.cols + 1,
                      tuple(v for row, bi in zip(A.to_rows(), b) for v in (*row, bi)), A.ctx)
    return rank(aug) == rank(A)


def completes_to_codeword(C: nmds.LinearCode, word, erased, dual: bool = False) -> bool:
    """Whether the non-erased symbols agree with some codeword (of C, or of its dual)."""
    known = [j for j in range(C.n) if j not in erased]
    if dual:
        # G y = 0  <=>  G_unknown y_unknown = G_known y_known
        rhs = C.G.submatrix(known).matvec([word[j] for j in known]) if known else [0] * C.k
        unknown = [j for j in range(C.n) if j in erased]
        if not unknown:
            return not any(rhs)
        return _consistent(C.G.submatrix(unknown), rhs)
    if not known:
        return True
    A = C.G.submatrix(known).transpose()
    return _consistent(A, [word[j] for j in known])


def cmd_repair(args) -> int:
    C = _code(args)
    text = sys.stdin.read() if args.codeword == "-" else Path(args.codeword).read_text()
    word, erased = read_word(text, C.q)
    if len(word) != C.n:
        raise FieldDomainError(f"codeword must have {C.n} symbols, got {len(word)}")
    i = args.erase
    if i is None:
        if len(erased) != 1:
            raise UnsupportedParameterError("give --erase or mark exactly one symbol with '?'")
        i = next(iter(erased))
    if not 0 <= i < C.n:
        raise FieldDomainError(f"erased index {i} outside [0, {C.n})")
    erased = erased | {i}
    if args.dual:
        plan = lrc.dual_repair_plan(C, i, max_m=args.max_m)
    else:
        plan = lrc.repair_plan(C, i)
    value = lrc.repair(plan, C.ctx, word, erased)
    word[i] = value
    ok = completes_to_codeword(C, word, erased - {i}, dual=args.dual)
    out = {**plan.to_json(), "value": value, "codeword": word if len(erased) == 1 else None,
           "verified": ok}
    if args.format == "text":
        _emit(f"repair set {list(plan.repair_set)} coefficients {list(plan.coefficients)}\n"
              f"c[{i}] = {value}\n", args.out)
    else:
        _emit(_dumps(out), args.out)
    if not ok:
        print("input is not consistent with any codeword", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.n is not None:
        if None in (args.k, args.d, args.r):
            raise UnsupportedParameterError("--n needs --k, --d and --r")
        rep = lrc.lrc_report(args.n, args.k, args.d, args.q, args.r)
        out = {**rep.to_json(), "cm_terms": lrc.cm_bound_terms(args.n, args.d, args.r)}
    else:
        C = _code(args)
        opt, opt_dual = lrc.optimality_report(C, max_m=args.max_m)
        out = {"code": opt.to_json(), "dual": opt_dual.to_json()}
    _emit(_dumps(out), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    C = _code(args)
    nmds._guard(C, args.max_m)
    checks, data = run_checks(C, args.samples, args.seed, args.max_m)
    _write_report(args.dir, C, data)
    _, words = nmds.minimum_weight_codewords(C, max_m=args.max_m)
    plans = [lrc.dual_repair_plan(C, i, words).to_json() for i in range(C.n)]
    Path(args.dir, "dual_repair_plans.json").write_text(_dumps(plans))
    Path(args.dir, "checks.csv").write_text(_csv(
        [(nm, int(ok), det) for nm, ok, det in checks], ("check", "passed", "detail")))
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ovalcode", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="json"):
        sp.add_argument("--m", type=int, help="extension degree, q = 2^m")
        sp.add_argument("--family", choices=FAMILIES + ("glynn-b",))
        sp.add_argument("--h", type=int, help="translation exponent 2^h")
        sp.add_argument("--terms", help="custom terms exp:coeff,... (coefficients as field integers)")
        sp.add_argument("--oval", help="textual form, e.g. 'family=translation h=2'")
        sp.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
        sp.add_argument("--max-m", type=int, default=None,
                        help="enumeration cap (default: $OVALCODE_MAX_M or 7)")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out", help="write to this file instead of stdout")
        return sp

    common(sub.add_parser("construct", help="print the generator matrix")).set_defaults(func=cmd_construct)
    common(sub.add_parser("check-oval", help="run every ovality check")).set_defaults(func=cmd_check_oval)

    sp = common(sub.add_parser("weights", help="weight distribution by enumeration"), fmt="csv")
    sp.add_argument("--dual", action="store_true", help="MacWilliams transform to the dual code")
    sp.add_argument("--figure", help="also render a bar chart to this path")
    sp.set_defaults(func=cmd_weights)

    sp = common(sub.add_parser("verify", help="check every structural claim"), fmt="text")
    sp.add_argument("--samples", type=int, default=200, help="random codewords for the repair sweep")
    sp.add_argument("--report-dir", help="write CSV/JSON tables and figures here")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("locality", help="locality and repair plans"))
    sp.add_argument("--dual-plans", action="store_true", help="include repair plans for the dual code")
    sp.set_defaults(func=cmd_locality)

    sp = common(sub.add_parser("repair", help="repair one erased symbol"))
    sp.add_argument("--codeword", required=True, help="file with one line of symbols, '?' = erased; '-' for stdin")
    sp.add_argument("--erase", type=int, help="index to repair (default: the single '?')")
    sp.add_argument("--dual", action="store_true", help="the word belongs to the dual code")
    sp.set_defaults(func=cmd_repair)

    sp = common(sub.add_parser("bounds", help="Singleton-like and Cadambe-Mazumdar bounds"))
    for name in ("n", "k", "d", "r", "q"):
        sp.add_argument(f"--{name}", type=int)
    sp.set_defaults(func=cmd_bounds)

    sp = common(sub.add_parser("export", help="write all tables, plans and figures to a directory"))
    sp.add_argument("--dir", required=True)
    sp.add_argument("--samples", type=int, default=200)
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (UnsupportedParameterError, FieldDomainError, PreconditionError,
            InsufficientDataError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NoLocalRepairError, OvalCodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
