"""Command-line front end.

Commands: classify ad-hoc equations, reproduce the rational-double-point
table, run cusp parameter sweeps, and verify the closed-form identities.
Output formats: text, json, csv, md.

Exit codes: 0 success (any verdict), 1 input/usage/parse error (also
table --check mismatches and identity failures), 2 resource limit
(degree guard), 3 criterion inapplicable (singular locus not isolated).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from multiprocessing import Pool

from . import catalog
from .catalog import (InadmissibleParameterError, cusp_ci_admissible,
                      cusp_ci_symmetry_class, cusp_hyp_admissible,
                      cusp_hyp_symmetry_class, enumerate_table_rows,
                      make_cusp_ci, make_cusp_hypersurface)
from .criteria import classify as _classify_gens
from .fp_poly import (DEFAULT_MAX_DEGREE, DegreeGuardError, FpPolyError,
                      NotPrimeError, ParseError, PolyRing, is_prime)
from .groebner import order_by_name
from .report import CSV_HEADER, report_csv_row, report_text, report_to_dict

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RESOURCE = 2
EXIT_INAPPLICABLE = 3
EXIT_INTERRUPTED = 130

CURSOR_FILE = ".fliftlab_cursor"

ENV_MAX_DEGREE = "FLIFTLAB_MAX_DEGREE"

SWEEP_FAMILIES = ("cusp_hyp", "cusp_ci")

FULL_RANGE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)
FULL_RANGE_MAX = 30


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    """Validated invocation parameters; built before any computation."""

    command: str
    p_values: tuple[int, ...] = ()
    variables: tuple[str, ...] = ()
    polys: tuple[str, ...] = ()
    fmt: str = "text"
    order: str = "grevlex"
    jobs: int = 1
    max_degree: int = DEFAULT_MAX_DEGREE
    certificates: bool = False
    check: bool = False
    n_max: int = 8
    sweep_family: str = ""
    sweep_max: int = 0
    resume: bool = False
    full_range: bool = False


def _build_parser() -> _Parser:
    parser = _Parser(prog="fliftlab",
                     description="F-purity and F-liftability of isolated "
                                 "hypersurface and complete-intersection "
                                 "singularities over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", default="text",
                        choices=("text", "json", "csv", "md"))
        sp.add_argument("--order", default="grevlex", choices=("grevlex", "lex"))
        sp.add_argument("--max-degree", type=int, default=None)
        sp.add_argument("--jobs", type=int, default=None)

    sp = sub.add_parser("classify", help="classify ad-hoc equations")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--vars", required=True,
                    help="comma-separated variable names")
    sp.add_argument("--poly", action="append", required=True,
                    help="equation text; repeat for a complete intersection")
    sp.add_argument("--certificates", action="store_true")
    common(sp)

    sp = sub.add_parser("table", help="reproduce the RDP table")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--check", action="store_true",
                    help="compare with the expected columns; exit nonzero "
                         "on any mismatch")
    common(sp)

    sp = sub.add_parser("sweep", help="classify a cusp family over a range")
    sp.add_argument("family", choices=SWEEP_FAMILIES)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--p-set", default=None, help="comma-separated primes")
    sp.add_argument("--max", type=int, default=None,
                    help="upper bound for all exponents")
    sp.add_argument("--resume", action="store_true",
                    help="skip tuples up to the cursor file")
    sp.add_argument("--full-range", action="store_true",
                    help="p <= 19 and exponents <= 30 (hours-scale)")
    common(sp)

    sp = sub.add_parser("identity", help="verify the closed-form identities")
    sp.add_argument("--n-max", type=int, default=10)
    common(sp)
    return parser


def _effective_max_degree(arg_value: int | None) -> int:
    if arg_value is not None:
        return arg_value
    env = os.environ.get(ENV_MAX_DEGREE)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_MAX_DEGREE} must be an integer, got {env!r}")
    return DEFAULT_MAX_DEGREE


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.fmt = args.format
    cfg.order = args.order
    cfg.max_degree = _effective_max_degree(args.max_degree)
    if cfg.max_degree < 1:
        raise UsageError("--max-degree must be positive")
    cfg.jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if cfg.jobs < 1:
        raise UsageError("--jobs must be at least 1")

    if args.command == "classify":
        if not is_prime(args.p):
            raise UsageError(f"{args.p} is not prime")
        cfg.p_values = (args.p,)
        variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        if not variables:
            raise UsageError("--vars must name at least one variable")
        cfg.variables = variables
        cfg.polys = tuple(args.poly)
        cfg.certificates = args.certificates
    elif args.command == "table":
        if args.n_max < 1:
            raise UsageError("--n-max must be at least 1")
        cfg.n_max = args.n_max
        cfg.check = args.check
    elif args.command == "sweep":
        cfg.sweep_family = args.family
        cfg.resume = args.resume
        cfg.full_range = args.full_range
        if cfg.full_range:
            cfg.p_values = FULL_RANGE_PRIMES
            cfg.sweep_max = FULL_RANGE_MAX
            if args.p is not None or args.p_set is not None or args.max is not None:
                raise UsageError("--full-range fixes --p/--p-set/--max")
        else:
            if (args.p is None) == (args.p_set is None):
                raise UsageError("sweep needs exactly one of --p or --p-set")
            if args.p is not None:
                primes = [args.p]
            else:
                try:
                    primes = [int(t) for t in args.p_set.split(",") if t.strip()]
                except ValueError:
                    raise UsageError(f"bad --p-set {args.p_set!r}")
            for q in primes:
                if not is_prime(q):
                    raise UsageError(f"{q} is not prime")
            cfg.p_values = tuple(primes)
            if args.max is None or args.max < 2:
                raise UsageError("sweep needs --max >= 2")
            cfg.sweep_max = args.max
    elif args.command == "identity":
        if args.n_max < 2:
            raise UsageError("--n-max must be at least 2")
        cfg.n_max = args.n_max
    return cfg


# --------------------------------------------------------------------- classify

def _cmd_classify(cfg: RunConfig, out) -> int:
    ring = PolyRing(cfg.variables, cfg.p_values[0], cfg.max_degree)
    gens = [ring.parse(text) for text in cfg.polys]
    order = order_by_name(cfg.order)
    report = _classify_gens(gens, order=order, certificates=cfg.certificates)
    if cfg.fmt == "json":
        out.write(json.dumps([report_to_dict(report)], indent=2) + "\n")
    elif cfg.fmt == "csv":
        out.write(CSV_HEADER + "\n")
        out.write(report_csv_row(report, "adhoc", ";".join(cfg.polys)) + "\n")
    elif cfg.fmt == "md":
        out.write("| p | generators | F-pure | F-liftable | conclusive |\n")
        out.write("|---|---|---|---|---|\n")
        out.write(f"| {report.p} | {'; '.join(report.generators)} | "
                  f"{_yn(report.f_pure)} | {_yn(report.f_liftable)} | "
                  f"{_yn(report.conclusive)} |\n")
    else:
        out.write(report_text(report) + "\n")
    if report.status == "not_isolated":
        return EXIT_INAPPLICABLE
    return EXIT_OK


def _yn(v) -> str:
    if v is None:
        return "-"
    return "Y" if v else "N"


# --------------------------------------------------------------------- table

def _cmd_table(cfg: RunConfig, out) -> int:
    order = order_by_name(cfg.order)
    rows = []
    mismatches = 0
    for inst in enumerate_table_rows(cfg.n_max):
        report = _classify_gens([inst.poly], order=order)
        expected = inst.expected
        ok = (report.f_pure, report.f_liftable) == \
            (expected.f_pure, expected.f_liftable)
        if not ok:
            mismatches += 1
        rows.append((inst, report, ok))

    if cfg.fmt == "json":
        payload = []
        for inst, report, ok in rows:
            d = report_to_dict(report)
            d["family"] = inst.row.row_label
            d["params"] = inst.param_dict()
            d["expected"] = {"f_pure": inst.expected.f_pure,
                             "f_liftable": inst.expected.f_liftable}
            d["match"] = ok
            payload.append(d)
        out.write(json.dumps(payload, indent=2) + "\n")
    elif cfg.fmt == "csv":
        out.write(CSV_HEADER + "\n")
        for inst, report, ok in rows:
            params = ";".join(f"{k}={v}" for k, v in inst.params)
            out.write(report_csv_row(report, inst.row.row_label, params) + "\n")
    else:
        header = ("p", "type", "params", "equation", "F-pure", "F-liftable",
                  "F-regular (lit.)", "RET (lit.)", "LET (lit.)")
        body = []
        for inst, report, ok in rows:
            params = ",".join(f"{k}={v}" for k, v in inst.params) or "-"
            body.append((str(inst.p), inst.row.row_label, params,
                         inst.equation_text, _yn(report.f_pure),
                         _yn(report.f_liftable), _yn(inst.expected.f_regular_ref),
                         _yn(inst.expected.ret_ref), _yn(inst.expected.let_ref)))
        if cfg.fmt == "md":
            out.write("| " + " | ".join(header) + " |\n")
            out.write("|" + "|".join("---" for _ in header) + "|\n")
            for row in body:
                out.write("| " + " | ".join(row) + " |\n")
        else:
            widths = [max(len(h), *(len(r[i]) for r in body))
                      for i, h in enumerate(header)]
            out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
            for row in body:
                out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    if cfg.check:
        out.write(f"check: {mismatches} mismatches\n")
        if mismatches:
            return EXIT_INPUT
    return EXIT_OK


# --------------------------------------------------------------------- sweep

def _sweep_tuples(cfg: RunConfig):
    """All admissible tuples in deterministic order: (p, exponents)."""
    tuples = []
    for p in cfg.p_values:
        if cfg.sweep_family == "cusp_hyp":
            rng = range(2, cfg.sweep_max + 1)
            for a in rng:
                for b in rng:
                    for c in rng:
                        if cusp_hyp_admissible(a, b, c):
                            tuples.append((p, (a, b, c)))
        else:
            rng = range(2, cfg.sweep_max + 1)
            for a in rng:
                for b in rng:
                    for c in rng:
                        for d in rng:
                            if cusp_ci_admissible(a, b, c, d):
                                tuples.append((p, (a, b, c, d)))
    return tuples


def _sweep_worker(task):
    family, p, cls, max_degree, order_name = task
    if family == "cusp_hyp":
        gens = [make_cusp_hypersurface(p, *cls, max_degree=max_degree)]
    else:
        gens = make_cusp_ci(p, *cls, max_degree=max_degree)
    report = _classify_gens(gens, order=order_by_name(order_name))
    return (family, p, cls, report.status, report.f_pure, report.f_liftable,
            report.conclusive, report.timings_ms.get("total", 0.0))


def _cursor_text(family, p, exponents) -> str:
    return " ".join([family, str(p)] + [str(e) for e in exponents])


def _read_cursor() -> tuple | None:
    try:
        with open(CURSOR_FILE, "r", encoding="utf-8") as fh:
            parts = fh.read().split()
    except OSError:
        return None
    if len(parts) < 3:
        return None
    return (parts[0], int(parts[1]), tuple(int(t) for t in parts[2:]))


def _write_cursor(family, p, exponents) -> None:
    with open(CURSOR_FILE, "w", encoding="utf-8") as fh:
        fh.write(_cursor_text(family, p, exponents) + "\n")


def _cmd_sweep(cfg: RunConfig, out) -> int:
    family = cfg.sweep_family
    symmetry = (cusp_hyp_symmetry_class if family == "cusp_hyp"
                else cusp_ci_symmetry_class)
    tuples = _sweep_tuples(cfg)
    if cfg.resume:
        cursor = _read_cursor()
        if cursor is not None and cursor[0] == family:
            try:
                idx = tuples.index((cursor[1], cursor[2]))
                tuples = tuples[idx + 1:]
            except ValueError:
                pass

    # classify one representative per symmetry class; verdicts transfer
    # along variable relabelings
    classes = sorted({(p, symmetry(t)) for p, t in tuples})
    tasks = [(family, p, cls, cfg.max_degree, cfg.order) for p, cls in classes]
    results: dict[tuple, tuple] = {}

    def emit_rows():
        rows = []
        for p, t in tuples:
            key = (p, symmetry(t))
            (_, _, _, status, pure, lift, concl, ms) = results[key]
            rows.append((p, t, status, pure, lift, concl, ms))
        return rows

    interrupted = False
    try:
        if cfg.jobs > 1 and len(tasks) > 1:
            with Pool(cfg.jobs) as pool:
                for res in pool.imap(_sweep_worker, tasks, chunksize=4):
                    results[(res[1], res[2])] = res
        else:
            for task in tasks:
                res = _sweep_worker(task)
                results[(res[1], res[2])] = res
    except KeyboardInterrupt:
        interrupted = True

    emitted = []
    last = None
    for p, t in tuples:
        key = (p, symmetry(t))
        if key not in results:
            break
        emitted.append((p, t) + results[key][3:])
        last = (p, t)

    non_liftable = [(p, t) for (p, t, status, pure, lift, concl, ms) in emitted
                    if lift is not True]
    if cfg.fmt == "json":
        payload = {
            "version": "fliftlab/1", "command": "sweep", "family": family,
            "results": [
                {"p": p, "params": list(t), "status": status, "f_pure": pure,
                 "f_liftable": lift, "conclusive": concl, "ms": ms}
                for (p, t, status, pure, lift, concl, ms) in emitted],
            "summary": {"total": len(emitted),
                        "liftable": len(emitted) - len(non_liftable),
                        "non_liftable": [
                            {"p": p, "params": list(t)} for p, t in non_liftable]},
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    elif cfg.fmt == "csv":
        out.write(CSV_HEADER + "\n")
        for (p, t, status, pure, lift, concl, ms) in emitted:
            params = ";".join(f"{n}={v}" for n, v in zip("abcd", t))
            out.write(f"{p},{family},{params},{_yn(pure)},{_yn(lift)},"
                      f"{_yn(concl)},{ms:.1f}\n")
    else:
        arity = 3 if family == "cusp_hyp" else 4
        if cfg.fmt == "md":
            out.write("| p | " + " | ".join("abcd"[:arity])
                      + " | F-pure | F-liftable | conclusive |\n")
            out.write("|" + "|".join("---" for _ in range(arity + 4)) + "|\n")
            for (p, t, status, pure, lift, concl, ms) in emitted:
                out.write("| " + " | ".join(
                    [str(p)] + [str(v) for v in t] +
                    [_yn(pure), _yn(lift), _yn(concl)]) + " |\n")
        else:
            for (p, t, status, pure, lift, concl, ms) in emitted:
                out.write(f"p={p} {tuple(t)}: F-pure={_yn(pure)} "
                          f"F-liftable={_yn(lift)} conclusive={_yn(concl)} "
                          f"({ms:.1f} ms)\n")
        out.write(f"summary: {len(emitted)} tuples, "
                  f"{len(emitted) - len(non_liftable)} liftable, "
                  f"{len(non_liftable)} not liftable\n")
        for p, t in non_liftable:
            out.write(f"NOT LIFTABLE: p={p} {tuple(t)}\n")

    if interrupted:
        if last is not None:
            _write_cursor(family, last[0], last[1])
            out.write(f"interrupted; cursor at {_cursor_text(family, last[0], last[1])}\n")
        return EXIT_INTERRUPTED
    return EXIT_OK


# --------------------------------------------------------------------- identity

def _identity_cases(n_max: int):
    from .criteria import residual_polynomial
    from .frobsplit import delta1

    cases = []
    for n in range(2, n_max + 1):
        ring = PolyRing(catalog.RDP_VARIABLES, 2)
        x, y, z = ring.gens()
        f = z ** 2 + x ** 2 * y + x * y ** n + x * y * z
        fz = f.derivative(2)
        target = z ** 2 * f + (x ** 2 + x * y ** (n - 1) + x * z +
                               y ** (2 * n - 2) + y ** (n - 1) * z) * fz * fz
        cases.append((f"D_2n^{{n-1}} identity, n={n}",
                      lambda f=f: residual_polynomial(f), target))
    for n in range(2, n_max + 1):
        ring = PolyRing(catalog.RDP_VARIABLES, 2)
        x, y, z = ring.gens()
        f = z ** 2 + x ** 2 * y + y ** n * z + x * y * z
        fx = f.derivative(0)
        fz = f.derivative(2)
        target = ((z ** 2 + y ** (2 * n - 1)) * f +
                  (x ** 2 + x * y ** (n - 1) + y ** (2 * n - 3)) * fx * fx +
                  (x ** 2 + z ** 2 + x * z + y ** (n - 1) * z) * fz * fz)
        cases.append((f"D_2n+1^{{n-1}} identity, n={n}",
                      lambda f=f: residual_polynomial(f), target))
    for (a, b, c) in ((3, 4, 5), (2, 3, 7), (3, 3, 4)):
        ring = PolyRing(catalog.RDP_VARIABLES, 2)
        x, y, z = ring.gens()
        f = make_cusp_hypersurface(2, a, b, c)
        target = (x ** a * y ** b + x ** a * z ** c + y ** b * z ** c +
                  x * y * z * (x ** a + y ** b + z ** c))
        cases.append((f"cusp delta1 expansion, (a,b,c)=({a},{b},{c})",
                      lambda f=f: delta1(f), target))
    return cases


def _cmd_identity(cfg: RunConfig, out) -> int:
    for label, compute, target in _identity_cases(cfg.n_max):
        got = compute()
        if got != target:
            out.write(f"FAIL {label}\n  computed: {got}\n  expected: {target}\n")
            return EXIT_INPUT
        out.write(f"ok {label}\n")
    return EXIT_OK


# --------------------------------------------------------------------- main

def main(argv=None) -> int:
    parser = _build_parser()
    out = sys.stdout
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        if cfg.command == "classify":
            return _cmd_classify(cfg, out)
        if cfg.command == "table":
            return _cmd_table(cfg, out)
        if cfg.command == "sweep":
            return _cmd_sweep(cfg, out)
        return _cmd_identity(cfg, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, NotPrimeError, InadmissibleParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegreeGuardError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FpPolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
