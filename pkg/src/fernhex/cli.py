"""Command line: ``fernhex count|verify|render|report``.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 area ceiling hit.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exactnum import GammaProduct, format_rational
from .formulas import TotalsMismatch, formula_result
from .lattice import GeometryConflict, build_region
from .oracle import AreaCeilingExceeded, count_tilings, first_tiling
from .params import (
    InvalidSpec,
    SweepBudget,
    check_spec,
    format_spec,
    parse_list,
    parse_spec,
)
from .render import render_ascii, render_svg

SCHEMA_VERSION = "1.0"

# default oracle ceiling for single counts
CLI_MAX_AREA = 1500

EXIT_OK, EXIT_FAIL, EXIT_USER, EXIT_CEILING = 0, 1, 2, 3

# the long labels map onto the short recurrence ids
RECURRENCE_ALIASES = {
    "R⊙:a<b": "Rc-lt", "R⊙:a≥b": "Rc-ge", "R←:a≤b": "Rl-le", "R←:a>b": "Rl-gt",
    "R↙:a≤b": "Rsw-le", "R↙:a>b": "Rsw-gt", "R↖:a<b": "Rnw-lt", "R↖:a>b": "Rnw-gt",
    "R↖:a=b": "Rnw-eq", "Q⊙:a<b": "Qc-lt", "Q⊙:a≥b": "Qc-ge", "Q←:a≤b": "Ql-le",
    "Q←:a>b": "Ql-gt", "Q↖:a<b": "Qnw-lt", "Q↖:a>b": "Qnw-gt", "Q↖:a=b": "Qnw-eq",
    "Q↗:a<b": "Qne-lt", "Q↗:a≥b": "Qne-ge",
}


class UserError(Exception):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


def _doc(command, inputs, results):
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "inputs": inputs, "results": results}


def _spec(text):
    try:
        return check_spec(parse_spec(text))
    except InvalidSpec as e:
        raise UserError(f"invalid spec {text!r}", e.violations) from None


def _term_text(t):
    if isinstance(t, GammaProduct):
        if t.sqrt_pi_exponent == 0:
            return format_rational(t.to_rational())
        return repr(t)
    return format_rational(t)


def _budget(args, **over):
    kw = dict(max_x=args.max_x, max_y=args.max_y, max_z=args.max_z,
              max_area=args.max_area or 100, sample=args.sample, seed=args.seed)
    if args.alphabet:
        kw["fern_alphabet"] = parse_alphabet(args.alphabet)
    kw.update(over)
    return SweepBudget(**kw)


def parse_alphabet(text):
    """'[],[1],[1,1]' -> tuple of FernSeq."""
    import re
    parts = re.findall(r"\[[^\]]*\]", text)
    if not parts:
        raise UserError(f"cannot parse fern alphabet {text!r}")
    return tuple(parse_list(p) for p in parts)


# -- commands -------------------------------------------------------------------

def cmd_count(args):
    spec = _spec(args.spec)
    res = formula_result(spec)
    out = {"formula": str(res.value)}
    if args.oracle:
        r = build_region(spec)
        n = count_tilings(r, backend=args.backend, max_area=args.max_area or CLI_MAX_AREA)
        out["oracle"] = str(n)
        out["area"] = str(len(r))
        out["agreement"] = n == res.value
    if args.audit:
        out["factors"] = [{"name": name, "value": _term_text(t)} for name, t in res.terms]
        out["sqrt_pi_exponent"] = str(res.sqrt_pi_exponent)
    code = EXIT_FAIL if out.get("agreement") is False else EXIT_OK
    return _doc("count", {"spec": format_spec(spec)}, out), code


def _run_suite(args):
    from . import verify as V

    suite = args.suite
    inputs = {"suite": suite}
    if suite == "grid":
        b = _budget(args)
        inputs["budget"] = _budget_inputs(b)
        reps = {"grid": V.check_formula_vs_oracle(b, backend=args.backend)}
    elif suite == "kuo":
        mode = "formula" if args.formula_mode else "oracle"
        inputs["mode"] = mode
        if args.id:
            rid = RECURRENCE_ALIASES.get(args.id, args.id)
            if rid not in V.RECURRENCES:
                raise UserError(f"unknown recurrence id {args.id!r}",
                                [f"known ids: {', '.join(V.RECURRENCE_IDS)}"])
            inputs["id"] = rid
            if args.spec:
                spec = _spec(args.spec)
                inputs["spec"] = format_spec(spec)
                try:
                    rep = V.check_kuo_recurrence(rid, spec, mode=mode, backend=args.backend)
                except V.SideConditionViolated as e:
                    raise UserError("recurrence does not apply", [str(e)]) from None
                reps = {rid: rep}
            else:
                reps = {}
                b = _budget(args, max_area=args.max_area or 120)
                rep = V.VerificationReport(f"recurrence {rid}")
                for s in V.recurrence_instances(rid, b, args.per_id):
                    rep = rep.merge(V.check_kuo_recurrence(rid, s, mode=mode, backend=args.backend))
                reps[rid] = rep
        else:
            b = _budget(args, max_area=args.max_area or 120)
            reps = V.check_all_recurrences(b, per_id=args.per_id, mode=mode)
    elif suite == "extremal":
        b = _budget(args)
        inputs["budget"] = _budget_inputs(b)
        reps = {"extremal": V.check_extremal_lemmas(b),
                "forced-split": V.check_forced_and_split(b)}
    elif suite == "dual":
        a, b_, c = parse_list(args.a), parse_list(args.b), parse_list(args.c)
        Ns = [int(t) for t in args.N.split(",") if t.strip()]
        x, z = Fraction(args.x), Fraction(args.z)
        if x <= 0 or z <= 0 or not Ns:
            raise UserError("x and z must be positive and N nonempty")
        inputs.update(a=list(a), b=list(b_), c=list(c), x=str(x), z=str(z), N=[str(n) for n in Ns])
        try:
            rows = V.check_dual_convergence(a, c, b_, x, z, Ns)
        except TotalsMismatch as e:
            raise UserError(str(e)) from None
        return inputs, rows, None
    else:
        raise UserError(f"unknown suite {suite!r}")
    return inputs, None, reps


def _budget_inputs(b):
    return {"max_x": str(b.max_x), "max_y": str(b.max_y), "max_z": str(b.max_z),
            "max_area": str(b.max_area), "alphabet": [list(f) for f in b.fern_alphabet],
            "sample": None if b.sample is None else str(b.sample), "seed": str(b.seed)}


def _dual_rows(rows):
    return [{"N": str(N), "ratio": repr(r), "limit": str(lim), "relative_error": repr(err),
             "exact_ratio": None if ex is None else format_rational(ex)}
            for N, r, lim, err, ex in rows]


def cmd_verify(args):
    inputs, rows, reps = _run_suite(args)
    if rows is not None:
        last = rows[-1][3]
        ok = last <= args.tolerance
        res = {"rows": _dual_rows(rows), "tolerance": repr(args.tolerance), "passed": ok}
        return _doc("verify", inputs, res), EXIT_OK if ok else EXIT_FAIL
    ok = all(r.passed for r in reps.values())
    res = {"passed": ok, "reports": {k: r.to_dict() for k, r in reps.items()}}
    return _doc("verify", inputs, res), EXIT_OK if ok else EXIT_FAIL


def cmd_render(args):
    spec = _spec(args.spec)
    try:
        r = build_region(spec)
    except GeometryConflict as e:
        raise UserError("region cannot be built", [str(e)]) from None
    tiling = None
    if args.tiling == "first":
        if args.max_area and len(r) > args.max_area:
            raise AreaCeilingExceeded(f"region has {len(r)} triangles, ceiling is {args.max_area}")
        tiling = first_tiling(r)
    text = render_svg(r, tiling) if args.format == "svg" else render_ascii(r, tiling)
    if args.output:
        Path(args.output).write_text(text)
    res = {"format": args.format, "area": str(len(r)),
           "lozenges": None if tiling is None else str(len(tiling))}
    if args.output:
        res["output"] = str(args.output)
    else:
        res["drawing"] = text
    return _doc("render", {"spec": format_spec(spec)}, res), EXIT_OK


def cmd_report(args):
    """Write figures (PNG) and tables (CSV/TSV) for one suite into a directory."""
    from . import plotting

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    inputs, rows, reps = _run_suite(args)
    files = []
    if rows is not None:
        p = out / "dual_convergence.csv"
        with p.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "ratio", "limit", "relative_error", "exact_ratio"])
            for N, r, lim, err, ex in rows:
                w.writerow([N, repr(r), lim, repr(err), "" if ex is None else format_rational(ex)])
        files.append(p)
        png = out / "dual_convergence.png"
        plotting.save(plotting.plot_dual_convergence(rows, title="ratio vs N"), png)
        files.append(png)
        ok = rows[-1][3] <= args.tolerance
    else:
        p = out / "summary.tsv"
        with p.open("w", newline="") as fh:
            w = csv.writer(fh, delimiter="\t")
            w.writerow(["report", "instances", "failures", "skipped", "seconds"])
            for k, r in reps.items():
                w.writerow([k, r.instances_checked, len(r.failures), r.skipped, f"{r.elapsed:.3f}"])
        files.append(p)
        p = out / "failures.tsv"
        with p.open("w", newline="") as fh:
            w = csv.writer(fh, delimiter="\t")
            w.writerow(["report", "spec", "lhs", "rhs"])
            for k, r in reps.items():
                for s, lhs, rhs in r.failures:
                    w.writerow([k, s, lhs, rhs])
        files.append(p)
        png = out / "summary.png"
        plotting.save(plotting.plot_report_summary(reps), png)
        files.append(png)
        ok = all(r.passed for r in reps.values())
    if args.spec and args.suite != "dual":
        spec = _spec(args.spec)
        png = out / "region.png"
        plotting.save(plotting.plot_region(build_region(spec), title=format_spec(spec)), png)
        files.append(png)
    res = {"passed": ok, "files": [str(f) for f in files]}
    return _doc("report", inputs, res), EXIT_OK if ok else EXIT_FAIL


# -- argument parsing -----------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit the output document as JSON")
    p.add_argument("--oracle", action="store_true", help="also count tilings by brute force")
    p.add_argument("--backend", choices=["auto", "profile", "det"], default="auto",
                   help="oracle backend; auto picks by region area")
    p.add_argument("--max-area", type=int, default=None, help="oracle area ceiling")
    p.add_argument("--seed", type=int, default=0, help="seed for sweep subsampling")
    return p


def _suite_args(p):
    p.add_argument("suite", choices=["grid", "kuo", "extremal", "dual"])
    p.add_argument("--max-x", type=int, default=2)
    p.add_argument("--max-y", type=int, default=1)
    p.add_argument("--max-z", type=int, default=2)
    p.add_argument("--alphabet", help="fern alphabet for sweeps, e.g. '[],[1],[1,1]'")
    p.add_argument("--sample", type=int, default=None, help="random subset size")
    p.add_argument("--id", help="recurrence id, e.g. Rc-lt or 'R⊙:a<b'")
    p.add_argument("--spec", help="region spec")
    p.add_argument("--per-id", type=int, default=3)
    p.add_argument("--formula-mode", action="store_true",
                   help="use closed forms instead of the oracle in recurrence checks")
    p.add_argument("--a", default="[1,1]")
    p.add_argument("--b", default="[1,1]")
    p.add_argument("--c", default="[2]")
    p.add_argument("--x", default="1")
    p.add_argument("--z", default="1")
    p.add_argument("--N", default="4,8,16,24")
    p.add_argument("--tolerance", type=float, default=0.05)


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="fernhex",
                                 description="Exact lozenge-tiling counts for hexagons with three ferns removed.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="closed-form count of one region")
    p.add_argument("spec")
    p.add_argument("--audit", action="store_true", help="list the formula factors")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    _suite_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="draw a region")
    p.add_argument("spec")
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--tiling", choices=["none", "first"], default="none")
    p.add_argument("-o", "--output", help="write the drawing here")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("report", parents=[common], help="suite results as PNG figures and CSV/TSV tables")
    _suite_args(p)
    p.add_argument("--out", default="fernhex-report", help="output directory")
    p.set_defaults(func=cmd_report)
    return ap


def _print_text(doc):
    res = doc["results"]
    cmd = doc["command"]
    if cmd == "count":
        print(f"{doc['inputs']['spec']}")
        print(f"formula: {res['formula']}")
        if "oracle" in res:
            print(f"oracle:  {res['oracle']}  ({'agree' if res['agreement'] else 'DISAGREE'})")
        for f in res.get("factors", []):
            print(f"  {f['name']} = {f['value']}")
    elif cmd == "render":
        if "drawing" in res:
            sys.stdout.write(res["drawing"])
        else:
            print(f"wrote {res['output']}")
    elif cmd == "verify" and "rows" in res:
        print(f"{'N':>4}  {'ratio':>14}  {'limit':>8}  {'rel.err':>10}")
        for r in res["rows"]:
            print(f"{r['N']:>4}  {float(r['ratio']):14.8f}  {r['limit']:>8}  {float(r['relative_error']):10.3e}")
        print("PASS" if res["passed"] else "FAIL")
    elif cmd == "verify":
        for k, r in res["reports"].items():
            status = "pass" if r["passed"] else "FAIL"
            print(f"{k}: {status}  instances={r['instances_checked']} failures={len(r['failures'])} "
                  f"time={r['elapsed_seconds']}s")
            for f in r["failures"][:10]:
                print(f"    {f['spec']}: {f['lhs']} != {f['rhs']}")
    else:
        for f in res.get("files", []):
            print(f"wrote {f}")
        print("PASS" if res["passed"] else "FAIL")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        doc, code = args.func(args)
    except UserError as e:
        _error(args, str(e), e.violations, "user_error")
        return EXIT_USER
    except AreaCeilingExceeded as e:
        _error(args, str(e), [], "area_ceiling")
        return EXIT_CEILING
    doc["elapsed_seconds"] = f"{time.perf_counter() - t0:.3f}"
    if args.json:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        _print_text(doc)
    return code


def _error(args, message, violations, kind):
    if args.json:
        print(json.dumps(_doc(args.command, {}, {"error": kind, "message": message,
                                                  "violations": violations}),
                         indent=2, ensure_ascii=False))
    else:
        print(f"error: {message}", file=sys.stderr)
        for v in violations:
            print(f"  - {v}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
