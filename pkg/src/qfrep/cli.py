"""Command-line interface: every operation of the library behind one binary
with machine-readable output.

JSON mode (the default) emits one record per line and is the source of
truth; human mode is a thin formatter over the same records; csv mode emits
key,value rows (and for scans, exceptions one per line).  Exit codes:
0 success, 1 domain outcome (no witness / unavailable / failed validation),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructive, forms, genus, local, scan
from .arith import check_input_range
from .restrict import RestrictionSpec, Target


class UsageError(Exception):
    pass


def _parse_int(text: str) -> int:
    v = int(text)
    check_input_range(v)
    return v


def _parse_range(text: str) -> tuple[int, int]:
    if ".." not in text:
        raise UsageError(f"range must look like LO..HI, got {text!r}")
    lo, hi = text.split("..", 1)
    return _parse_int(lo), _parse_int(hi)


def _parse_ternary(text: str) -> forms.TernaryForm:
    try:
        f = forms.TernaryForm.parse(text)
    except ValueError as e:
        raise UsageError(str(e))
    check_input_range(*f.coeffs())
    return f


def _emit(record: dict, mode: str, csv_rows=None) -> None:
    if mode == "json":
        print(json.dumps(record))
    elif mode == "csv":
        if csv_rows is not None:
            for row in csv_rows:
                print(",".join(str(v) for v in row))
        else:
            for k, v in record.items():
                print(f"{k},{json.dumps(v) if isinstance(v, (list, dict)) else v}")
    else:
        parts = []
        for k, v in record.items():
            parts.append(f"{k}={v}")
        print("  ".join(parts))


def _decomposition_record(d: constructive.Decomposition, with_trace: bool) -> dict:
    x, y, z, w = d.quadruple
    rec = {
        "variant": d.variant,
        "n": d.n,
        "x": x, "y": y, "z": z, "w": w,
        "linear_value": d.linear_value,
        "form": d.form.literal(),
        "linear": d.restriction.literal(),
        "target": d.restriction.target.describe(),
        "domain": d.restriction.domain,
    }
    if with_trace:
        rec["trace"] = [[k, list(v) if isinstance(v, tuple) else v] for k, v in d.trace]
    return rec


def _cmd_ternary(args, mode) -> int:
    f = _parse_ternary(args.form)
    if args.op == "disc":
        _emit({"form": f.literal(), "disc": f.disc()}, mode)
        return 0
    if args.op == "aut":
        auts = forms.automorphisms(f)
        rec = {"form": f.literal(), "aut_order": len(auts)}
        if args.matrices:
            rec["matrices"] = [[list(row) for row in m] for m in auts]
        _emit(rec, mode)
        return 0
    n = _parse_int(args.n)
    if n < 0:
        raise UsageError("n must be nonnegative")
    if args.op == "count":
        _emit({"form": f.literal(), "n": n, "count": forms.represent_count(f, n)}, mode)
        return 0
    sols = forms.represent_all(f, n)
    shown = sols if args.limit is None else sols[: args.limit]
    _emit({"form": f.literal(), "n": n, "count": len(sols),
           "solutions": [list(v) for v in shown]}, mode,
          csv_rows=[v for v in shown])
    return 0


def _cmd_local(args, mode) -> int:
    f = _parse_ternary(args.form)
    n = _parse_int(args.n)
    if args.op == "density":
        val = local.local_density(f, n, _parse_int(args.p), _parse_int(args.k))
        _emit({"form": f.literal(), "n": n, "p": int(args.p), "k": int(args.k),
               "value": f"{val.numerator}/{val.denominator}"}, mode)
        return 0
    if args.op == "eligible":
        _emit({"form": f.literal(), "n": n, "verdict": local.is_eligible(f, n)}, mode)
        return 0
    v = local.is_locally_represented(f, n, _parse_int(args.p))
    _emit({"form": f.literal(), "n": n, "p": v.p, "k": v.depth,
           "verdict": v.represented,
           "witness": list(v.witness) if v.witness else None}, mode)
    return 0


def _cmd_dickson(args, mode) -> int:
    parts = tuple(int(v) for v in args.form.split(","))
    if len(parts) != 3:
        raise UsageError("dickson form must be a triple a,b,c")
    n = _parse_int(args.n)
    _emit({"form": args.form, "n": n,
           "member": local.dickson_exception_member(parts, n)}, mode)
    return 0


def _cmd_spinor(args, mode) -> int:
    f = _parse_ternary(args.form)
    b = local.spinor_genus_count_bound(f)
    _emit({"form": f.literal(), "verdict": b.verdict, "reason": b.reason}, mode)
    return 0


def _cmd_genus(args, mode) -> int:
    if args.op == "classes":
        d = _parse_int(args.disc)
        classes = genus.enumerate_classes(d, args.bound)
        _emit({"disc": d, "class_count": len(classes),
               "classes": [list(g.coeffs()) for g in classes]}, mode,
              csv_rows=[g.coeffs() for g in classes])
        return 0
    f = _parse_ternary(args.form)
    rec = genus.genus_of(f, args.bound)
    if args.op == "of":
        _emit({"form": f.literal(), "disc": rec.discriminant,
               "class_count": len(rec.classes),
               "classes": [list(g.coeffs()) for g in rec.classes],
               "aut_orders": list(rec.aut_orders),
               "spinor_partition": [list(p) for p in rec.spinor_partition]
               if rec.spinor_partition else None}, mode)
        return 0
    n = _parse_int(args.n)
    classes = list(zip(rec.classes, rec.aut_orders))
    label = "genus"
    if args.spinor is not None:
        if rec.spinor_partition is None:
            raise UsageError("no spinor partition known for this genus")
        ids = rec.spinor_partition[args.spinor]
        classes = [(rec.classes[i], rec.aut_orders[i]) for i in ids]
        label = f"spinor:{args.spinor}"
    val = genus.weighted_average(classes, n)
    _emit({"form": f.literal(), "n": n, "classes": label,
           "value": f"{val.numerator}/{val.denominator}"}, mode)
    return 0


def _cmd_decompose(args, mode) -> int:
    n = _parse_int(args.n)
    d = constructive.decompose(args.variant, n)
    if isinstance(d, constructive.Unavailable):
        _emit({"variant": d.variant, "n": n, "status": "unavailable",
               "stage": d.stage}, mode)
        return 1
    rec = _decomposition_record(d, args.trace)
    rec["status"] = "ok"
    _emit(rec, mode)
    return 0


def _cmd_lemma(args, mode) -> int:
    n = _parse_int(args.n)
    w = constructive.construct_lemma(args.id, n)
    if isinstance(w, constructive.Unavailable):
        _emit({"lemma": w.variant, "n": n, "status": "unavailable",
               "stage": w.stage}, mode)
        return 1
    x, y, z = w.triple
    _emit({"lemma": w.lemma, "n": n, "status": "ok", "value": w.value,
           "weights": list(w.weights), "x": x, "y": y, "z": z,
           "valid": constructive.validate_lemma(w)}, mode)
    return 0


def _parse_excludes(specs) -> tuple:
    out = []
    for text in specs or ():
        if ":" not in text:
            raise UsageError("exclude filter must look like M:R1,R2")
        m, rs = text.split(":", 1)
        out.append((_parse_int(m), tuple(_parse_int(r) for r in rs.split(","))))
    return tuple(out)


def _cmd_scan(args, mode) -> int:
    try:
        form = forms.DiagonalQuaternary.parse(args.form)
        coeffs = tuple(_parse_int(v) for v in args.linear.split(","))
        if len(coeffs) != 4:
            raise UsageError("linear form needs four coefficients")
        spec = RestrictionSpec(coeffs, Target.parse(args.target), args.domain)
        lo, hi = _parse_range(args.range)
        problem = scan.ScanProblem(form, spec, lo, hi, _parse_excludes(args.exclude_mod))
    except ValueError as e:
        raise UsageError(str(e))
    report = scan.scan_range(problem, workers=args.jobs)
    rec = report.canonical_dict(include_timing=args.timing)
    if args.exceptions_csv:
        with open(args.exceptions_csv, "w") as fh:
            for n in report.exceptions:
                fh.write(f"{n}\n")
    _emit(rec, mode, csv_rows=[(n,) for n in report.exceptions])
    return 0


def _cmd_cross_check(args, mode) -> int:
    lo, hi = _parse_range(args.range)
    rep = scan.cross_check(args.variant, lo, hi)
    _emit(rep.canonical_dict(), mode)
    return 0 if rep.consistent() else 1


def _verify_record(rec: dict) -> bool:
    variant = rec.get("variant")
    quad = (rec["x"], rec["y"], rec["z"], rec["w"]) if "x" in rec else tuple(rec["quadruple"])
    form = forms.DiagonalQuaternary.parse(rec["form"])
    coeffs = tuple(int(v) for v in rec["linear"].split(","))
    spec = RestrictionSpec(coeffs, Target.parse(rec["target"]), rec.get("domain", "int"))
    n = rec["n"]
    if form.evaluate(quad) != n:
        return False
    if spec.linear(quad) != rec["linear_value"] or not spec.target.contains(rec["linear_value"]):
        return False
    if variant in constructive.VARIANTS and "trace" in rec:
        trace = tuple(
            (k, tuple(v) if isinstance(v, list) else v) for k, v in rec["trace"]
        )
        d = constructive.Decomposition(variant, n, quad, form, spec,
                                       rec["linear_value"], trace)
        return constructive.validate(d)
    return True


def _cmd_verify(args, mode) -> int:
    stream = open(args.path) if args.path else sys.stdin
    ok = True
    checked = 0
    failures = []
    try:
        for line in stream:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("status") == "unavailable":
                continue
            checked += 1
            if not _verify_record(rec):
                ok = False
                failures.append(rec.get("n"))
    finally:
        if args.path:
            stream.close()
    _emit({"checked": checked, "ok": ok, "failures": failures}, mode)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qfrep",
        description="representation arithmetic for ternary quadratic forms "
                    "and restricted weighted sums of four squares",
    )
    ap.add_argument("--output", choices=("json", "csv", "human"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("ternary", help="solve/count/aut/disc for a ternary form")
    t.add_argument("op", choices=("solve", "count", "aut", "disc"))
    t.add_argument("--form", required=True)
    t.add_argument("--n")
    t.add_argument("--limit", type=int)
    t.add_argument("--matrices", action="store_true")
    t.set_defaults(fn=_cmd_ternary)

    lo = sub.add_parser("local", help="local densities and representability")
    lo.add_argument("op", choices=("density", "eligible", "represented"))
    lo.add_argument("--form", required=True)
    lo.add_argument("--n", required=True)
    lo.add_argument("--p")
    lo.add_argument("--k")
    lo.set_defaults(fn=_cmd_local)

    di = sub.add_parser("dickson", help="closed-form exception set membership")
    di.add_argument("op", choices=("member",))
    di.add_argument("--form", required=True)
    di.add_argument("--n", required=True)
    di.set_defaults(fn=_cmd_dickson)

    sp = sub.add_parser("spinor", help="spinor-genus count criterion")
    sp.add_argument("op", choices=("bound",))
    sp.add_argument("--form", required=True)
    sp.set_defaults(fn=_cmd_spinor)

    ge = sub.add_parser("genus", help="classes, genus membership, averages")
    ge.add_argument("op", choices=("classes", "of", "average"))
    ge.add_argument("--disc")
    ge.add_argument("--form")
    ge.add_argument("--n")
    ge.add_argument("--spinor", type=int)
    ge.add_argument("--bound", type=int, default=genus.DEFAULT_DISC_BOUND)
    ge.set_defaults(fn=_cmd_genus)

    de = sub.add_parser("decompose", help="run one constructive variant")
    de.add_argument("--variant", required=True)
    de.add_argument("--n", required=True)
    de.add_argument("--trace", action="store_true")
    de.set_defaults(fn=_cmd_decompose)

    le = sub.add_parser("lemma", help="run one lemma construction")
    le.add_argument("--id", required=True)
    le.add_argument("--n", required=True)
    le.set_defaults(fn=_cmd_lemma)

    sc = sub.add_parser("scan", help="range verification with exceptions")
    sc.add_argument("--form", required=True)
    sc.add_argument("--linear", required=True)
    sc.add_argument("--target", required=True)
    sc.add_argument("--domain", choices=("int", "nat"), default="int")
    sc.add_argument("--range", required=True)
    sc.add_argument("--exclude-mod", action="append")
    sc.add_argument("--jobs", type=int, default=1)
    sc.add_argument("--exceptions-csv")
    sc.add_argument("--timing", action="store_true")
    sc.set_defaults(fn=_cmd_scan)

    cc = sub.add_parser("cross-check", help="constructive vs exhaustive comparison")
    cc.add_argument("--variant", required=True)
    cc.add_argument("--range", required=True)
    cc.set_defaults(fn=_cmd_cross_check)

    ve = sub.add_parser("verify", help="re-validate emitted JSON records")
    ve.add_argument("path", nargs="?")
    ve.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args, args.output)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return 2
    except (constructive.NormalizationFailed, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
