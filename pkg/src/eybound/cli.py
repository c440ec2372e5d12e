"""Command-line entry point.

Every command prints one JSON report (schema-versioned, keys sorted, no
timestamps) so identical flags and seed give byte-identical output.  Exit
status: 0 when every verdict passes, 1 when any fails, 2 when a scan is
incomplete or the input is unusable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, curves, singularity, skew
from .algebra.field import Field
from .algebra.groebner import ResourceLimitExceeded
from .cohomology import vanishing_scan

SCHEMA = "eybound-report/1"
EXIT_PASS, EXIT_FAIL, EXIT_INCOMPLETE = 0, 1, 2

DEFAULTS = {
    "prime": 32003,
    "rationals": False,
    "seed": 0,
    "pad": 4,
    "k_max": 2,
    "max_degree": None,
    "time_cap": 300.0,
    "out": None,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- config


def load_config(args) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    if cfg["time_cap"] is not None and cfg["time_cap"] <= 0:
        raise UsageError("time cap must be positive")
    if cfg["max_degree"] is not None and cfg["max_degree"] <= 0:
        raise UsageError("degree cap must be positive")
    if cfg["pad"] < 0 or cfg["k_max"] < 1:
        raise UsageError("pad must be >= 0 and k-max >= 1")
    return cfg


def field_of(cfg) -> Field:
    return Field(None) if cfg["rationals"] else Field(int(cfg["prime"]))


def report(command, cfg, results, provenance, status="pass") -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": cfg,
        "status": status,
        "results": results,
        "provenance": provenance,
    }


def emit(rep: dict, cfg, extra_files=None):
    text = json.dumps(rep, indent=2, sort_keys=True, default=str)
    print(text)
    out = cfg.get("out")
    if out:
        os.makedirs(out, exist_ok=True)
        name = rep["command"][0]
        with open(os.path.join(out, f"{name}.json"), "w") as fh:
            fh.write(text + "\n")
        for fname, content in (extra_files or {}).items():
            with open(os.path.join(out, fname), "w") as fh:
                fh.write(content)


def _case_of(label):
    kind, obj = catalog.parse_label(label)
    if kind != "case":
        raise UsageError(f"{label} is not a determinantal case")
    return obj


def _curve_degrees(obj):
    """(genus, divisor degree d) for a catalog curve; it has degree d + 2g - 2."""
    genus, deg = obj
    return genus, deg - 2 * genus + 2


# -------------------------------------------------------------- commands


def cmd_list(args, cfg):
    rows = [catalog.label_info(lab) for lab in catalog.DEFAULT_LABELS]
    return report(["list"], cfg, {"entries": rows}, ["catalog of embedded test varieties"]), EXIT_PASS


def cmd_bound(args, cfg):
    label = args.target
    info = catalog.label_info(label)
    kind, obj = catalog.parse_label(label)
    spec = catalog.build(label, cfg["seed"], field_of(cfg))
    t1 = singularity.theorem1_bound(spec.ideal.degrees(), spec.n, spec.r)
    res = {"target": info, "degree_bound": t1}
    if kind == "case":
        nv, rep = singularity.optimize_multiplicities(obj)
        res["strategy_bound"] = rep.e_bound
        res["strategy"] = rep.to_dict()
        prov = ["sum of the r largest defining degrees minus n",
                "lc determinantal strategy composed with the vanishing criterion"]
    else:
        genus, d = _curve_degrees(obj)
        res["strategy_bound"] = curves.prop41_check(genus, d)
        res["curve"] = {"genus": genus, "d": d}
        prov = ["sum of the r largest defining degrees minus n",
                "genus-0/1 curve divisor (n+1)H - (n-1)E composed with the vanishing criterion"]
    res["improvement"] = t1 - res["strategy_bound"]
    return report(["bound", label], cfg, res, prov), EXIT_PASS


def cmd_verify(args, cfg):
    label = args.target
    spec = catalog.build(label, cfg["seed"], field_of(cfg))
    table, verdict = vanishing_scan(
        spec.ideal, spec.d_Y, args.e, cfg["k_max"], cfg["pad"], label=label,
        time_cap=cfg["time_cap"], max_degree=cfg["max_degree"])
    mism = table.euler_mismatches()
    status = verdict.status
    if mism:
        status = "fail"
    res = {
        "target": spec.summary(),
        "e": args.e,
        "verdict": verdict.to_dict(),
        "euler_mismatches": [list(m) for m in mism],
        "table": table.to_dict(),
    }
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "incomplete": EXIT_INCOMPLETE}[status]
    rep = report(["verify", label, f"e={args.e}"], cfg, res,
                 ["vanishing of H^i(I^k(p)) for i > 0 and p >= e + (k-1) d_Y"], status)
    return rep, code, {"table.csv": table.to_csv()}


def cmd_discrepancy(args, cfg):
    case = _case_of(args.target)
    rep = singularity.discrepancy_vector(case, [int(v) for v in args.n])
    ok = singularity.is_lc(rep.verdict)
    res = rep.to_dict()
    res["degree_bound_2r_minus_n"] = 2 * case.r - case.n
    return (report(["discrepancy", args.target] + [str(v) for v in args.n], cfg, res,
                   ["discrepancies of general minors along the blow-up tower"],
                   "pass" if ok else "fail"),
            EXIT_PASS if ok else EXIT_FAIL)


def cmd_optimize(args, cfg):
    case = _case_of(args.target)
    nv, rep = singularity.optimize_multiplicities(case)
    witness = singularity.discrepancy_vector(case, singularity.closed_form_vector(case))
    res = {
        "vector": {str(i): v for i, v in nv.as_dict().items()},
        "report": rep.to_dict(),
        "closed_form_witness": witness.to_dict(),
        "degree_bound_2r_minus_n": 2 * case.r - case.n,
    }
    return report(["optimize", args.target], cfg, res,
                  ["optimal lc strategy over multiplicity vectors"]), EXIT_PASS


def cmd_curve_bound(args, cfg):
    g, d = args.genus, args.degree
    if g < 0 or d < 3:
        raise UsageError("need genus >= 0 and degree >= 3")
    classes = {}
    for variant in ("a", "b", "c"):
        try:
            classes[variant] = curves.prop4a_class(g, d, variant).to_dict()
        except ValueError:
            pass
    res = {"genus": g, "d": d, "n": curves.embedding_dimension(g, d),
           "threshold": curves.prop42_threshold(g), "classes": classes}
    files = {}
    if g <= 1 and d >= 4:
        res["low_genus_bound"] = curves.prop41_check(g, d)
    if d >= 5:
        region = curves.exception_region(g, d)
        res["region"] = region.to_dict()
        res["region_csv"] = region.to_csv()
        files["region.csv"] = region.to_csv()
    return (report(["curve-bound", f"g={g}", f"d={d}"], cfg, res,
                   ["nef-and-big conditions for the efficient curve divisor",
                    "degree threshold and finite exception region"]),
            EXIT_PASS, files)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _data_from(obj):
    if "data" in obj and isinstance(obj["data"], dict):
        obj = obj["data"]
    if "results" in obj and isinstance(obj["results"], dict) and "data" in obj["results"]:
        obj = obj["results"]["data"]
    if "flag" in obj:
        return skew.SkewNormalData.from_dict(obj)
    if "entries" in obj:
        return skew.extract_normal_data(skew.SkewFamily.from_dict(obj))
    raise UsageError("input is neither a skew family nor normal data")


def cmd_skewform(args, cfg):
    obj = _load_json(args.input)
    action = args.action
    if action == "normalize":
        if "entries" not in obj:
            raise UsageError("normalize needs a family (with 'entries')")
        fam = skew.SkewFamily.from_dict(obj)
        data = skew.extract_normal_data(fam)
        limits = [skew.wedge_power_limit(fam, r).to_dict() for r in range(1, data.l + 1)]
        res = {"data": data.to_dict(), "l": data.l, "wedge_limits": limits}
        return report(["skewform", "normalize"], cfg, res,
                      ["flag-and-forms limit of a family of skew forms"]), EXIT_PASS
    data = _data_from(obj)
    if action == "roundtrip":
        fam = skew.smoothing(data, cfg["seed"])
        back = skew.extract_normal_data(fam)
        omegas_ok = all(skew.build_omega(data, r) == skew.wedge_power_limit(fam, r).limit
                        for r in range(1, data.l + 1))
        ok = back == data and omegas_ok
        res = {"identity": back == data, "omega_matches_wedge_limits": omegas_ok,
               "family": fam.to_dict()}
        return (report(["skewform", "roundtrip"], cfg, res,
                       ["smoothing followed by extraction of limit data"],
                       "pass" if ok else "fail"),
                EXIT_PASS if ok else EXIT_FAIL)
    rs = [args.r] if args.r else list(range(1, data.l + 1))
    omegas = {str(r): [[list(I), c] for I, c in skew.build_omega(data, r)] for r in rs}
    return report(["skewform", "omega"], cfg, {"l": data.l, "omega": omegas},
                  ["wedge products of the limit forms"]), EXIT_PASS


# ------------------------------------------------------------------ parser


def build_parser():
    ap = argparse.ArgumentParser(prog="eybound", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="JSON file with default settings")
    ap.add_argument("--prime", type=int, help="prime field characteristic (default 32003)")
    ap.add_argument("--rationals", action="store_true", help="work over the rationals")
    ap.add_argument("--seed", type=int, help="seed for every random choice")
    ap.add_argument("--out", help="directory for report and CSV files")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sub.add_parser("list", help="catalog labels with n, r, d_Y")

    p = sub.add_parser("bound", help="degree bound versus strategy bound")
    p.add_argument("target")

    p = sub.add_parser("verify", help="scan cohomology of ideal powers")
    p.add_argument("target")
    p.add_argument("-e", type=int, required=True, help="candidate e")
    p.add_argument("-k", "--k-max", dest="k_max", type=int, help="largest power")
    p.add_argument("--pad", type=int, help="half-width of the twist window")
    p.add_argument("--max-degree", dest="max_degree", type=int, help="resolution degree cap")
    p.add_argument("--time-cap", dest="time_cap", type=float, help="seconds per power")

    p = sub.add_parser("discrepancy", help="discrepancies of a multiplicity vector")
    p.add_argument("target")
    p.add_argument("n", nargs="+", help="n_2 n_3 ... n_top")

    p = sub.add_parser("optimize", help="best lc multiplicity vector")
    p.add_argument("target")

    p = sub.add_parser("curve-bound", help="curve conditions, threshold and exceptions")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("skewform", help="limits of families of skew forms")
    p.add_argument("action", choices=["normalize", "roundtrip", "omega"])
    p.add_argument("input", help="family or normal-data JSON file")
    p.add_argument("--r", type=int, help="single omega index")
    return ap


COMMANDS = {
    "list": cmd_list,
    "bound": cmd_bound,
    "verify": cmd_verify,
    "discrepancy": cmd_discrepancy,
    "optimize": cmd_optimize,
    "curve-bound": cmd_curve_bound,
    "skewform": cmd_skewform,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        out = COMMANDS[args.cmd](args, cfg)
    except (UsageError, KeyError, ValueError, skew.TruncationError, OSError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_INCOMPLETE
    except ResourceLimitExceeded as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_INCOMPLETE
    rep, code = out[0], out[1]
    files = out[2] if len(out) > 2 else None
    emit(rep, cfg, files)
    return code


if __name__ == "__main__":
    sys.exit(main())
