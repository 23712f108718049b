"""``hecke``: command-line front end with a JSON envelope on stdout.

Exit codes: 0 success, 1 usage error, 2 mathematical precondition
violation, 3 acceptance failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .linform import LinForm, frac, frac_str

SCHEMA_VERSION = "1.0"
TYPE_ALIASES = {"g2": "G2", "f4": "F4", "cn": "Cn-datum", "cn-datum": "Cn-datum",
                "an": "An", "bn": "Bn", "dn": "Dn", "c": "Cn"}
TABLE_TYPES = {"g2": "G2", "f4": "F4"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, LinForm):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):  # numpy scalars
        return x.item()
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def _num(x, digits=30) -> str:
    import mpmath

    return mpmath.nstr(x, digits)


def _parse_at(text: str) -> dict:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"--at expects sym=value pairs, got {part!r}")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = frac(v.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational: {v!r}") from None
    return out


def _parse_rationals(text: str, count=None) -> list:
    try:
        vals = [frac(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational list: {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} comma-separated rationals, got {text!r}")
    return vals


def _type_tag(name: str, table_only=False) -> str:
    table = TABLE_TYPES if table_only else {**TYPE_ALIASES, **{v.lower(): v for v in TYPE_ALIASES.values()}}
    key = name.lower()
    if key not in table:
        raise UsageError(f"unknown type {name!r}")
    return table[key]


def _row_point(name: str, label: str):
    from .tables import load_tables, match_rows

    name = name.lower()
    if name not in TABLE_TYPES:
        raise UsageError(f"--b needs g2 or f4, got {name!r}")
    labels = [r.label for r in load_tables()[name]]
    if label not in labels:
        raise UsageError(f"unknown row {label!r}; expected one of {labels}")
    for row, p in match_rows(name, apply_errata=True):
        if row.label == label:
            return row, p
    raise AssertionError


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def cmd_root(args, warnings):
    from .rootdata import build_root_system

    rs = build_root_system(_type_tag(args.type), args.rank)
    return rs.to_json()


def cmd_elliptic(args, warnings):
    from .rootdata import build_root_system
    from .weylgrp import elliptic_summary

    tag = _type_tag(args.type)
    if args.per_subsystem and tag not in ("G2", "F4"):
        raise UsageError("--per-subsystem is available for g2 and f4")
    rs = build_root_system(tag, args.rank)
    return elliptic_summary(rs, per_subsystem=args.per_subsystem)


def cmd_residual(args, warnings):
    from .residual import GENERIC_SAMPLE, enumerate_generic_residual_points, residual_index, system_and_subsystems

    tag = _type_tag(args.type, table_only=True)
    _, subs = system_and_subsystems(tag)
    tags = sorted({sub.type_tag for sub in subs})
    if args.subsystem and args.subsystem not in tags:
        raise UsageError(f"unknown subsystem {args.subsystem!r}; expected one of {tags}")
    rows = []
    for sub in subs:
        if args.subsystem and sub.type_tag != args.subsystem:
            continue
        for p in enumerate_generic_residual_points(sub, shuffle_seed=args.shuffle_seed):
            idx = residual_index(p)
            rows.append({"subsystem": sub.type_tag,
                         "kac_point": [frac_str(x) for x in sub.kac_point],
                         "coweight_coords": [str(a) for a in p.coweight_coords],
                         "defining_roots": [int(i) for i in p.defining_roots],
                         "residual_index": {"matches": idx.matches, "zeros": idx.zeros}})
    return {"type": tag, "sample": {k: frac_str(v) for k, v in GENERIC_SAMPLE.items()},
            "orbit_count": len(rows), "rows": rows}


def cmd_mass(args, warnings):
    from .massfn import evaluate_regularized, mass_function, sign_graded, singular_locus

    row, p = _row_point(args.type, args.b)
    at = _parse_at(args.at)
    v = frac(args.v)
    if v <= 1:
        raise ValueError("v must exceed 1")
    sg = sign_graded(p, at)
    result = {"row": row.label, "point": p.coords_str(), "subsystem": p.subsystem.type_tag,
              "at": {k: frac_str(x) for k, x in at.items()}, "sign_graded": sg}
    if args.sign_only:
        return result
    m = mass_function(p)
    reg = evaluate_regularized(m, at, v)
    result.update({
        "v": frac_str(v),
        "value": _num(reg.value),
        "vanishing_order": reg.vanishing_order,
        "direction": {k: frac_str(x) for k, x in reg.direction_used},
        "sign": reg.sign,
        "factors": [{"side": f.side, "unit": frac_str(f.unit), "expo": str(f.expo)} for f in m.factors],
        "singular_locus": [str(h) for h in singular_locus(m)],
    })
    return result


def cmd_sign(args, warnings):
    from .massfn import sign_graded

    row, p = _row_point(args.type, args.b)
    at = _parse_at(args.at)
    return {"row": row.label, "point": p.coords_str(), "at": {k: frac_str(x) for k, x in at.items()},
            "sign_graded": sign_graded(p, at)}


def cmd_reeder(args, warnings):
    from .massfn import reeder_m

    row, p = _row_point(args.type, args.b)
    qs = _parse_rationals(args.q)
    r = reeder_m(p)
    return {"row": row.label, "point": p.coords_str(), "formula": r.pretty(), "rational_function": r.to_json(),
            "R_at_zero": frac_str(r.R_at_zero()),
            "values": {frac_str(q): _num(r(q)) for q in qs}}


def cmd_cn(args, warnings):
    from .cnfamily import (Bipartition, bipartitions, build_module, central_character_string,
                           graded_central_character, is_discrete_series, limiting_sign, restrict_to_weyl)
    from .weylgrp import ordinary_pairing

    params = _parse_rationals(args.params, 3)
    if args.bp:
        try:
            bps = [Bipartition.parse(args.bp)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.n is not None and bps[0].n != args.n:
            raise UsageError("--bp size differs from --n")
    else:
        if args.n is None:
            raise UsageError("give --n or --bp")
        bps = bipartitions(args.n)
    out = []
    for bp in bps:
        mod = build_module(bp, *params)
        entry = {"bipartition": str(bp), "dim": mod.dim, "relations": all(mod.relation_report.values()),
                 "eps_limit": limiting_sign(bp)}
        if args.ds:
            entry["discrete_series"] = is_discrete_series(mod)
        if args.cc:
            entry["central_character"] = [{"sign": s, "v_exponent": str(e)} for s, e in central_character_string(bp)]
            entry["graded"] = [str(c) for c in graded_central_character(bp)]
        if args.restrict:
            r = restrict_to_weyl(bp)
            entry["restriction"] = {"dim": r.dim, "compact_part": list(r.compact_part),
                                    "norm": frac_str(ordinary_pairing(r.character, r.character)),
                                    "character": [r.character.values[c] for c in sorted(r.character.values)]}
        out.append(entry)
    return {"params": [frac_str(x) for x in params], "modules": out}


def cmd_table(args, warnings):
    from .tables import reconcile, table_payload, tables_checksum

    name = args.name.lower()
    if name not in TABLE_TYPES:
        raise UsageError(f"unknown table {args.name!r}")
    result = {"table": name, "checksum": tables_checksum(), "rows": table_payload(name)}
    if args.reconcile:
        rep = reconcile(name)
        result["reconcile"] = rep
        if not rep["orbit_matching"]["verbatim"]["bijective"]:
            warnings.append("printed table cells without a residual orbit: "
                            + ", ".join(rep["orbit_matching"]["verbatim"]["unmatched_rows"]))
    return result


def cmd_accept(args, warnings):
    from .acceptance import run_all

    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(only=only, seedless=args.seedless, echo=lambda s: print(s, file=sys.stderr))
    return {"criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                          "summary": r.detail.get("summary", ""), "seconds": round(r.seconds, 1)}
                         for r in results],
            "passed": sum(r.passed for r in results), "total": len(results)}


# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    fmt.add_argument("--md", dest="fmt", action="store_const", const="md")
    common.add_argument("--seedless", action="store_true", help="forbid randomized sampling")

    p = _Parser(prog="hecke", description="Residual points, mass functions and discrete-series signs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("root", parents=[common], help="root system data")
    s.add_argument("type")
    s.add_argument("--rank", type=int)
    s.set_defaults(func=cmd_root)

    s = sub.add_parser("elliptic", parents=[common], help="Weyl group and elliptic class counts")
    s.add_argument("type")
    s.add_argument("--rank", type=int)
    s.add_argument("--per-subsystem", action="store_true")
    s.set_defaults(func=cmd_elliptic)

    s = sub.add_parser("residual", parents=[common], help="generic residual points per pseudo-Levi")
    s.add_argument("type")
    s.add_argument("--subsystem")
    s.add_argument("--shuffle-seed", type=int)
    s.set_defaults(func=cmd_residual)

    for name, func, help_ in (("mass", cmd_mass, "mass function of a table row"),
                              ("sign", cmd_sign, "exact graded sign of a table row")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("type")
        s.add_argument("--b", required=True)
        s.add_argument("--at", default="k1=1,k2=1")
        if name == "mass":
            s.add_argument("--v", default="2")
            s.add_argument("--sign-only", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("reeder", parents=[common], help="equal-parameter formal-degree function")
    s.add_argument("type")
    s.add_argument("--b", required=True)
    s.add_argument("--q", default="2,3,5")
    s.set_defaults(func=cmd_reeder)

    s = sub.add_parser("cn", parents=[common], help="three-parameter C_n modules")
    s.add_argument("--n", type=int)
    s.add_argument("--params", default="1000,2,2")
    s.add_argument("--bp")
    s.add_argument("--ds", action="store_true")
    s.add_argument("--cc", action="store_true")
    s.add_argument("--restrict", action="store_true")
    s.set_defaults(func=cmd_cn)

    s = sub.add_parser("table", parents=[common], help="golden tables and reconciliation")
    s.add_argument("name")
    s.add_argument("--format", choices=("json", "csv", "md"))
    s.add_argument("--reconcile", action="store_true")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("accept", parents=[common], help="run the acceptance suite")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_accept)
    return p


def _flat_rows(result) -> list:
    """Best-effort list of flat dict rows for csv/md rendering."""
    for key in ("rows", "criteria", "modules", "pseudo_levis", "factors"):
        if isinstance(result, dict) and isinstance(result.get(key), list) and result[key]:
            return [{k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v
                     for k, v in r.items()} for r in result[key]]
    if isinstance(result, dict):
        return [{"key": k, "value": json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}
                for k, v in result.items()]
    return [{"value": result}]


def render(envelope: dict, fmt: str, command: str, args) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    if command == "table" and fmt in ("csv", "md"):
        from .tables import render_csv, render_md

        return (render_csv if fmt == "csv" else render_md)(args.name.lower())
    rows = _flat_rows(envelope["result"])
    header = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(r.get(h, "")) for h in header) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def run(argv=None) -> tuple:
    """Parse and execute; returns ``(exit_code, output_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        warnings: list = []
        result = args.func(args, warnings)
    except UsageError as exc:
        return 1, f"hecke: usage error: {exc}\n"
    except (ValueError, ArithmeticError, KeyError) as exc:
        msg = exc.args[0] if exc.args else type(exc).__name__
        return 2, f"hecke: precondition violated: {msg}\n"
    fmt = getattr(args, "format", None) or args.fmt or "json"
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "fmt")}
    envelope = {"schema_version": SCHEMA_VERSION, "command": args.command, "inputs": _jsonable(inputs),
                "result": _jsonable(result), "warnings": warnings}
    code = 0
    if args.command == "accept" and result["passed"] != result["total"]:
        code = 3
    return code, render(envelope, fmt, args.command, args)


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code in (0, 3) else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
