"""Command-line frontend.

Every command builds a report (a plain dict), prints it as text or, with
``--json``, as sorted JSON, and exits 0 on success or match, 1 on a
verified mismatch and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import configparser
import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import portraits as pt
from . import tables
from .curves import curve_name
from .fixtures import FixtureBundle, FixtureError, RecursionRecord, UnknownRow, load_fixtures
from .moduli import (LiftError, TangentialCrossing, calibrate, derive_recursion, fixed_points,
                     is_inf, mobius_from_permutation)
from .nucleus import format_items, symmetric_edges
from .tables import Check, Settings
from .twist import OrbitCapExceeded, VirtualEndomorphism, compute_attractor, twist_solve
from .word import WordSyntaxError, format_word, parse_word
from .wreath import format_assignment, format_recursion

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
CALIBRATION_ROW = "q4-1m2z-sq"


class UsageError(Exception):
    """Bad input on the command line; reported with exit status 2."""


class ConfigError(UsageError):
    pass


# ---------------------------------------------------------------- config


def load_config(path: Optional[str]) -> Settings:
    """Read ``key = value`` lines into :class:`Settings`; unknown keys are errors."""
    if path is None:
        return tables.DEFAULT
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path} ({exc.strerror})") from exc
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string("[settings]\n" + text, source=path)
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise ConfigError(f"config: {path}: line {lineno - 1}: expected key = value, got {line}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"config: {path}: {exc.message.splitlines()[0]}") from exc
    types = {f.name: type(f.default) for f in dataclasses.fields(Settings)}
    values = {}
    for key, raw in parser["settings"].items():
        if key not in types:
            raise ConfigError(f"config: {path}: unknown key {key!r}; known keys are {', '.join(types)}")
        try:
            values[key] = types[key](raw)
        except ValueError as exc:
            raise ConfigError(f"config: {path}: {key} = {raw!r} is not a valid {types[key].__name__}") from exc
    return dataclasses.replace(tables.DEFAULT, **values)


# ---------------------------------------------------------------- formatting


def fmt_complex(z: complex, digits: int = 6) -> str:
    if is_inf(z):
        return "inf"
    re = round(z.real, digits) + 0.0
    im = round(z.imag, digits) + 0.0
    return f"{re:.{digits}f}{im:+.{digits}f}i"


def parse_complex(text: str) -> Optional[complex]:
    """``re,im`` or a bare real; ``formal`` stands for the formal z^2 setup."""
    t = text.strip()
    if t == "formal":
        return None
    parts = t.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"malformed complex number {text!r}; write it as re,im")


def parse_cli_word(text: str, what: str = "word"):
    try:
        return parse_word(text)
    except WordSyntaxError as exc:
        raise UsageError(f"malformed {what} {text!r}: {exc}") from exc


def render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {_scalar(v)}" for v in value)
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {_scalar(v)}" for k, v in value.items())
        else:
            lines.append(f"{key}: {_scalar(value)}")
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, (list, tuple)):
        return ", ".join(_scalar(x) for x in v)
    if isinstance(v, dict):
        return "; ".join(f"{k}: {_scalar(x)}" for k, x in v.items())
    if v is None:
        return "none"
    return str(v)


# ---------------------------------------------------------------- commands


Result = Tuple[dict, int]


def _row(bundle: FixtureBundle, key: str) -> RecursionRecord:
    return bundle.row(key)


def _header(record: RecursionRecord) -> dict:
    return {"row": record.id, "gmap": record.gmap, "fixed point": record.fixed_point,
            "recursion": format_recursion(record.recursion())}


def _diff(check: Check) -> dict:
    return {"check": check.name, "status": "match" if check.ok else "mismatch", "detail": check.detail}


def cmd_nucleus(args, bundle: FixtureBundle, settings: Settings) -> Result:
    record = _row(bundle, args.row)
    N, report = tables.row_nucleus(record, settings)
    out = _header(record)
    out["members"] = format_items(N)
    out["contraction"] = {"status": report.status, "k": report.k}
    out["restriction chains"] = [f"{s} -{x}-> {t}" for s, x, t in symmetric_edges(report.edges)]
    status = EXIT_OK
    if args.verify:
        check = tables.check_nucleus(record, settings)
        out["verify"] = _diff(check)
        status = EXIT_OK if check.ok else EXIT_MISMATCH
    return out, status


def cmd_twist(args, bundle: FixtureBundle, settings: Settings) -> Result:
    if args.verify_attractors:
        rows = [args.row] if args.row else sorted(bundle.attractors)
        checks = []
        for key in rows:
            record = _row(bundle, key)
            if record.row not in bundle.attractors:
                raise UsageError(f"row {record.id} has no attractor record")
            checks.append(tables.check_attractor(record, bundle.attractors[record.row], settings))
        out = {"verify": [_diff(c) for c in checks]}
        return out, EXIT_OK if all(c.ok for c in checks) else EXIT_MISMATCH
    if not args.row or args.word is None:
        raise UsageError("twist needs --row and --word (or --verify-attractors)")
    record = _row(bundle, args.row)
    h = parse_cli_word(args.word)
    prefix = parse_cli_word(args.prefix, "prefix") if args.prefix is not None else None
    N, _ = tables.row_nucleus(record, settings)
    ve = VirtualEndomorphism(record.recursion(), args.coordinate)
    att = compute_attractor(ve, N, settings.window)
    result = twist_solve(ve, att, h, prefix)
    out = _header(record)
    out["coordinate"] = args.coordinate
    out["word"] = format_word(h)
    if prefix is not None:
        out["prefix"] = format_word(prefix)
    out["trace"] = " -> ".join(format_word(w) for w in result.trace)
    out["label"] = format_word(result.trace[-1])
    if result.kind == "family":
        out["attractor"] = f"{result.family} at n = {result.exponent}"
    else:
        out["attractor"] = " -> ".join(format_word(w) for w in result.cycle)
    return out, EXIT_OK


def cmd_fga(args, bundle: FixtureBundle, settings: Settings) -> Result:
    record = _row(bundle, args.row)
    result = tables.row_fga(record, settings, args.coordinate)
    out = _header(record)
    out["coordinate"] = args.coordinate
    out["closed"] = result.closed
    out["curves visited"] = result.visited
    if result.closed:
        out["cycles"] = result.describe()
    else:
        out["sampled periodic curves"] = [" -> ".join(curve_name(c) for c in cyc)
                                          for cyc in result.cycles]
    status = EXIT_OK
    if args.verify:
        if record.row not in bundle.fga:
            raise UsageError(f"row {record.id} has no attractor record")
        if args.coordinate != 1:
            raise UsageError("--verify compares the first coordinate only")
        check = tables.check_fga(record, bundle.fga[record.row], settings)
        out["verify"] = _diff(check)
        status = EXIT_OK if check.ok else EXIT_MISMATCH
    return out, status


def cmd_obstruction(args, bundle: FixtureBundle, settings: Settings) -> Result:
    record = _row(bundle, args.row)
    found = tables.row_obstruction(record, settings)
    out = _header(record)
    if found is None:
        out["certificate"] = "none found"
    else:
        curve, multiplier = found
        out["certificate"] = curve_name(curve)
        out["multiplier"] = str(multiplier)
    return out, EXIT_OK


def cmd_portraits(args, bundle: FixtureBundle, settings: Settings) -> Result:
    if args.verify_actions:
        checks = tables.check_portraits(bundle)
        out = {"verify": [_diff(c) for c in checks]}
        return out, EXIT_OK if all(c.ok for c in checks) else EXIT_MISMATCH
    classes = pt.enumerate_q4(bundle.gmaps)
    out = {"classes": len(classes), "portraits": []}
    for i, c in enumerate(classes, 1):
        specs = " | ".join(f"{g} slot {s}" for g, s in c.specs)
        out["portraits"].append(f"{i} [{c.critical_postcritical} critical postcritical] "
                                f"{pt.format_portrait(c.portrait)}  <= {specs}")
    return out, EXIT_OK


def _calibration(bundle: FixtureBundle) -> Tuple[int, int]:
    anchor = bundle.row(CALIBRATION_ROW)
    gmap = bundle.gmap(anchor.gmap)
    z0 = tables.nearest_fixed_point(gmap, anchor.value)[0]
    signs = calibrate(tables.gmap_rational(gmap), mobius_from_permutation(gmap["mobius"]), z0,
                      anchor.recursion())
    if signs is None:
        raise LiftError(f"no generator orientation reproduces {CALIBRATION_ROW}")
    return signs


def cmd_derive(args, bundle: FixtureBundle, settings: Settings) -> Result:
    if args.row:
        record = _row(bundle, args.row)
        gmap = bundle.gmap(record.gmap)
        target = record.value
    else:
        if not args.gmap or args.fixed_point is None:
            raise UsageError("derive needs --row, or --gmap with --fixed-point")
        gmap = bundle.gmap(args.gmap)
        target = parse_complex(args.fixed_point)
        record = None
    g = tables.gmap_rational(gmap)
    if target is None:
        if gmap["id"] != "z-sq":
            raise UsageError("the formal setup exists only for z-sq")
        z0 = None
    else:
        finite = [z for z in fixed_points(g) if not is_inf(z)]
        z0 = min(finite, key=lambda z: abs(z - target))
        if abs(z0 - target) > settings.fixed_point_tol:
            raise UsageError(f"{fmt_complex(target)} is not within {settings.fixed_point_tol} "
                             f"of a fixed point of {gmap['id']}")
    if record is None and args.verify:
        record = _record_for(bundle, gmap["id"], z0, settings)
    signs = _calibration(bundle)
    d = derive_recursion(g, mobius_from_permutation(gmap["mobius"]), z0, signs)
    out = {"gmap": gmap["id"], "fixed point": "formal" if z0 is None else fmt_complex(z0),
           "calibration": f"generator signs {signs} fixed on {CALIBRATION_ROW}",
           "alpha": format_assignment(d.recursion.alpha, d.recursion.alpha_swaps),
           "beta": format_assignment(d.recursion.beta, d.recursion.beta_swaps),
           "lift residual": f"{d.residual:.1e}",
           "residual ok": d.residual < settings.residual_tol}
    status = EXIT_OK
    if args.verify:
        same = d.recursion == record.recursion() and d.residual < settings.residual_tol
        out["verify"] = {"row": record.id, "status": "match" if same else "mismatch",
                         "reference": format_recursion(record.recursion())}
        status = EXIT_OK if same else EXIT_MISMATCH
    return out, status


def _record_for(bundle: FixtureBundle, gmap_id: str, z0: Optional[complex],
                settings: Settings) -> RecursionRecord:
    for r in bundle.recursions:
        if r.gmap != gmap_id:
            continue
        if z0 is None and r.formal:
            return r
        if z0 is not None and not r.formal and abs(r.value - z0) <= settings.fixed_point_tol:
            return r
    raise UsageError(f"no reference row for {gmap_id} at this fixed point")


# ---------------------------------------------------------------- verify-tables


GROUPS = ("gmaps", "portraits", "recursions", "attractors", "obstructed")


def table_checks(bundle: FixtureBundle, settings: Settings, groups: Sequence[str]) -> List[Check]:
    checks: List[Check] = []
    if "gmaps" in groups:
        for g in bundle.gmaps:
            checks.append(tables.check_gmap_portrait(g))
            checks.append(tables.check_fixed_points(g, settings))
    if "portraits" in groups:
        checks.extend(tables.check_portraits(bundle))
    if "recursions" in groups:
        for r in bundle.recursions:
            checks.append(tables.check_nucleus(r, settings))
            checks.append(tables.check_orders(r, settings, whole_subgroup=True))
        checks.append(tables.check_contraction_example(bundle.row("q4-inv-z-sq-lower"), settings))
        signs = _calibration(bundle)
        for r in bundle.recursions:
            checks.append(tables.check_derivation(bundle, r, settings, signs))
    if "attractors" in groups:
        for n, entry in sorted(bundle.attractors.items()):
            checks.append(tables.check_attractor(bundle.row(n), entry, settings))
        for n, entry in sorted(bundle.fga.items()):
            checks.append(tables.check_fga(bundle.row(n), entry, settings))
        checks.append(tables.check_obstruction_row(bundle.row("q4-z-sq"), "beta", settings))
        checks.append(tables.check_obstruction_row(bundle.row("q4-1m2z-sq"), None, settings))
    if "obstructed" in groups:
        for entry in bundle.obstructed:
            checks.append(tables.check_obstructed_family(bundle, entry, settings))
    return checks


def classify(check: Check, bundle: FixtureBundle) -> str:
    if check.ok:
        return "PASS"
    known = bundle.deviations.get(check.name)
    if known is not None and known["detail"] == check.detail:
        return "DEVIATION"
    return "FAIL"


def cmd_verify_tables(args, bundle: FixtureBundle, settings: Settings) -> Result:
    groups = GROUPS if args.all or not args.table else args.table
    checks = table_checks(bundle, settings, groups)
    lines, counts = [], {"PASS": 0, "DEVIATION": 0, "FAIL": 0}
    for c in checks:
        status = classify(c, bundle)
        counts[status] += 1
        line = f"{status} {c.name}"
        if status == "DEVIATION":
            line += f" ({bundle.deviations[c.name]['reason']})"
        elif status == "FAIL":
            line += f" ({'; '.join(c.detail)})"
        lines.append(line)
    out = {"checks": lines, "summary": counts}
    bad = counts["FAIL"] + (counts["DEVIATION"] if args.strict else 0)
    return out, EXIT_MISMATCH if bad else EXIT_OK


# ---------------------------------------------------------------- parser and entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadthurston",
                                description="Nuclei, twisting, curve attractors and recursions "
                                            "for quadratic maps with four postcritical points.")
    p.add_argument("--fixtures", help="fixture directory (default: the shipped tables)")
    p.add_argument("--config", help="key = value file overriding numeric settings")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--timing", action="store_true", help="print elapsed time on stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("nucleus", help="compute the nucleus of a row")
    s.add_argument("--row", required=True)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_nucleus)

    s = sub.add_parser("twist", help="follow the twisting extension into the attractor")
    s.add_argument("--row")
    s.add_argument("--word")
    s.add_argument("--prefix")
    s.add_argument("--coordinate", type=int, choices=(1, 2), default=1)
    s.add_argument("--verify-attractors", action="store_true")
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("fga", help="finite global attractor of the curve pullback")
    s.add_argument("--row", required=True)
    s.add_argument("--coordinate", type=int, choices=(1, 2), default=1)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_fga)

    s = sub.add_parser("obstruction", help="search the attractor seeds for an obstructing curve")
    s.add_argument("--row", required=True)
    s.set_defaults(func=cmd_obstruction)

    s = sub.add_parser("portraits", help="enumerate portraits or verify the postcomposition actions")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--verify-actions", action="store_true")
    s.set_defaults(func=cmd_portraits)

    s = sub.add_parser("derive", help="derive a wreath recursion by lifting loops")
    s.add_argument("--row")
    s.add_argument("--gmap")
    s.add_argument("--fixed-point", help="re,im or formal")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("verify-tables", help="recompute the reference tables and diff them")
    s.add_argument("--all", action="store_true")
    s.add_argument("--table", action="append", choices=GROUPS)
    s.add_argument("--strict", action="store_true", help="count known deviations as failures")
    s.set_defaults(func=cmd_verify_tables)
    return p


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        settings = load_config(args.config)
        bundle = load_fixtures(args.fixtures)
        report, status = args.func(args, bundle, settings)
    except ConfigError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except UnknownRow as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except FixtureError as exc:
        print(f"error: fixtures: {exc}", file=err)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (LiftError, TangentialCrossing, OrbitCapExceeded) as exc:
        print(f"error: computation failed: {exc}", file=err)
        return EXIT_MISMATCH
    report = {"command": " ".join(["quadthurston", *argv]), **report}
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        print(render_text(report), file=out)
    if args.timing:
        print(f"elapsed {time.perf_counter() - start:.2f}s", file=err)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
