"""Recompute each shipped table and diff it against the fixtures."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import portraits as pt
from .curves import (FGAResult, canonical_cycle, check_obstruction, compute_fga, curve_from_word,
                     curve_name, fga_seeds, format_curve, parse_curve)
from .fixtures import FixtureBundle, RecursionRecord
from .moduli import (INF, Derivation, chordal, derive_recursion, fixed_points, is_inf,
                     mobius_from_permutation, rational_map)
from .nucleus import (ContractionReport, NucleusDiff, NucleusSet, compare_nuclei, compute_nucleus,
                      edge_listed, nucleus_from_text, symmetric_edges)
from .twist import Attractor, VirtualEndomorphism, canonical_word_cycle, compute_attractor
from .word import (ALPHA, Family, conjugate, format_word, parse_family, parse_member, parse_word,
                   power, same_family)
from .wreath import WreathRecursion, faithful_order, format_recursion, make_recursion


@dataclass(frozen=True)
class Settings:
    window: int = 8
    state_bound: int = 4096
    fga_bound: int = 512
    fga_iterations: int = 64
    compare_depth: int = 8
    order_window: int = 8
    fixed_point_tol: float = 1e-3
    residual_tol: float = 1e-9


DEFAULT = Settings()


@dataclass
class Check:
    name: str
    ok: bool
    detail: List[str] = field(default_factory=list)


# ---------------------------------------------------------------- per-row computations


@lru_cache(maxsize=None)
def _nucleus(alpha: str, beta: str, seed: str, window: int, state_bound: int):
    rec = _record_recursion(alpha, beta)
    return compute_nucleus(rec, [ALPHA, parse_word(seed)], window=window, bound=state_bound)


@lru_cache(maxsize=None)
def _record_recursion(alpha: str, beta: str) -> WreathRecursion:
    return make_recursion(alpha, beta)


def row_nucleus(record: RecursionRecord,
                settings: Settings = DEFAULT) -> Tuple[NucleusSet, ContractionReport]:
    return _nucleus(record.alpha, record.beta, record.seed, settings.window, settings.state_bound)


def nucleus_diff(record: RecursionRecord, settings: Settings = DEFAULT) -> NucleusDiff:
    N, _ = row_nucleus(record, settings)
    return compare_nuclei(record.recursion(), N, nucleus_from_text(record.nucleus),
                          settings.window, settings.compare_depth)


def check_nucleus(record: RecursionRecord, settings: Settings = DEFAULT) -> Check:
    d = nucleus_diff(record, settings)
    detail = [f"missing {m}" for m in d.missing] + [f"extra {e}" for e in d.extra]
    return Check(f"nucleus {record.id}", d.equal, detail)


# reference restriction chains of the contraction example, as (source, target)
CONTRACTION_CHAINS = (("a^2 b", "BAb"), ("BAb", "abb"), ("abab", "BAb"),
                      ("b^n a", "b^n BA"), ("BA b^n", "a b^n b"))
CONTRACTION_DEPTH = 3


def check_contraction_example(record: RecursionRecord, settings: Settings = DEFAULT) -> Check:
    _, report = row_nucleus(record, settings)
    edges = symmetric_edges(report.edges)
    reference = [(parse_member(s), parse_member(t)) for s, t in CONTRACTION_CHAINS]
    detail = []
    for s, t in reference:
        if not edge_listed((s, t), edges, settings.window):
            detail.append(f"missing {s} -> {t}")
    pub_edges = [(s, 0, t) for s, t in reference]
    for s, _, t in edges:
        if not edge_listed((s, t), pub_edges, settings.window):
            detail.append(f"extra {s} -> {t}")
    if report.k != CONTRACTION_DEPTH:
        detail.append(f"depth {report.k}, expected {CONTRACTION_DEPTH}")
    return Check(f"contraction {record.id}", not detail, detail)


def row_attractor(record: RecursionRecord, settings: Settings = DEFAULT) -> Attractor:
    N, _ = row_nucleus(record, settings)
    return compute_attractor(VirtualEndomorphism(record.recursion()), N, settings.window)


def check_attractor(record: RecursionRecord, entry: dict, settings: Settings = DEFAULT) -> Check:
    att = row_attractor(record, settings)
    got = {canonical_word_cycle(list(c)) for c in att.cycles}
    want = {canonical_word_cycle([parse_word(w) for w in c]) for c in entry["cycles"]}
    detail = [f"missing cycle {_cycle_text(c)}" for c in sorted(want - got, key=_cycle_text)]
    detail += [f"extra cycle {_cycle_text(c)}" for c in sorted(got - want, key=_cycle_text)]
    fams = [parse_family(f) for f in entry["families"]]
    for f in fams:
        if not any(_same(f, g) for g in att.families):
            detail.append(f"missing family {f}")
    for g in att.families:
        if not any(_same(f, g) for f in fams):
            detail.append(f"extra family {g}")
    return Check(f"attractor {record.id}", not detail, detail)


def _same(f: Family, g: Family) -> bool:
    return same_family(f, g)


def _cycle_text(c) -> str:
    return " -> ".join(format_word(w) for w in c)


def row_fga(record: RecursionRecord, settings: Settings = DEFAULT, coordinate: int = 1) -> FGAResult:
    N, _ = row_nucleus(record, settings)
    ve = VirtualEndomorphism(record.recursion(), coordinate)
    return compute_fga(ve, N, settings.fga_bound, settings.fga_iterations, settings.window)


def _curve_cycle_text(c) -> str:
    return " -> ".join(curve_name(x) for x in c)


def check_fga(record: RecursionRecord, entry: dict, settings: Settings = DEFAULT) -> Check:
    result = row_fga(record, settings)
    detail = []
    if result.closed != entry["closed"]:
        detail.append(f"closed {result.closed}, expected {entry['closed']}")
    if entry["closed"]:
        got = set(result.cycles)
        want = {canonical_cycle([parse_curve(n) for n in c]) for c in entry["cycles"]}
        detail += [f"missing cycle {_curve_cycle_text(c)}" for c in sorted(want - got, key=_curve_cycle_text)]
        detail += [f"extra cycle {_curve_cycle_text(c)}" for c in sorted(got - want, key=_curve_cycle_text)]
    else:
        detail += infinite_pattern_diff(result, entry["infinite"], settings.fga_iterations)
    return Check(f"fga {record.id}", not detail, detail)


def pattern_instances(pattern: dict, span: int) -> set:
    if pattern["core"] == "o":
        return {None}
    core = parse_word(pattern["core"])
    conj = parse_member(pattern["conjugator"])
    if isinstance(conj, Family):
        return {curve_from_word(conjugate(core, conj.at(n))) for n in range(-span, span + 1)}
    return {curve_from_word(conjugate(core, conj))}


def infinite_pattern_diff(result: FGAResult, patterns: List[dict], span: int) -> List[str]:
    """Every periodic curve found must fit a reference pattern."""
    allowed = set()
    for p in patterns:
        allowed |= pattern_instances(p, span)
    return [f"curve {format_curve(c)} fits no reference pattern"
            for c in result.curves() if c not in allowed]


def pattern_hits(result: FGAResult, patterns: List[dict], span: int) -> Dict[str, bool]:
    found = set(result.curves())
    return {f"{p['core']}^({p['conjugator']})": bool(pattern_instances(p, span) & found)
            for p in patterns}


# ---------------------------------------------------------------- g-maps and derivations


def gmap_rational(gmap: dict):
    return rational_map(gmap["numerator"], gmap["denominator"])


def nearest_fixed_point(gmap: dict, value: complex) -> Tuple[complex, float]:
    """Computed fixed point closest to ``value`` and its distance."""
    fps = [z for z in fixed_points(gmap_rational(gmap)) if not is_inf(z)]
    z = min(fps, key=lambda p: abs(p - value))
    return z, abs(z - value)


def check_fixed_points(gmap: dict, settings: Settings = DEFAULT) -> Check:
    g = gmap_rational(gmap)
    detail = []
    for fp in gmap["fixed_points"]:
        if fp["value"] is None:
            continue
        value = complex(*fp["value"])
        z, dist = nearest_fixed_point(gmap, value)
        residual = abs(g(z) - z)
        if dist > settings.fixed_point_tol:
            detail.append(f"{fp['label']}: nearest computed fixed point {z:.6f} is {dist:.2e} away")
        if residual >= settings.residual_tol:
            detail.append(f"{fp['label']}: residual {residual:.2e}")
    return Check(f"fixed points {gmap['id']}", not detail, detail)


def derive_row(bundle: FixtureBundle, record: RecursionRecord,
               signs: Tuple[int, int] = (1, 1)) -> Derivation:
    gmap = bundle.gmap(record.gmap)
    z0 = None if record.formal else nearest_fixed_point(gmap, record.value)[0]
    return derive_recursion(gmap_rational(gmap), mobius_from_permutation(gmap["mobius"]), z0, signs)


def check_derivation(bundle: FixtureBundle, record: RecursionRecord,
                     settings: Settings = DEFAULT, signs: Tuple[int, int] = (1, 1)) -> Check:
    d = derive_row(bundle, record, signs)
    detail = []
    if d.recursion != record.recursion():
        detail.append(f"derived {format_recursion(d.recursion)}")
    if d.residual >= settings.residual_tol:
        detail.append(f"lift residual {d.residual:.2e}")
    return Check(f"derive {record.id}", not detail, detail)


# ---------------------------------------------------------------- faithful orders


def check_orders(record: RecursionRecord, settings: Settings = DEFAULT,
                 whole_subgroup: bool = False) -> Check:
    """Faithful orders of sampled nucleus members lie in {1, 2, 4}.

    With ``whole_subgroup`` only members whose powers up to the window all
    stay in the nucleus are tested.
    """
    rec = record.recursion()
    N, _ = row_nucleus(record, settings)
    detail = []
    for w in N.sample(settings.order_window):
        if whole_subgroup and not all(power(w, j) in N for j in range(-8, 9)):
            continue
        k = faithful_order(rec, w, bound=4, state_bound=settings.state_bound)
        if k not in (1, 2, 4):
            detail.append(f"{format_word(w)} has order {'> 4' if k is None else k}")
    return Check(f"orders {record.id}", not detail, detail)


# ---------------------------------------------------------------- portraits


def check_portraits(bundle: FixtureBundle) -> List[Check]:
    data = bundle.portraits
    groups = {k: [pt.Portrait.from_edges(r["edges"]) for r in data[k]]
              for k in ("one_critical_postcritical", "two_critical_postcritical")}
    checks = []
    detail = []
    for key, rows in groups.items():
        for r, p in zip(data[key], rows):
            composite = pt.compose_portrait(bundle.gmap(r["gmap"]), r["slot"])
            if not pt.portraits_equivalent(composite, p):
                detail.append(f"{key} row {r['row']}: composite is {composite}")
    checks.append(Check("portraits as composites", not detail, detail))

    classes = pt.enumerate_q4(bundle.gmaps)
    one = [c for c in classes if c.critical_postcritical == 1]
    two = [c for c in classes if c.critical_postcritical == 2]
    detail = []
    if (len(one), len(two)) != (len(groups["one_critical_postcritical"]),
                                len(groups["two_critical_postcritical"])):
        detail.append(f"enumerated {len(one)} + {len(two)} classes")
    for cls, key in ((one, "one_critical_postcritical"), (two, "two_critical_postcritical")):
        if pt.match_rows(cls, groups[key]) is None:
            detail.append(f"{key}: enumeration does not match the rows one to one")
    checks.append(Check("portrait enumeration", not detail, detail))

    acts = data["actions"]
    ok = pt.postcompose_action_check(
        groups["one_critical_postcritical"], groups["two_critical_postcritical"],
        acts["one_critical_postcritical"]["mobius"], acts["two_critical_postcritical"]["mobius"],
        acts["one_critical_postcritical"]["shift"], acts["two_critical_postcritical"]["shift"])
    checks.append(Check("portrait actions", ok, [] if ok else ["row shift differs"]))
    return checks


# ---------------------------------------------------------------- obstructed families


def check_obstructed_family(bundle: FixtureBundle, entry, settings: Settings = DEFAULT) -> Check:
    """The family is fixed by the twisting extension on the listed row."""
    record = bundle.row(entry.row)
    fam = parse_family(entry.family)
    att = row_attractor(record, settings)
    detail = []
    if not any(_same(fam, g) for g in att.families):
        detail.append(f"{fam} is not a fixed family of {record.id}")
    try:
        pt.compose_portrait(bundle.gmap(entry.gmap), entry.slot)
    except pt.InvalidPortrait as exc:
        detail.append(str(exc))
    if bundle.gmap(entry.gmap)["id"] != record.gmap:
        detail.append(f"row {record.id} belongs to {record.gmap}, not {entry.gmap}")
    return Check(f"obstructed {entry.gmap} slot {entry.slot}", not detail, detail)


# ---------------------------------------------------------------- g-map portraits


LABEL_VALUES = {"0": 0j, "1": 1 + 0j, "1/2": 0.5 + 0j}


def _label_point(label: str) -> complex:
    return INF if label == "inf" else LABEL_VALUES[label]


def _spread(g, z: complex, eps: float) -> float:
    ring = [eps * cmath.exp(2j * math.pi * k / 8) for k in range(8)]
    points = [1.0 / r for r in ring] if is_inf(z) else [z + r for r in ring]
    return max(chordal(g(p), g(z)) for p in points)


def local_degree(g, z: complex, eps: float = 1e-3) -> int:
    """Numerical local degree: image circles shrink like eps at degree 1 and eps^2 at degree 2."""
    ratio = _spread(g, z, eps) / _spread(g, z, eps / 10)
    return 2 if math.log10(ratio) > 1.5 else 1


def check_gmap_portrait(gmap: dict) -> Check:
    """Images and local degrees of the recorded portrait agree with the map itself."""
    g = gmap_rational(gmap)
    detail = []
    for v, w, d in gmap["portrait"]:
        image = g(_label_point(v))
        if chordal(image, _label_point(w)) > 1e-12:
            detail.append(f"{v} maps to {image}, not {w}")
        deg = local_degree(g, _label_point(v))
        if deg != d:
            detail.append(f"{v} has local degree {deg}, recorded {d}")
    return Check(f"portrait of {gmap['id']}", not detail, detail)


# ---------------------------------------------------------------- obstructions


def row_obstruction(record: RecursionRecord, settings: Settings = DEFAULT):
    N, _ = row_nucleus(record, settings)
    ve = VirtualEndomorphism(record.recursion())
    return check_obstruction(ve, fga_seeds(ve, N, settings.window))


def check_obstruction_row(record: RecursionRecord, expected: Optional[str],
                          settings: Settings = DEFAULT) -> Check:
    """``expected`` is the certificate curve with multiplier one, or None for no certificate."""
    found = row_obstruction(record, settings)
    detail = []
    if expected is None and found is not None:
        detail.append(f"unexpected certificate {format_curve(found[0])}")
    if expected is not None:
        want = parse_curve(expected)
        if found is None:
            detail.append("no certificate found")
        elif found[0] != want or found[1] != 1:
            detail.append(f"certificate {format_curve(found[0])} with multiplier {found[1]}")
    return Check(f"obstruction {record.id}", not detail, detail)
