"""Reference tables shipped as JSON, with schema checks on load.

Layout of the fixture directory (``quadthurston/data`` by default)::

    gmaps.json       the seven maps with at most three postcritical points
    portraits.json   the thirteen portraits with four postcritical points
    recursions.json  wreath recursions and nuclei, one record per row
    attractors.json  attractors of the twisting problem and curve attractors
    obstructed.json  obstructed twist families
    deviations.json  checks known to disagree with the tables, with reasons
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from .word import WordSyntaxError, parse_member, parse_word
from .wreath import WreathRecursion, make_recursion

DATA_DIR = Path(__file__).with_name("data")
FILES = ("gmaps.json", "portraits.json", "recursions.json", "attractors.json", "obstructed.json")


class FixtureError(ValueError):
    """A fixture file is missing, malformed or violates its schema."""


class UnknownRow(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


@dataclass(frozen=True)
class RecursionRecord:
    row: int
    id: str
    gmap: str
    fixed_point: str
    value: Optional[complex]
    alpha: str
    beta: str
    nucleus: List[str]
    seed: str

    def recursion(self) -> WreathRecursion:
        return make_recursion(self.alpha, self.beta)

    @property
    def formal(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class ObstructedFamily:
    gmap: str
    slot: str
    row: int
    family: str


@dataclass
class FixtureBundle:
    gmaps: List[dict]
    portraits: dict
    recursions: List[RecursionRecord]
    attractors: Dict[int, dict]
    fga: Dict[int, dict]
    obstructed: List[ObstructedFamily]
    deviations: Dict[str, dict] = field(default_factory=dict)

    def gmap(self, label: str) -> dict:
        for g in self.gmaps:
            if label in (g["id"], g["name"]):
                return g
        raise UnknownRow(f"unknown g-map {label!r}; expected one of "
                         f"{', '.join(g['id'] for g in self.gmaps)}")

    def row(self, key: Union[str, int]) -> RecursionRecord:
        """Resolve a row by id (``q4-1m2z-sq``), number, or ``gmap@fixed-point`` label."""
        text = str(key).strip()
        for r in self.recursions:
            if text in (r.id, str(r.row), f"{r.gmap}@{r.fixed_point}"):
                return r
        raise UnknownRow(f"unknown row {text!r}; expected one of {', '.join(r.id for r in self.recursions)}")


def _read(path: Path):
    try:
        text = path.read_text()
    except OSError as exc:
        raise FixtureError(f"{path}: cannot read ({exc.strerror})") from exc
    if not text.strip():
        raise FixtureError(f"{path}: empty file")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: line {exc.lineno}: {exc.msg}") from exc


def _need(obj, keys: Sequence[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise FixtureError(f"{where}: expected an object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FixtureError(f"{where}: missing field(s) {', '.join(missing)}")


def _list(obj, key: str, where: str) -> list:
    _need(obj, [key], where)
    if not isinstance(obj[key], list) or not obj[key]:
        raise FixtureError(f"{where}: {key!r} must be a non-empty list")
    return obj[key]


def _complex(value, where: str) -> Optional[complex]:
    if value is None:
        return None
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(x, (int, float)) for x in value)):
        raise FixtureError(f"{where}: a complex value is written [re, im]")
    return complex(value[0], value[1])


def _words(texts, where: str) -> None:
    for t in texts:
        try:
            parse_member(t)
        except WordSyntaxError as exc:
            raise FixtureError(f"{where}: {exc}") from exc


def load_gmaps(path: Path) -> List[dict]:
    data = _read(path)
    out = []
    for i, g in enumerate(_list(data, "gmaps", str(path))):
        where = f"{path}: gmap {i + 1}"
        _need(g, ["id", "name", "numerator", "denominator", "mobius", "portrait", "fixed_points"], where)
        for key in ("numerator", "denominator"):
            if len(g[key]) != 3:
                raise FixtureError(f"{where}: {key} needs three coefficients [z^2, z, 1]")
        for e in g["portrait"]:
            if len(e) != 3 or e[2] not in (1, 2):
                raise FixtureError(f"{where}: portrait edge {e!r} is not [v, w, 1|2]")
        for fp in g["fixed_points"]:
            _need(fp, ["label", "value"], where)
            _complex(fp["value"], where)
        out.append(g)
    return out


def load_portraits(path: Path) -> dict:
    data = _read(path)
    for key in ("one_critical_postcritical", "two_critical_postcritical"):
        for i, r in enumerate(_list(data, key, str(path))):
            _need(r, ["row", "gmap", "slot", "edges"], f"{path}: {key} row {i + 1}")
    _need(data, ["actions"], str(path))
    return data


def load_recursions(path: Path) -> List[RecursionRecord]:
    data = _read(path)
    out = []
    for i, r in enumerate(_list(data, "records", str(path))):
        where = f"{path}: record {i + 1}"
        _need(r, ["row", "id", "gmap", "fixed_point", "value", "alpha", "beta", "nucleus", "seed"], where)
        try:
            make_recursion(r["alpha"], r["beta"])
            parse_word(r["seed"])
        except (ValueError, WordSyntaxError) as exc:
            raise FixtureError(f"{where}: {exc}") from exc
        _words(r["nucleus"], where)
        out.append(RecursionRecord(int(r["row"]), r["id"], r["gmap"], r["fixed_point"],
                                   _complex(r["value"], where), r["alpha"], r["beta"],
                                   list(r["nucleus"]), r["seed"]))
    ids = [r.id for r in out]
    if len(set(ids)) != len(ids):
        raise FixtureError(f"{path}: duplicate row ids")
    return out


def load_attractors(path: Path):
    data = _read(path)
    attractors, fga = {}, {}
    for i, r in enumerate(_list(data, "attractors", str(path))):
        where = f"{path}: attractor {i + 1}"
        _need(r, ["row", "cycles", "families"], where)
        _words([w for c in r["cycles"] for w in c] + r["families"], where)
        attractors[int(r["row"])] = r
    for i, r in enumerate(_list(data, "fga", str(path))):
        _need(r, ["row", "closed", "cycles"], f"{path}: fga {i + 1}")
        fga[int(r["row"])] = r
    return attractors, fga


def load_obstructed(path: Path) -> List[ObstructedFamily]:
    data = _read(path)
    out = []
    for i, r in enumerate(_list(data, "records", str(path))):
        where = f"{path}: record {i + 1}"
        _need(r, ["gmap", "slot", "row", "family"], where)
        _words([r["family"]], where)
        out.append(ObstructedFamily(r["gmap"], r["slot"], int(r["row"]), r["family"]))
    return out


def load_deviations(path: Path) -> Dict[str, dict]:
    """Known disagreements keyed by check name; a missing file means none."""
    if not path.exists():
        return {}
    data = _read(path)
    out = {}
    for i, r in enumerate(_list(data, "deviations", str(path))):
        _need(r, ["check", "detail", "reason"], f"{path}: deviation {i + 1}")
        out[r["check"]] = r
    return out


def load_fixtures(path: Union[str, Path, None] = None) -> FixtureBundle:
    root = DATA_DIR if path is None else Path(path)
    if not root.is_dir():
        raise FixtureError(f"{root}: fixture directory not found")
    attractors, fga = load_attractors(root / "attractors.json")
    bundle = FixtureBundle(
        gmaps=load_gmaps(root / "gmaps.json"),
        portraits=load_portraits(root / "portraits.json"),
        recursions=load_recursions(root / "recursions.json"),
        attractors=attractors,
        fga=fga,
        obstructed=load_obstructed(root / "obstructed.json"),
        deviations=load_deviations(root / "deviations.json"),
    )
    rows = {r.row for r in bundle.recursions}
    for n in list(attractors) + list(fga) + [t.row for t in bundle.obstructed]:
        if n not in rows:
            raise FixtureError(f"{root}: attractor or obstruction record refers to row {n}, which has no recursion record")
    return bundle
