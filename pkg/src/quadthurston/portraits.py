"""Ramification portraits of quadratic maps with at most four postcritical points.

A portrait is the dynamics of a map on its critical and postcritical points,
with each vertex labelled by its local degree.  Portraits of maps with four
postcritical points are generated by postcomposing a map with three or fewer
postcritical points by a Moebius transformation that swaps a fixed point
(written ``*``) with one of ``0``, ``1``, ``inf``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

BULLET = "*"
SLOTS = ("0", "1", "inf")


class InvalidPortrait(ValueError):
    pass


@dataclass(frozen=True)
class Portrait:
    edges: Tuple[Tuple[str, str, int], ...]

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence]) -> "Portrait":
        out = tuple(sorted((str(v), str(w), int(d)) for v, w, d in edges))
        p = cls(out)
        p.validate()
        return p

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(v for v, _, _ in self.edges)

    def image(self, v: str) -> str:
        return self._table()[v][0]

    def degree(self, v: str) -> int:
        return self._table()[v][1]

    def _table(self) -> Dict[str, Tuple[str, int]]:
        return {v: (w, d) for v, w, d in self.edges}

    def critical(self) -> Tuple[str, ...]:
        return tuple(v for v, _, d in self.edges if d == 2)

    def postcritical(self) -> Tuple[str, ...]:
        return tuple(sorted(_forward_orbit(self._table(), [self.image(c) for c in self.critical()])))

    def validate(self) -> None:
        table = self._table()
        if len(table) != len(self.edges):
            raise InvalidPortrait("a vertex has more than one outgoing edge")
        for v, w, d in self.edges:
            if d not in (1, 2):
                raise InvalidPortrait(f"degree {d} at {v} is not 1 or 2")
            if w not in table:
                raise InvalidPortrait(f"edge {v} -> {w} leaves the vertex set")
        if len(self.critical()) != 2:
            raise InvalidPortrait("a quadratic portrait has exactly two critical vertices")
        closure = set(self.critical()) | set(self.postcritical())
        if closure != set(table):
            raise InvalidPortrait("vertex set is not the union of critical and postcritical points")

    def __str__(self) -> str:
        return format_portrait(self)


def _forward_orbit(table: Mapping[str, Tuple[str, int]], start: Iterable[str]) -> set:
    seen = set()
    todo = list(start)
    while todo:
        v = todo.pop()
        if v in seen:
            continue
        if v not in table:
            raise InvalidPortrait(f"orbit reaches {v}, whose image is unknown")
        seen.add(v)
        todo.append(table[v][0])
    return seen


def format_portrait(p: Portrait) -> str:
    return ", ".join(f"{v} -{d}-> {w}" for v, w, d in p.edges)


def parse_portrait(text: str) -> Portrait:
    edges = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            left, right = part.split("->")
            v, d = left.rsplit("-", 1)
            edges.append((v.strip(), right.strip(), int(d)))
        except ValueError as exc:
            raise InvalidPortrait(f"cannot parse portrait edge {part!r}") from exc
    return Portrait.from_edges(edges)


def portraits_equivalent(p: Portrait, q: Portrait) -> bool:
    """Search all degree-preserving bijections for one that conjugates ``p`` to ``q``."""
    pv, qv = p.vertices, q.vertices
    if len(pv) != len(qv):
        return False
    if sorted(p.degree(v) for v in pv) != sorted(q.degree(v) for v in qv):
        return False
    for perm in itertools.permutations(qv):
        h = dict(zip(pv, perm))
        if all(p.degree(v) == q.degree(h[v]) and h[p.image(v)] == q.image(h[v]) for v in pv):
            return True
    return False


def slot_permutation(slot: str) -> Dict[str, str]:
    """The permutation of ``{*, 0, 1, inf}`` induced by the Moebius map for ``slot``."""
    if slot not in SLOTS:
        raise InvalidPortrait(f"slot must be one of {SLOTS}, got {slot!r}")
    others = [s for s in SLOTS if s != slot]
    return {BULLET: slot, slot: BULLET, others[0]: others[1], others[1]: others[0]}


def gmap_table(gmap: Mapping) -> Dict[str, Tuple[str, int]]:
    """Dynamics of a g-map on its critical points, ``0``, ``1``, ``inf`` and a fixed ``*``."""
    table = {v: (w, int(d)) for v, w, d in gmap["portrait"]}
    for s in SLOTS:
        if s not in table:
            raise InvalidPortrait(f"g-map {gmap['id']} has no image recorded for {s}")
    table[BULLET] = (BULLET, 1)
    return table


def postcompose(table: Mapping[str, Tuple[str, int]], perm: Mapping[str, str]) -> Portrait:
    """Portrait of ``M o f`` where ``M`` permutes labels as ``perm`` (identity elsewhere)."""
    composed = {v: (perm.get(w, w), d) for v, (w, d) in table.items()}
    crit = [v for v, (_, d) in composed.items() if d == 2]
    post = _forward_orbit(composed, [composed[c][0] for c in crit])
    keep = set(crit) | post
    return Portrait.from_edges((v, composed[v][0], composed[v][1]) for v in keep)


def compose_portrait(gmap: Mapping, slot: str) -> Portrait:
    p = postcompose(gmap_table(gmap), slot_permutation(slot))
    if len(p.postcritical()) != 4:
        raise InvalidPortrait(
            f"{gmap['id']} with slot {slot} has {len(p.postcritical())} postcritical points, not 4")
    return p


def act(p: Portrait, perm: Mapping[str, str]) -> Portrait:
    return postcompose(p._table(), perm)


@dataclass
class PortraitClass:
    portrait: Portrait
    specs: List[Tuple[str, str]]
    critical_postcritical: int


def enumerate_q4(gmaps: Sequence[Mapping]) -> List[PortraitClass]:
    """All portraits arising from every g-map and slot, one representative per class.

    Specs whose composite does not have four postcritical points are dropped.
    Classes are listed in order of first appearance.
    """
    classes: List[PortraitClass] = []
    for g in gmaps:
        for slot in SLOTS:
            try:
                p = compose_portrait(g, slot)
            except InvalidPortrait:
                continue
            for c in classes:
                if portraits_equivalent(c.portrait, p):
                    c.specs.append((g["id"], slot))
                    break
            else:
                k = len(set(p.critical()) & set(p.postcritical()))
                classes.append(PortraitClass(p, [(g["id"], slot)], k))
    return classes


def match_rows(classes: Sequence[PortraitClass], rows: Sequence[Portrait]) -> Optional[List[int]]:
    """Index of the unique equivalent row for each class, or None if not a bijection."""
    out = []
    for c in classes:
        hits = [i for i, r in enumerate(rows) if portraits_equivalent(c.portrait, r)]
        if len(hits) != 1:
            return None
        out.append(hits[0])
    if sorted(out) != list(range(len(rows))):
        return None
    return out


def action_images(rows: Sequence[Portrait], perm: Mapping[str, str]) -> List[Optional[int]]:
    """For each row, the index of the row equivalent to its postcomposition by ``perm``."""
    out: List[Optional[int]] = []
    for p in rows:
        q = act(p, perm)
        hits = [i for i, r in enumerate(rows) if portraits_equivalent(q, r)]
        out.append(hits[0] if len(hits) == 1 else None)
    return out


def postcompose_action_check(one_crit: Sequence[Portrait], two_crit: Sequence[Portrait],
                             perm_one: Mapping[str, str], perm_two: Mapping[str, str],
                             shift_one: int = 3, shift_two: int = 2) -> bool:
    """Check that postcomposition shifts row ``i`` to ``i + shift`` modulo the row count."""
    for rows, perm, shift in ((one_crit, perm_one, shift_one), (two_crit, perm_two, shift_two)):
        n = len(rows)
        if action_images(rows, perm) != [(i + shift) % n for i in range(n)]:
            return False
    return True
