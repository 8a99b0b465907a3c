"""The twisting problem: the virtual endomorphism, its total extension and attractors.

For a recursion whose ``a`` has trivial first coordinate, the extension
``phibar`` sends every element either to one of its restrictions or to
``a`` times one, so orbits fall into ``N | aN`` where ``N`` is the nucleus.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .nucleus import NucleusSet, WINDOW
from .word import ALPHA, Family, Word, format_word, invert, make_family, multiply
from .wreath import WreathRecursion, perm_of, restrict

ALPHA_INV = invert(ALPHA)


class OrbitCapExceeded(RuntimeError):
    """A phibar orbit did not close within the iteration cap."""


@dataclass(frozen=True)
class VirtualEndomorphism:
    rec: WreathRecursion
    coordinate: int = 1

    def __post_init__(self):
        if self.coordinate not in (1, 2):
            raise ValueError(f"coordinate must be 1 or 2, got {self.coordinate!r}")

    def in_domain(self, w: Word) -> bool:
        return not perm_of(self.rec, w)


def phi(ve: VirtualEndomorphism, w: Word) -> Optional[Word]:
    """Restriction at the chosen coordinate, defined only when ``w`` fixes both letters."""
    if perm_of(ve.rec, w):
        return None
    return restrict(ve.rec, w, ve.coordinate)


def phibar(ve: VirtualEndomorphism, w: Word) -> Word:
    image = phi(ve, w)
    if image is not None:
        return image
    return multiply(ALPHA, phi(ve, multiply(w, ALPHA_INV)))


def phibar_by_cases(ve: VirtualEndomorphism, w: Word) -> Tuple[Word, Word]:
    """``phibar(w)`` computed twice from restrictions alone.

    The first value reads ``w`` directly as ``<h1,h2>`` or ``<h1,h2>s``; the
    second writes ``w = a h`` and uses the restrictions of ``h``.  Both
    require ``a|1 = 1`` and the first coordinate.
    """
    rec = ve.rec
    h = multiply(ALPHA_INV, w)
    if perm_of(rec, w):
        direct = multiply(ALPHA, restrict(rec, w, 1))
        shifted = multiply(ALPHA, restrict(rec, h, 2))
    else:
        direct = restrict(rec, w, 1)
        shifted = restrict(rec, h, 2)
    return direct, shifted


def orbit_cap(w: Word) -> int:
    return 4 * len(w) + 64


def phibar_orbit(ve: VirtualEndomorphism, w: Word,
                 max_iter: Optional[int] = None) -> Tuple[List[Word], List[Word]]:
    """Iterate until a repeat; return ``(tail, cycle)``."""
    cap = orbit_cap(w) if max_iter is None else max_iter
    if cap < 1:
        raise ValueError("max_iter must be at least 1")
    seen: Dict[Word, int] = {}
    path: List[Word] = []
    cur = w
    for _ in range(cap + 1):
        if cur in seen:
            i = seen[cur]
            return path[:i], path[i:]
        seen[cur] = len(path)
        path.append(cur)
        cur = phibar(ve, cur)
    raise OrbitCapExceeded(f"orbit of {format_word(w)} did not close within {cap} steps")


def canonical_word_cycle(cycle: List[Word]) -> Tuple[Word, ...]:
    i = min(range(len(cycle)), key=lambda j: cycle[j].sort_key())
    return tuple(cycle[i:] + cycle[:i])


@dataclass
class Attractor:
    cycles: List[Tuple[Word, ...]] = field(default_factory=list)
    families: List[Family] = field(default_factory=list)

    def family_of(self, w: Word) -> Optional[Tuple[Family, int]]:
        for f in self.families:
            n = f.match(w)
            if n is not None:
                return f, n
        return None

    def cycle_of(self, w: Word) -> Optional[Tuple[Word, ...]]:
        for c in self.cycles:
            if w in c:
                return c
        return None

    def contains(self, w: Word) -> bool:
        return self.cycle_of(w) is not None or self.family_of(w) is not None

    def describe(self) -> List[str]:
        out = []
        for c in self.cycles:
            out.append(" -> ".join(format_word(w) for w in c) + (" (fixed)" if len(c) == 1 else ""))
        for f in self.families:
            out.append(f"{f} (fixed for all n)")
        return out


def _family_pieces(rec: WreathRecursion, f: Family) -> List[Family]:
    if not perm_of(rec, f.base):
        return [f]
    k2 = multiply(f.base, f.base)
    return [make_family(f.prefix, k2, f.suffix), make_family(multiply(f.prefix, f.base), k2, f.suffix)]


def _fixed_family(ve: VirtualEndomorphism, f: Family, window: int) -> bool:
    ns = list(range(-window, window + 1)) + [-(window + 4), window + 4]
    return all(phibar(ve, f.at(n)) == f.at(n) for n in ns)


def compute_attractor(ve: VirtualEndomorphism, N: NucleusSet, window: int = WINDOW) -> Attractor:
    """Periodic points of ``phibar`` on ``N | aN``.

    A family all of whose sampled members are fixed is reported as a fixed
    family, checked at two exponents beyond the window.  Other periodic
    points are reported as cycles.
    """
    rec = ve.rec
    fams: List[Family] = []
    for f in N.families:
        for g in (f, make_family(multiply(ALPHA, f.prefix), f.base, f.suffix)):
            for piece in _family_pieces(rec, g):
                if _fixed_family(ve, piece, window) and not any(h == piece for h in fams):
                    fams.append(piece)
    # merge parity pieces back when both halves are fixed
    merged: List[Family] = []
    for f in fams:
        whole = make_family(f.prefix, _root_base(f.base), f.suffix)
        if _fixed_family(ve, whole, window):
            if not any(h == whole for h in merged):
                merged.append(whole)
        elif not any(h == f for h in merged):
            merged.append(f)
    seeds = N.sample(window)
    seeds = seeds + [multiply(ALPHA, w) for w in seeds]
    cycles = set()
    for w in seeds:
        _, cyc = phibar_orbit(ve, w)
        cycles.add(canonical_word_cycle(cyc))
    att = Attractor(families=merged)
    for c in sorted(cycles, key=lambda c: (len(c), [w.sort_key() for w in c])):
        if len(c) == 1 and att.family_of(c[0]) is not None:
            continue
        att.cycles.append(c)
    return att


def _root_base(k: Word) -> Word:
    from .word import primitive_root
    return primitive_root(k)[0]


@dataclass
class TwistResult:
    label: str
    kind: str                       # "cycle" or "family"
    cycle: Tuple[Word, ...] = ()
    family: Optional[Family] = None
    exponent: Optional[int] = None
    trace: List[Word] = field(default_factory=list)


def twist_solve(ve: VirtualEndomorphism, attractor: Attractor, h: Word,
                prefix: Optional[Word] = None, max_iter: Optional[int] = None) -> TwistResult:
    """Follow ``phibar`` from ``h`` (or ``prefix * h``) into the attractor."""
    w = multiply(prefix, h) if prefix is not None else h
    cap = orbit_cap(w) if max_iter is None else max_iter
    trace = [w]
    for _ in range(cap + 1):
        fam = attractor.family_of(w)
        if fam is not None:
            f, n = fam
            return TwistResult(f"{f} at n = {n}", "family", family=f, exponent=n, trace=trace)
        cyc = attractor.cycle_of(w)
        if cyc is not None:
            label = format_word(w) if len(cyc) == 1 else " <-> ".join(format_word(x) for x in cyc)
            return TwistResult(label, "cycle", cycle=cyc, trace=trace)
        w = phibar(ve, w)
        trace.append(w)
    raise OrbitCapExceeded(f"twist of {format_word(trace[0])} did not reach the attractor in {cap} steps")


def equivalence_identity_check(rec: WreathRecursion, u: Word, v: Word, c: Word) -> bool:
    """Check that ``u = <c, c>`` with trivial permutation.

    In that case ``f . u v c^-1`` is conjugate to ``f . v`` for every ``v``,
    since ``u`` lifts through ``f`` to ``c`` along both preimages.
    """
    del v  # the identity holds uniformly in v
    if perm_of(rec, u):
        return False
    return restrict(rec, u, 1) == c and restrict(rec, u, 2) == c
