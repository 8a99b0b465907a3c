"""Pullback of essential curves through the virtual endomorphism.

A curve is stored as the exact parabolic element ``w^-1 x w`` with core
``x`` one of ``a``, ``b`` or ``BA``.  Conjugate curves such as ``BA`` and
``AB`` (which is ``BA`` conjugated by ``a``) are different curves.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .nucleus import WINDOW, NucleusSet
from .twist import VirtualEndomorphism, phi
from .word import (ALPHA, BETA, GAMMA, Word, conjugate, cyclic_decompose, format_word,
                   invert, multiply, power, primitive_root)
from .wreath import perm_of

CORES = (ALPHA, BETA, GAMMA)
_CORE_NAMES = {ALPHA: "a", BETA: "b", GAMMA: "BA"}


class NotParabolic(ValueError):
    """The word is not a power of a conjugate of ``a``, ``b`` or ``BA``."""


@dataclass(frozen=True)
class Curve:
    core: Word
    conjugator: Word

    def element(self) -> Word:
        return conjugate(self.core, self.conjugator)

    def __str__(self) -> str:
        return format_curve(self)


# The curve class with no essential preimage.
NULL = None


def format_curve(c: Optional[Curve]) -> str:
    if c is None:
        return "o"
    name = _CORE_NAMES[c.core]
    if c.conjugator.is_identity():
        return name
    return f"{name}^({format_word(c.conjugator)})"


def curve_name(c: Optional[Curve]) -> str:
    """Short names for the curves that appear in attractor tables."""
    if c is None:
        return "o"
    if c.conjugator.is_identity():
        return {"a": "alpha", "b": "beta", "BA": "gamma"}[_CORE_NAMES[c.core]]
    if c.core == GAMMA and c.conjugator == ALPHA:
        return "delta"
    return format_curve(c)


def curve_from_word(u: Word) -> Curve:
    if u.is_identity():
        raise ValueError("the identity is not a curve")
    conj, core = cyclic_decompose(u)
    root, _ = primitive_root(core)
    for x in CORES:
        if root == x or root == invert(x):
            return Curve(x, conj)
    raise NotParabolic(f"{format_word(u)} is not parabolic of core type")


def parse_curve(text: str) -> Optional[Curve]:
    """Accept ``o`` (no essential preimage), the names alpha/beta/gamma/delta or a word."""
    from .word import parse_word
    t = text.strip()
    names = {"o": None, "alpha": ALPHA, "beta": BETA, "gamma": GAMMA,
             "delta": Word([-1, -2])}
    if t in names:
        return None if names[t] is None else curve_from_word(names[t])
    return curve_from_word(parse_word(t))


def phihat(ve: VirtualEndomorphism, w: Word) -> Word:
    image = phi(ve, w)
    if image is not None:
        return image
    return phi(ve, multiply(ALPHA, w))


@dataclass(frozen=True)
class Pullback:
    image: Optional[Curve]
    power: int
    multiplier: Fraction


def pullback_curve(ve: VirtualEndomorphism, c: Optional[Curve]) -> Pullback:
    if c is None:
        return Pullback(None, 1, Fraction(0))
    n = 2 if perm_of(ve.rec, c.core) else 1
    image = phi(ve, conjugate(power(c.core, n), c.conjugator))
    if image.is_identity():
        return Pullback(None, n, Fraction(0))
    return Pullback(curve_from_word(image), n, Fraction(1, n))


def mu(ve: VirtualEndomorphism, c: Optional[Curve]) -> Optional[Curve]:
    return pullback_curve(ve, c).image


def periodic_part(ve: VirtualEndomorphism, N: NucleusSet, window: int = WINDOW) -> List[Word]:
    """Sampled members of ``N`` that are periodic under ``phihat``."""
    out = set()
    for w in N.sample(window):
        seen = {}
        cur = w
        while cur not in seen:
            seen[cur] = len(seen)
            cur = phihat(ve, cur)
        start = seen[cur]
        out.update(x for x, i in seen.items() if i >= start)
    return sorted(out, key=Word.sort_key)


def fga_seeds(ve: VirtualEndomorphism, N: NucleusSet, window: int = WINDOW) -> List[Curve]:
    seeds = []
    seen = set()
    for w in periodic_part(ve, N, window):
        for x in CORES:
            c = curve_from_word(conjugate(x, w))
            if c not in seen:
                seen.add(c)
                seeds.append(c)
    return seeds


def _curve_key(c: Optional[Curve]):
    if c is None:
        return (0,)
    return (1, c.core.sort_key(), c.conjugator.sort_key())


def canonical_cycle(cycle: List[Optional[Curve]]) -> Tuple[Optional[Curve], ...]:
    i = min(range(len(cycle)), key=lambda j: _curve_key(cycle[j]))
    return tuple(cycle[i:] + cycle[:i])


@dataclass
class FGAResult:
    closed: bool
    cycles: List[Tuple[Optional[Curve], ...]]
    visited: int

    def curves(self) -> List[Optional[Curve]]:
        out = []
        for c in self.cycles:
            out.extend(c)
        return out

    def describe(self) -> List[str]:
        out = []
        for c in self.cycles:
            names = [curve_name(x) for x in c]
            if len(c) == 1:
                out.append(names[0])
            elif len(c) == 2:
                out.append(f"{names[0]} <-> {names[1]}")
            else:
                out.append(" -> ".join(names) + " -> " + names[0])
        return out


def _cycles_from(ve: VirtualEndomorphism, seeds: Iterable[Optional[Curve]], bound: int,
                 iterations: int) -> Tuple[set, int, bool]:
    cycles = {(None,)}
    visited = set()
    ok = True
    for s in seeds:
        path: Dict[Optional[Curve], int] = {}
        cur = s
        for _ in range(iterations + 1):
            if cur in path:
                break
            path[cur] = len(path)
            visited.add(cur)
            cur = mu(ve, cur)
        else:
            ok = False
            continue
        if len(visited) > bound:
            return cycles, len(visited), False
        start = path[cur]
        cycles.add(canonical_cycle([c for c, i in sorted(path.items(), key=lambda t: t[1]) if i >= start]))
    return cycles, len(visited), ok


def compute_fga(ve: VirtualEndomorphism, N: NucleusSet, bound: int = 512, iterations: int = 64,
                window: int = WINDOW) -> FGAResult:
    """Periodic cycles of the pullback on curves seeded by the periodic part of ``N``.

    Closure is judged by sampling ``N`` at two windows; if the set of cycles
    keeps growing with the window the attractor is reported as not closed.
    """
    small, _, ok_small = _cycles_from(ve, fga_seeds(ve, N, window), bound, iterations)
    wide_window = window + 4
    large, visited, ok_large = _cycles_from(ve, fga_seeds(ve, N, wide_window), bound, iterations)
    closed = ok_small and ok_large and small == large
    cycles = sorted(large, key=lambda c: (len(c), [_curve_key(x) for x in c]))
    return FGAResult(closed, cycles, visited)


def check_obstruction(ve: VirtualEndomorphism,
                      candidates: Iterable[Curve]) -> Optional[Tuple[Curve, Fraction]]:
    """First fixed candidate curve with multiplier at least one, if any."""
    for c in candidates:
        if c is None:
            continue
        r = pullback_curve(ve, c)
        if r.image == c and r.multiplier >= 1:
            return c, r.multiplier
    return None
