"""Self-similar actions of the free group on the binary rooted tree.

A wreath recursion assigns to each generator its two restrictions and a
permutation of the alphabet ``{1, 2}``.  Products follow the rule

    (u v)|x = u|x * v|pi_u(x),    pi_uv = pi_u pi_v,

so in a product the left factor acts first on tree vertices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .word import ONE, Word, format_word, invert, parse_word, power

DEFAULT_STATE_BOUND = 10_000


class StateBoundExceeded(RuntimeError):
    """The restriction closure of a word grew past the configured bound."""


@dataclass(frozen=True)
class WreathRecursion:
    alpha: Tuple[Word, Word]
    alpha_swaps: bool
    beta: Tuple[Word, Word]
    beta_swaps: bool

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.alpha, self.alpha_swaps, self.beta, self.beta_swaps)))

    def __hash__(self) -> int:
        return self._hash

    def generator(self, g: int) -> Tuple[Tuple[Word, Word], bool]:
        return (self.alpha, self.alpha_swaps) if g == 1 else (self.beta, self.beta_swaps)

    def __str__(self) -> str:
        return format_recursion(self)


def swap(x: int) -> int:
    return 3 - x


def perm_of(rec: WreathRecursion, w: Word) -> bool:
    """True when ``w`` swaps the two letters (the permutation sigma)."""
    flips = 0
    for x in w.letters:
        if (rec.alpha_swaps if abs(x) == 1 else rec.beta_swaps):
            flips ^= 1
    return bool(flips)


def perm_image(rec: WreathRecursion, w: Word, x: int) -> int:
    return swap(x) if perm_of(rec, w) else x


@lru_cache(maxsize=1 << 18)
def _restrict(rec: WreathRecursion, letters: Tuple[int, ...], x: int) -> Word:
    out = []
    pos = x
    for l in letters:
        (r, swaps) = rec.generator(abs(l))
        if l > 0:
            out.extend(r[pos - 1].letters)
            if swaps:
                pos = swap(pos)
        else:
            if swaps:
                pos = swap(pos)
            out.extend(invert(r[pos - 1]).letters)
    return Word(out)


def restrict(rec: WreathRecursion, w: Word, x: int) -> Word:
    if x not in (1, 2):
        raise ValueError(f"letter must be 1 or 2, got {x!r}")
    return _restrict(rec, w.letters, x)


def restrictions(rec: WreathRecursion, w: Word) -> Tuple[Word, Word]:
    return _restrict(rec, w.letters, 1), _restrict(rec, w.letters, 2)


def restrict_path(rec: WreathRecursion, w: Word, path) -> Word:
    for x in path:
        w = restrict(rec, w, int(x))
    return w


def act(rec: WreathRecursion, w: Word, vertex: str) -> str:
    """Image of a tree vertex (a string over ``12``) under ``w``."""
    out = []
    for ch in vertex:
        x = int(ch)
        if x not in (1, 2):
            raise ValueError(f"bad tree vertex {vertex!r}")
        out.append(str(perm_image(rec, w, x)))
        w = restrict(rec, w, x)
        if w.is_identity():
            out.extend(vertex[len(out):])
            break
    return "".join(out)


def restriction_closure(rec: WreathRecursion, w: Word, bound: int = DEFAULT_STATE_BOUND) -> set:
    seen = {w}
    todo = [w]
    while todo:
        u = todo.pop()
        for r in restrictions(rec, u):
            if r not in seen:
                seen.add(r)
                if len(seen) > bound:
                    raise StateBoundExceeded(
                        f"restriction closure of {format_word(w)} exceeds {bound} states")
                todo.append(r)
    return seen


def acts_trivially(rec: WreathRecursion, w: Word, bound: int = DEFAULT_STATE_BOUND) -> bool:
    # Greatest fixed point: w is trivial iff every state it reaches fixes both letters.
    return not any(perm_of(rec, s) for s in restriction_closure(rec, w, bound))


def faithful_order(rec: WreathRecursion, w: Word, bound: int = 16,
                   state_bound: int = DEFAULT_STATE_BOUND) -> Optional[int]:
    """Least ``k <= bound`` with ``w**k`` acting trivially, else ``None``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    for k in range(1, bound + 1):
        if acts_trivially(rec, power(w, k), state_bound):
            return k
    return None


# ---------------------------------------------------------------- text form

_REC = re.compile(r"<\s*(?P<r1>[^,>]*)\s*,\s*(?P<r2>[^,>]*)\s*>\s*(?P<s>s|sigma)?\s*$")


def parse_assignment(text: str) -> Tuple[Tuple[Word, Word], bool]:
    """Parse ``<r1, r2>`` or ``<r1, r2>s``."""
    m = _REC.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse generator assignment {text!r}")
    return (parse_word(m.group("r1")), parse_word(m.group("r2"))), bool(m.group("s"))


def make_recursion(alpha: str, beta: str) -> WreathRecursion:
    (ra, sa) = parse_assignment(alpha)
    (rb, sb) = parse_assignment(beta)
    return WreathRecursion(ra, sa, rb, sb)


def format_assignment(r: Tuple[Word, Word], swaps: bool) -> str:
    return f"<{format_word(r[0])},{format_word(r[1])}>" + ("s" if swaps else "")


def format_recursion(rec: WreathRecursion) -> str:
    return (f"a = {format_assignment(rec.alpha, rec.alpha_swaps)}, "
            f"b = {format_assignment(rec.beta, rec.beta_swaps)}")


def recursion_table(rec: WreathRecursion) -> Dict[str, str]:
    return {"alpha": format_assignment(rec.alpha, rec.alpha_swaps),
            "beta": format_assignment(rec.beta, rec.beta_swaps)}


def identity_recursion() -> WreathRecursion:
    return WreathRecursion((ONE, ONE), False, (ONE, ONE), False)
