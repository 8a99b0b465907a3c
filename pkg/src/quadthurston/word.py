"""Reduced words in the free group on two generators ``a`` and ``b``.

Letters are stored as signed integers: ``1`` is ``a``, ``-1`` is ``A``
(the inverse of ``a``), ``2`` is ``b`` and ``-2`` is ``B``.  The text form
uses exactly those four characters, with ``1`` for the identity.
"""
from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

A, B = 1, 2
_CHARS = {1: "a", -1: "A", 2: "b", -2: "B"}
_LETTERS = {v: k for k, v in _CHARS.items()}
# a < A < b < B
_ORDER = {1: 0, -1: 1, 2: 2, -2: 3}


class WordSyntaxError(ValueError):
    pass


def _free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    out: list = []
    for x in letters:
        if x not in _CHARS:
            raise WordSyntaxError(f"bad letter {x!r}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    """An immutable freely reduced word."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[int] = ()):
        self.letters = _free_reduce(letters)
        self._hash = hash(self.letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def sort_key(self):
        """Shortlex key under a < A < b < B."""
        return (len(self.letters), tuple(_ORDER[x] for x in self.letters))

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


ONE = Word()
ALPHA = Word([A])
BETA = Word([B])
# gamma = B A and delta = A B
GAMMA = Word([-B, -A])
DELTA = Word([-A, -B])


def reduce(raw: Iterable[int]) -> Word:
    return Word(raw)


def multiply(u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters)


def _reduced(letters: Tuple[int, ...]) -> Word:
    # skip validation for letters already known to be freely reduced
    w = Word.__new__(Word)
    w.letters = letters
    w._hash = hash(letters)
    return w


def invert(u: Word) -> Word:
    return _reduced(tuple(-x for x in reversed(u.letters)))


def power(u: Word, n: int) -> Word:
    if n < 0:
        u, n = invert(u), -n
    return Word(u.letters * n)


def conjugate(h: Word, w: Word) -> Word:
    """``h^w = w^-1 h w``."""
    return Word(invert(w).letters + h.letters + w.letters)


def product(words: Iterable[Word]) -> Word:
    out: list = []
    for w in words:
        out.extend(w.letters)
    return Word(out)


def is_cyclically_reduced(u: Word) -> bool:
    s = u.letters
    return len(s) <= 1 or s[0] != -s[-1]


def _strip_conjugation(u: Word) -> Tuple[Word, Word]:
    s = u.letters
    i = 0
    while 2 * (i + 1) < len(s) and s[i] == -s[len(s) - 1 - i]:
        i += 1
    core = Word(s[i:len(s) - i])
    # u = prefix core prefix^-1, so the conjugator is prefix^-1
    conj = invert(Word(s[:i]))
    return conj, core


def primitive_root(u: Word) -> Tuple[Word, int]:
    """Return ``(r, p)`` with ``u == r**p``, ``r`` not a proper power, for cyclically reduced ``u``."""
    s = u.letters
    n = len(s)
    for d in range(1, n + 1):
        if n % d == 0 and s[:d] * (n // d) == s:
            return Word(s[:d]), n // d
    return u, 1


def _canonical_cores():
    for base in (GAMMA, invert(GAMMA)):
        yield base


def cyclic_decompose(u: Word) -> Tuple[Word, Word]:
    """Split ``u`` as ``conjugator^-1 * core * conjugator``.

    The core is cyclically reduced.  Cores that are powers of a rotation of
    ``BA`` (gamma) or ``ab`` (gamma^-1) are rotated onto those canonical
    forms; otherwise the core is the plain cyclic reduction.  Among the
    conjugators realising the chosen core the shortlex-smallest is returned.
    """
    if u.is_identity():
        raise ValueError("cannot decompose the identity")
    conj, core = _strip_conjugation(u)
    root, p = primitive_root(core)
    if len(root) == 2:
        for canon in _canonical_cores():
            rotated = Word(root.letters[1:] + root.letters[:1])
            if root != canon and rotated == canon:
                # core = c^-1 canon^p c for exactly two single letters c
                target = power(canon, p)
                options = []
                for c in (Word([x]) for x in (1, -1, 2, -2)):
                    if conjugate(target, c) == core:
                        options.append(multiply(c, conj))
                best = min(options, key=Word.sort_key)
                return best, target
    return conj, core


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class Family:
    """The set ``{prefix * base**n * suffix : n in Z}``.

    ``base`` is cyclically reduced and nontrivial; it may be a proper power,
    which is how parity subclasses such as ``a^(2n)`` are expressed.
    """

    prefix: Word
    base: Word
    suffix: Word

    def __post_init__(self):
        if self.base.is_identity():
            raise ValueError("family base must be nontrivial")

    def at(self, n: int) -> Word:
        return Word(self.prefix.letters + power(self.base, n).letters + self.suffix.letters)

    def inverse(self) -> "Family":
        return make_family(invert(self.suffix), invert(self.base), invert(self.prefix))

    def match(self, w: Word) -> Optional[int]:
        return match_family(w, self)

    def contains(self, w: Word) -> bool:
        return match_family(w, self) is not None

    def __str__(self) -> str:
        return format_family(self)


def make_family(prefix: Word, base: Word, suffix: Word) -> Family:
    """Build a family in canonical form.

    The canonical form has a cyclically reduced base oriented shortlex-below
    its inverse, a prefix that cannot be shortened by rotating the base, and
    a suffix shortened as far as shifting the exponent allows.
    """
    if base.is_identity():
        raise ValueError("family base must be nontrivial")
    c, k = _strip_conjugation(base)
    u = multiply(prefix, invert(c))
    v = multiply(c, suffix)
    kinv = invert(k)
    if kinv.sort_key() < k.sort_key():
        k = kinv
    ks = k.letters
    while u.letters:
        last = u.letters[-1]
        if last == -ks[0]:
            # x k x^-1 is the left rotation of k
            ks = ks[1:] + ks[:1]
        elif last == ks[-1]:
            ks = ks[-1:] + ks[:-1]
        else:
            break
        v = Word((last,) + v.letters)
        u = Word(u.letters[:-1])
    k = Word(ks)
    # re-orient after rotation, keeping the set unchanged
    if invert(k).sort_key() < k.sort_key():
        k = invert(k)
    v = _shift_suffix(k, v)
    return Family(u, k, v)


def _shift_suffix(k: Word, v: Word) -> Word:
    best = v
    limit = len(v) // max(len(k), 1) + 2
    for r in range(-limit, limit + 1):
        cand = multiply(power(k, r), v)
        if cand.sort_key() < best.sort_key():
            best = cand
    return best


@lru_cache(maxsize=4096)
def _rigid(prefix: Tuple[int, ...], base: Tuple[int, ...], suffix: Tuple[int, ...]) -> bool:
    """True when no member of the family cancels across prefix, base power and suffix."""
    ends = {base[0], -base[-1]}          # first letters of base and base^-1
    starts = {base[-1], -base[0]}        # last letters of base and base^-1
    if prefix and -prefix[-1] in ends:
        return False
    if suffix and -suffix[0] in starts:
        return False
    return not (prefix and suffix and prefix[-1] == -suffix[0])


def match_family(u: Word, fam: Family) -> Optional[int]:
    """Return the unique ``n`` with ``fam.at(n) == u``, or ``None``."""
    p, k, q = fam.prefix.letters, fam.base.letters, fam.suffix.letters
    if _rigid(p, k, q):
        letters = u.letters
        if len(letters) < len(p) + len(q) or letters[:len(p)] != p \
                or letters[len(letters) - len(q):] != q:
            return None
        core = letters[len(p):len(letters) - len(q)]
    else:
        core = Word(invert(fam.prefix).letters + u.letters + invert(fam.suffix).letters).letters
    if not core:
        return 0
    m, r = divmod(len(core), len(k))
    if r:
        return None
    # a cyclically reduced base has reduced powers, so compare letter blocks
    if core == k * m:
        return m
    if core == tuple(-x for x in reversed(k)) * m:
        return -m
    return None


def family_subset(f: Family, g: Family, window: int = 8) -> bool:
    """Sampled test that every member of ``f`` lies in ``g``."""
    return all(g.contains(f.at(n)) for n in range(-window, window + 1))


def same_family(f: Family, g: Family, window: int = 8) -> bool:
    return family_subset(f, g, window) and family_subset(g, f, window)


# ---------------------------------------------------------------- text I/O

_TOKEN = re.compile(r"\s*(?:(?P<one>1)(?![\d])|(?P<group>\((?P<inner>[aAbB1\s]*)\))|(?P<letter>[aAbB]))"
                    r"(?:\^(?P<exp>-?\d+|n))?")


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"cannot parse {text!r} at position {pos}")
        if m.group("one"):
            atom = ()
        elif m.group("group") is not None:
            atom = tuple(_LETTERS[ch] for ch in m.group("inner") if ch in _LETTERS)
        else:
            atom = (_LETTERS[m.group("letter")],)
        yield atom, m.group("exp")
        pos = m.end()


def _parse(text: str):
    before: list = []
    after: list = []
    base = None
    for atom, exp in _tokens(text):
        if exp == "n":
            if base is not None:
                raise WordSyntaxError(f"more than one exponent slot in {text!r}")
            base = atom
            continue
        k = 1 if exp is None else int(exp)
        letters = atom * k if k >= 0 else tuple(-x for x in reversed(atom)) * (-k)
        (before if base is None else after).extend(letters)
    return before, base, after


def parse_word(text: str) -> Word:
    before, base, after = _parse(text)
    if base is not None:
        raise WordSyntaxError(f"{text!r} has an exponent slot; use parse_family")
    return Word(before)


def parse_family(text: str) -> Family:
    before, base, after = _parse(text)
    if base is None:
        raise WordSyntaxError(f"{text!r} has no ^n slot")
    return make_family(Word(before), Word(base), Word(after))


def parse_member(text: str):
    """Parse either a word or a family."""
    before, base, after = _parse(text)
    if base is None:
        return Word(before)
    return make_family(Word(before), Word(base), Word(after))


def format_word(u: Word) -> str:
    if not u.letters:
        return "1"
    out = []
    s = u.letters
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        run = j - i
        out.append(_CHARS[s[i]] if run == 1 else f"{_CHARS[s[i]]}^{run}")
        i = j
    return "".join(out) if all("^" not in t for t in out) else " ".join(out)


def format_family(fam: Family) -> str:
    k = "".join(_CHARS[x] for x in fam.base.letters)
    slot = f"{k}^n" if len(fam.base) == 1 else f"({k})^n"
    parts = [format_word(w) for w in (fam.prefix,) if w] + [slot] + [format_word(w) for w in (fam.suffix,) if w]
    return " ".join(parts)


def letters_of(text: str) -> Sequence[int]:
    return parse_word(text).letters
