"""(Possibly infinite) nuclei of the self-similar actions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

from .word import (ALPHA, ONE, Family, Word, family_subset, format_word, invert, make_family,
                   multiply, parse_member, parse_word, power, same_family)
from .wreath import (DEFAULT_STATE_BOUND, WreathRecursion, acts_trivially, perm_image,
                     perm_of, restrict, restrictions)

Item = Union[Word, Family]
WINDOW = 8


def split_parity(rec: WreathRecursion, fam: Family) -> List[Family]:
    """Rewrite a family so that every piece has a base fixing both letters."""
    if not perm_of(rec, fam.base):
        return [fam]
    k2 = power(fam.base, 2)
    return [Family(fam.prefix, k2, fam.suffix), Family(multiply(fam.prefix, fam.base), k2, fam.suffix)]


def restrict_family(rec: WreathRecursion, fam: Family, x: int) -> List[Item]:
    """Exact symbolic restriction of every member of ``fam`` at letter ``x``."""
    out: List[Item] = []
    for piece in split_parity(rec, fam):
        z = perm_image(rec, piece.prefix, x)
        head = restrict(rec, piece.prefix, x)
        tail = restrict(rec, piece.suffix, z)
        base = restrict(rec, piece.base, z)
        if base.is_identity():
            out.append(multiply(head, tail))
        else:
            out.append(make_family(head, base, tail))
    return out


def item_restrictions(rec: WreathRecursion, item: Item) -> List[Item]:
    if isinstance(item, Word):
        return list(restrictions(rec, item))
    return restrict_family(rec, item, 1) + restrict_family(rec, item, 2)


def item_inverse(item: Item) -> Item:
    return invert(item) if isinstance(item, Word) else item.inverse()


@dataclass
class NucleusSet:
    concrete: set = field(default_factory=set)
    families: list = field(default_factory=list)

    def contains(self, w: Word) -> bool:
        return w in self.concrete or any(f.contains(w) for f in self.families)

    __contains__ = contains

    def covers(self, fam: Family, window: int = WINDOW) -> bool:
        if any(family_subset(fam, g, window) for g in self.families):
            return True
        return all(self.contains(fam.at(n)) for n in range(-window, window + 1))

    def has(self, item: Item, window: int = WINDOW) -> bool:
        return self.contains(item) if isinstance(item, Word) else self.covers(item, window)

    def add(self, item: Item) -> None:
        if isinstance(item, Word):
            self.concrete.add(item)
            self.concrete.add(invert(item))
        else:
            for f in (item, item.inverse()):
                if not any(family_subset(f, g) for g in self.families):
                    self.families = [g for g in self.families if not family_subset(g, f)]
                    self.families.append(f)
            self.concrete = {w for w in self.concrete if not any(g.contains(w) for g in self.families)}

    def items(self) -> List[Item]:
        return sorted(self.concrete, key=Word.sort_key) + list(self.families)

    def sample(self, window: int = WINDOW) -> List[Word]:
        out = set(self.concrete)
        for f in self.families:
            out.update(f.at(n) for n in range(-window, window + 1))
        return sorted(out, key=Word.sort_key)

    def __len__(self):
        return len(self.concrete) + len(self.families)


def self_restricting(rec: WreathRecursion, w: Word) -> bool:
    return not w.is_identity() and not perm_of(rec, w) and w in restrictions(rec, w)


def state_closure(rec: WreathRecursion, gens: Iterable[Item], bound: int = DEFAULT_STATE_BOUND,
                  window: int = WINDOW) -> NucleusSet:
    N = NucleusSet()
    N.add(ONE)
    todo: List[Item] = list(gens)
    while todo:
        while todo:
            item = todo.pop(0)
            if N.has(item, window):
                continue
            if isinstance(item, Word) and self_restricting(rec, item):
                item = make_family(ONE, item, ONE)
                if N.has(item, window):
                    continue
            N.add(item)
            if len(N) > bound:
                raise RuntimeError(f"state closure exceeded {bound} members")
            for it in (item, item_inverse(item)):
                todo.extend(item_restrictions(rec, it))
        todo.extend(f for f in _promote_cycles(rec, N) if not N.has(f, window))
    return N


def _promote_cycles(rec: WreathRecursion, N: NucleusSet) -> List[Family]:
    """Families ``w^n`` for concrete members lying on a cycle of permutation-free states."""
    nodes = [w for w in N.concrete if not w.is_identity() and not perm_of(rec, w)]
    node_set = set(nodes)
    succ = {w: [r for r in restrictions(rec, w) if r in node_set] for w in nodes}
    out = []
    for w in nodes:
        seen = set()
        stack = list(succ[w])
        while stack:
            u = stack.pop()
            if u == w:
                out.append(make_family(ONE, w, ONE))
                break
            if u in seen:
                continue
            seen.add(u)
            stack.extend(succ[u])
    return out


# ---------------------------------------------------------------- contraction


def item_product(u: Item, v: Item, window: int = WINDOW) -> List[Item]:
    """Members of ``u * v`` as words and one-parameter families."""
    if isinstance(u, Word) and isinstance(v, Word):
        return [multiply(u, v)]
    if isinstance(u, Word):
        return [make_family(multiply(u, v.prefix), v.base, v.suffix)]
    if isinstance(v, Word):
        return [make_family(u.prefix, u.base, multiply(u.suffix, v))]
    return [make_family(multiply(u.at(m), v.prefix), v.base, v.suffix)
            for m in range(-window, window + 1)]


def square(N: NucleusSet, window: int = WINDOW) -> List[Item]:
    members = N.items()
    out: List[Item] = []
    seen = set()
    for u in members:
        for v in members:
            for p in item_product(u, v, window):
                if p not in seen:
                    seen.add(p)
                    out.append(p)
    return out


def _instances(item: Item, window: int) -> List[Word]:
    if isinstance(item, Word):
        return [item]
    return [item.at(n) for n in range(-window, window + 1)]


def _item_at(rec: WreathRecursion, item: Item, x: int) -> List[Item]:
    if isinstance(item, Word):
        return [restrict(rec, item, x)]
    return restrict_family(rec, item, x)


def _sccs(nodes, succ):
    """Tarjan's algorithm; returns the strongly connected components."""
    index = {}
    low = {}
    on = set()
    stack = []
    comps = []
    counter = [0]

    def visit(v):
        work = [(v, iter(succ.get(v, ())))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                comps.append(comp)

    for v in nodes:
        if v not in index:
            visit(v)
    return comps


def _cyclic(comp, succ) -> bool:
    return len(comp) > 1 or comp[0] in succ.get(comp[0], ())


@dataclass
class ContractionReport:
    status: str                      # "contracts", "cycles-found" or "window-exhausted"
    k: Optional[int]
    edges: List[Tuple[Item, int, Item]]
    word_edges: List[Tuple[Word, int, Word]]
    cycles: List[List[Item]]
    notes: List[str] = field(default_factory=list)

    @property
    def contracts(self) -> bool:
        return self.status == "contracts"


def contraction_check(rec: WreathRecursion, N: NucleusSet, window: int = WINDOW,
                      max_depth: int = 64) -> ContractionReport:
    """Follow restrictions of every product of two members until they land in ``N``."""
    products = [p for p in square(N, window) if not N.has(p, window)]

    # family level: symbolic graph on members outside N
    succ = {}
    edges = []
    todo = list(products)
    while todo:
        item = todo.pop()
        if item in succ:
            continue
        succ[item] = []
        for x in (1, 2):
            for r in _item_at(rec, item, x):
                if N.has(r, window):
                    continue
                succ[item].append(r)
                edges.append((item, x, r))
                if r not in succ:
                    todo.append(r)

    # word level: sampled instances
    wsucc = {}
    word_edges = []
    roots = []
    for p in products:
        roots.extend(w for w in _instances(p, window) if w not in N)
    todo = list(roots)
    while todo:
        w = todo.pop()
        if w in wsucc:
            continue
        wsucc[w] = []
        for x in (1, 2):
            r = restrict(rec, w, x)
            if r in N:
                continue
            wsucc[w].append(r)
            word_edges.append((w, x, r))
            if r not in wsucc:
                todo.append(r)
    word_cycles = [c for c in _sccs(list(wsucc), wsucc) if _cyclic(c, wsucc)]
    on_cycle = {w for c in word_cycles for w in c}

    cycles: List[List[Item]] = []
    lifted = set()
    for comp in _sccs(list(succ), succ):
        if not _cyclic(comp, succ):
            continue
        fams = [c for c in comp if isinstance(c, Family)]
        if not fams:
            cycles.append(sorted(comp, key=Word.sort_key))
            continue
        # a family cycle is genuine when its sampled instances are periodic
        ok = all(all(w in on_cycle for w in _instances(f, window) if w not in N) for f in fams)
        if ok:
            cycles.append(comp)
            for f in fams:
                lifted.update(w for w in _instances(f, window))
    leftover = [sorted(c, key=Word.sort_key) for c in word_cycles
                if not all(w in lifted or any(w == c2 for comp in cycles for c2 in comp) for w in c)]
    cycles.extend(leftover)

    depth = {}

    def depth_of(w, level=0):
        if w in N:
            return 0
        if w in depth:
            return depth[w]
        if w in on_cycle:
            return None
        if level > max_depth:
            raise RecursionError
        best = 0
        for r in wsucc.get(w, ()):
            d = depth_of(r, level + 1)
            if d is None:
                return None
            best = max(best, d)
        depth[w] = best + 1
        return best + 1

    notes = []
    if cycles:
        return ContractionReport("cycles-found", None, edges, word_edges, cycles)
    try:
        k = max([depth_of(w) for w in roots] or [0])
    except RecursionError:
        notes.append(f"restriction paths longer than {max_depth} within the sampled window")
        return ContractionReport("window-exhausted", None, edges, word_edges, [], notes)
    return ContractionReport("contracts", k, edges, word_edges, [], notes)


SEED_FALLBACK = ("b", "BA", "AB")


def nucleus_core(rec: WreathRecursion, N: NucleusSet, window: int = 3) -> set:
    """Sampled members of ``N`` that lie on, or below, a cycle of restrictions inside ``N``."""
    succ = {}
    todo = N.sample(window)
    while todo:
        w = todo.pop()
        if w in succ:
            continue
        succ[w] = [r for r in restrictions(rec, w) if r in N]
        todo.extend(r for r in succ[w] if r not in succ)
    core = {w for c in _sccs(list(succ), succ) if _cyclic(c, succ) for w in c}
    todo = list(core)
    while todo:
        for r in restrictions(rec, todo.pop()):
            if r not in core:
                core.add(r)
                todo.append(r)
    return core


def compute_nucleus(rec: WreathRecursion, gens: Optional[Iterable[Item]] = None,
                    max_rounds: int = 16, window: int = WINDOW,
                    bound: int = DEFAULT_STATE_BOUND) -> Tuple[NucleusSet, ContractionReport]:
    """Alternate state closure and contraction checks until the candidate contracts.

    Without explicit generators the seed is ``{a, b}``; when ``b`` is not in
    the core of the result, ``{a, BA}`` and then ``{a, AB}`` are tried.
    """
    if gens is not None:
        return _grow(rec, list(gens), max_rounds, window, bound)
    first = None
    for second in SEED_FALLBACK:
        seed = parse_word(second)
        N, report = _grow(rec, [ALPHA, seed], max_rounds, window, bound)
        first = first or (N, report)
        core = nucleus_core(rec, N)
        if seed in core or invert(seed) in core:
            return N, report
    return first


def _grow(rec, gens, max_rounds, window, bound):
    N = state_closure(rec, gens, bound, window)
    for _ in range(max_rounds):
        report = contraction_check(rec, N, window)
        if report.status != "cycles-found":
            return N, report
        extra = [it for c in report.cycles for it in c]
        N = state_closure(rec, N.items() + extra, bound, window)
    raise RuntimeError(f"nucleus did not stabilise within {max_rounds} rounds")


# ---------------------------------------------------------------- comparison


def _item_key(item: Item):
    if isinstance(item, Word):
        return (0, item.sort_key())
    return (1, item.prefix.sort_key(), item.base.sort_key(), item.suffix.sort_key())


def _same_item(u: Item, v: Item, window: int = WINDOW) -> bool:
    if isinstance(u, Word) or isinstance(v, Word):
        return u == v
    return same_family(u, v, window)


def symmetric_edges(edges):
    """Drop each edge whose inverse edge ``s^-1 -> t^-1`` is already listed."""
    out = []
    for s, x, t in sorted(edges, key=lambda e: (_item_key(e[0]), e[1], _item_key(e[2]))):
        si, ti = item_inverse(s), item_inverse(t)
        if any(_same_item(si, a) and _same_item(ti, b) for a, _, b in out):
            continue
        if any(_same_item(s, a) and _same_item(t, b) for a, _, b in out):
            continue
        out.append((s, x, t))
    return out


def edge_listed(edge: Tuple[Item, Item], edges, window: int = WINDOW) -> bool:
    s, t = edge
    for a, _, b in edges:
        if _same_item(s, a, window) and _same_item(t, b, window):
            return True
        if _same_item(item_inverse(s), a, window) and _same_item(item_inverse(t), b, window):
            return True
    return False


def nucleus_from_text(members: Iterable[str]) -> NucleusSet:
    N = NucleusSet()
    for text in members:
        N.add(parse_member(text))
    return N


@dataclass
class NucleusDiff:
    missing: List[str]        # reference members with no counterpart in the computed set
    extra: List[str]          # computed members with no counterpart in the reference set

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra


def compare_nuclei(rec: WreathRecursion, computed: NucleusSet, reference: NucleusSet,
                   window: int = WINDOW, depth: int = 8) -> NucleusDiff:
    """Compare two sets as subsets of the faithful quotient.

    Families must agree as patterns (up to inversion).  Every sampled member
    of one set must act exactly like some sampled member of the other.
    """
    missing, extra = [], []
    for src, dst, out in ((reference, computed, missing), (computed, reference, extra)):
        for f in src.families:
            if not any(same_family(f, g, window) for g in dst.families):
                out.append(str(f))
        index = {}
        memo: dict = {}
        for w in dst.sample(window):
            index.setdefault(_signature(rec, w, depth, memo), []).append(w)
        for w in src.sample(window):
            if w in dst:
                continue
            cands = index.get(_signature(rec, w, depth, memo), [])
            if not any(acts_trivially(rec, multiply(w, invert(c))) for c in cands):
                out.append(format_word(w))
    return NucleusDiff(missing, extra)


def _signature(rec: WreathRecursion, w: Word, depth: int, memo: dict) -> int:
    """Interned id of the action of ``w`` on the first ``depth`` levels of the tree."""
    key = (w.letters, depth)
    if key in memo:
        return memo[key]
    if depth == 0:
        node = ()
    else:
        node = (perm_of(rec, w),) + tuple(_signature(rec, r, depth - 1, memo)
                                          for r in restrictions(rec, w))
    ids = memo.setdefault("ids", {})
    memo[key] = ids.setdefault(node, len(ids))
    return memo[key]


def format_items(N: NucleusSet) -> List[str]:
    return [str(it) for it in N.items()]
