"""Maps on the moduli space C minus {0, 1}: evaluation, fixed points, path lifting
and recovery of wreath recursions from the monodromy of lifted loops.

Points of the Riemann sphere are Python complex numbers, with
``INF = complex(inf, 0)`` standing for infinity.  Distances are chordal so
that paths through a neighbourhood of infinity need no special casing.

Loops in C minus {0, 1} are read as words by counting crossings with two
disjoint rays, one from each puncture.  The rays leave the real axis at a
generic angle, so paths that run along the real line never touch them.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .word import Word
from .wreath import WreathRecursion

INF = complex(math.inf, 0.0)
PUNCTURES = (0j, 1 + 0j, INF)

# continuation parameters
INITIAL_STEP = 1.0 / 256
MIN_STEP = 1e-12
SEPARATION = 1e-6
RESIDUAL_TOL = 1e-9
DETOUR_RADIUS = 1e-3
CHART_RADIUS = 10.0
# ray angles for reading loops; chosen off every line through the punctures used below
RAY_ANGLE_ZERO = math.pi + 0.5
RAY_ANGLE_ONE = 0.5
TANGENCY_TOL = 1e-13


class LiftError(RuntimeError):
    """Continuation could not separate the two branches."""


class TangentialCrossing(RuntimeError):
    """A sampled loop touched a reading ray without crossing it transversally."""


class FixedPointCollision(RuntimeError):
    """Two fixed points coincide within tolerance."""


def is_inf(z: complex) -> bool:
    return cmath.isinf(z)


def chordal(z: complex, w: complex) -> float:
    if is_inf(z) and is_inf(w):
        return 0.0
    if is_inf(z):
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    if is_inf(w):
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def puncture_distance(z: complex, points: Sequence[complex] = PUNCTURES) -> float:
    return min(chordal(z, p) for p in points)


# ---------------------------------------------------------------- maps


def _as_projective(z: complex) -> Tuple[complex, complex]:
    if is_inf(z):
        return 1.0 + 0j, 0j
    if abs(z) > CHART_RADIUS:
        return 1.0 + 0j, 1.0 / z
    return z, 1.0 + 0j


def _from_projective(x: complex, y: complex) -> complex:
    if y == 0:
        return INF
    return x / y


@dataclass(frozen=True)
class Mobius:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) < 1e-14:
            raise ValueError("degenerate Moebius transformation")

    def __call__(self, z: complex) -> complex:
        x, y = _as_projective(z)
        return _from_projective(self.a * x + self.b * y, self.c * x + self.d * y)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Mobius") -> "Mobius":
        """``self o other``."""
        return Mobius(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)


def _vec(z: complex) -> Tuple[complex, complex]:
    return (1.0 + 0j, 0j) if is_inf(z) else (z, 1.0 + 0j)


def _from_standard(p: complex, q: complex, r: complex) -> Mobius:
    """The map sending ``0, 1, inf`` to ``p, q, r``."""
    P, Q, R = _vec(p), _vec(q), _vec(r)
    # columns R*s and P*t with R*s + P*t proportional to Q
    det = R[0] * P[1] - P[0] * R[1]
    if abs(det) < 1e-14:
        raise ValueError("points are not distinct")
    s = (Q[0] * P[1] - P[0] * Q[1]) / det
    t = (R[0] * Q[1] - Q[0] * R[1]) / det
    return Mobius(R[0] * s, P[0] * t, R[1] * s, P[1] * t)


def mobius_three(src: Sequence[complex], dst: Sequence[complex]) -> Mobius:
    """The unique Moebius map sending the three points ``src`` to ``dst``."""
    return _from_standard(*dst).compose(_from_standard(*src).inverse())


LABEL_POINTS = {"0": 0j, "1": 1 + 0j, "inf": INF}


def mobius_from_permutation(perm: Mapping[str, str]) -> Mobius:
    """Moebius map inducing a permutation of the labels ``0``, ``1``, ``inf``."""
    src = [LABEL_POINTS[k] for k in ("0", "1", "inf")]
    dst = [LABEL_POINTS[perm.get(k, k)] for k in ("0", "1", "inf")]
    return mobius_three(src, dst)


def mobius_from_spec(bullet: complex, slot: str) -> Mobius:
    """The Moebius map swapping ``bullet`` with the slot point and the other two points."""
    if is_inf(bullet) or min(abs(bullet), abs(bullet - 1)) < 1e-12:
        raise ValueError(f"bullet {bullet} must avoid 0, 1 and infinity")
    pts = {"0": 0j, "1": 1 + 0j, "inf": INF}
    if slot not in pts:
        raise ValueError(f"slot must be one of 0, 1, inf, got {slot!r}")
    others = [k for k in pts if k != slot]
    src = [bullet, pts[slot], pts[others[0]]]
    dst = [pts[slot], bullet, pts[others[1]]]
    return mobius_three(src, dst)


@dataclass(frozen=True)
class RationalMap:
    """``(n2 z^2 + n1 z + n0) / (d2 z^2 + d1 z + d0)``."""

    numerator: Tuple[complex, complex, complex]
    denominator: Tuple[complex, complex, complex]

    def __post_init__(self):
        num = np.array(self.numerator, dtype=complex)
        den = np.array(self.denominator, dtype=complex)
        if not num.any() or not den.any():
            raise ValueError("numerator and denominator must be nonzero")
        # resultant test for a common root
        if abs(_resultant(num, den)) < 1e-12 and self.degree() > 0:
            raise ValueError("numerator and denominator share a root")
        if self.degree() not in (1, 2):
            raise ValueError("map must have degree 1 or 2")

    def degree(self) -> int:
        def deg(c):
            for i, x in enumerate(c):
                if x != 0:
                    return 2 - i
            return -1
        return max(deg(self.numerator), deg(self.denominator))

    def __call__(self, z: complex) -> complex:
        x, y = _as_projective(z)
        n2, n1, n0 = self.numerator
        d2, d1, d0 = self.denominator
        return _from_projective(n2 * x * x + n1 * x * y + n0 * y * y,
                                d2 * x * x + d1 * x * y + d0 * y * y)

    def preimages(self, w: complex) -> Tuple[complex, complex]:
        """Both solutions of ``g(z) = w`` on the sphere, with multiplicity."""
        if is_inf(w):
            A, B, C = self.denominator
        else:
            A = self.numerator[0] - w * self.denominator[0]
            B = self.numerator[1] - w * self.denominator[1]
            C = self.numerator[2] - w * self.denominator[2]
        disc = cmath.sqrt(B * B - 4 * A * C)
        # stable quadratic formula; a vanishing leading coefficient sends a root to infinity
        q = -0.5 * (B + disc) if (B.conjugate() * disc).real >= 0 else -0.5 * (B - disc)
        if q == 0:
            return (0j, 0j) if A != 0 else (INF, INF)
        r1 = INF if A == 0 else q / A
        r2 = C / q
        return r1, r2


def _resultant(p: np.ndarray, q: np.ndarray) -> complex:
    m = np.array([
        [p[0], p[1], p[2], 0],
        [0, p[0], p[1], p[2]],
        [q[0], q[1], q[2], 0],
        [0, q[0], q[1], q[2]],
    ], dtype=complex)
    return complex(np.linalg.det(m))


def rational_map(numerator: Sequence, denominator: Sequence) -> RationalMap:
    return RationalMap(tuple(complex(x) for x in numerator), tuple(complex(x) for x in denominator))


def fixed_points(g: RationalMap, collision_tol: float = 1e-8) -> List[complex]:
    """Solutions of ``g(z) = z`` with multiplicity, infinity included.

    Finite fixed points are the roots of ``N(z) - z D(z)``, found with
    ``numpy.roots`` and polished by Newton's method.
    """
    n2, n1, n0 = g.numerator
    d2, d1, d0 = g.denominator
    coeffs = [-d2, n2 - d1, n1 - d0, n0]
    while coeffs and abs(coeffs[0]) < 1e-15:
        coeffs.pop(0)
    poly = np.poly1d(coeffs) if coeffs else None
    roots: List[complex] = []
    if poly is not None and poly.order > 0:
        dpoly = poly.deriv()
        for r in np.roots(coeffs):
            z = complex(r)
            for _ in range(50):
                dz = dpoly(z)
                if dz == 0:
                    break
                step = poly(z) / dz
                z -= step
                if abs(step) < 1e-17 * max(1.0, abs(z)):
                    break
            roots.append(complex(z))
    roots += [INF] * (3 - len(roots))
    finite = [z for z in roots if not is_inf(z)]
    for i, z in enumerate(finite):
        for w in finite[i + 1:]:
            if abs(z - w) < collision_tol:
                raise FixedPointCollision(f"fixed points {z} and {w} collide")
    return sorted(roots, key=lambda z: (is_inf(z), round(z.real, 9) if not is_inf(z) else 0,
                                        z.imag if not is_inf(z) else 0))


# ---------------------------------------------------------------- paths


@dataclass(frozen=True)
class ParamPath:
    """A path given by a function on ``[0, 1]``."""

    func: Callable[[float], complex]

    def __call__(self, t: float) -> complex:
        return self.func(min(max(t, 0.0), 1.0))

    @property
    def start(self) -> complex:
        return self.func(0.0)

    @property
    def end(self) -> complex:
        return self.func(1.0)

    def reverse(self) -> "ParamPath":
        f = self.func
        return ParamPath(lambda t: f(1.0 - t))

    def image(self, m: Callable[[complex], complex]) -> "ParamPath":
        f = self.func
        return ParamPath(lambda t: m(f(t)))


def concat(*paths: ParamPath) -> ParamPath:
    paths = [p for p in paths if p is not None]
    n = len(paths)
    if n == 0:
        raise ValueError("nothing to concatenate")

    def f(t: float) -> complex:
        k = min(int(t * n), n - 1)
        return paths[k].func(t * n - k)
    return ParamPath(f)


def segment(a: complex, b: complex) -> ParamPath:
    return ParamPath(lambda t: a + (b - a) * t)


def arc(center: complex, radius: float, theta0: float, theta1: float) -> ParamPath:
    return ParamPath(lambda t: center + radius * cmath.exp(1j * (theta0 + (theta1 - theta0) * t)))


def circle(center: complex, start: complex, turns: int = 1) -> ParamPath:
    """Positively oriented circle about ``center`` starting at ``start``."""
    r = abs(start - center)
    th = cmath.phase(start - center)
    return arc(center, r, th, th + 2 * math.pi * turns)


def in_chart(path: ParamPath) -> ParamPath:
    """Read a path given in the coordinate ``u = 1/z`` back in ``z``."""
    f = path.func
    return ParamPath(lambda t: INF if f(t) == 0 else 1.0 / f(t))


@dataclass
class ComplexPath:
    """Sampled path; consecutive samples lie in a common puncture-free disk."""

    points: List[complex]
    params: List[float] = field(default_factory=list)
    residual: float = 0.0

    @property
    def start(self) -> complex:
        return self.points[0]

    @property
    def end(self) -> complex:
        return self.points[-1]

    def reverse(self) -> "ComplexPath":
        return ComplexPath(self.points[::-1], [1.0 - t for t in self.params[::-1]], self.residual)

    def image(self, m: Callable[[complex], complex]) -> "ComplexPath":
        return ComplexPath([m(z) for z in self.points], list(self.params), self.residual)

    def __add__(self, other: "ComplexPath") -> "ComplexPath":
        if chordal(self.end, other.start) > 1e-8:
            raise ValueError("paths do not join")
        pts = self.points + other.points[1:]
        return ComplexPath(pts, [], max(self.residual, other.residual))


def constant_path(z: complex) -> ComplexPath:
    return ComplexPath([z, z], [0.0, 1.0])


def _fine_enough(z: complex, w: complex, punctures: Sequence[complex]) -> bool:
    return chordal(z, w) <= 0.25 * puncture_distance(z, punctures)


def sample_path(path: ParamPath, step: float = INITIAL_STEP, min_step: float = MIN_STEP,
                punctures: Sequence[complex] = PUNCTURES) -> ComplexPath:
    """Adaptive samples of a parametrised path that avoids the punctures."""
    t, z = 0.0, path(0.0)
    pts, ts = [z], [0.0]
    h = step
    while t < 1.0:
        h = min(h, 1.0 - t)
        w = path(t + h)
        if _fine_enough(z, w, punctures):
            t += h
            z = w
            pts.append(z)
            ts.append(t)
            h = min(2 * h, step)
        else:
            h /= 2
            if h < min_step:
                raise LiftError(f"path passes too close to a puncture near {z}")
    return ComplexPath(pts, ts)


def lift_path(g: RationalMap, target: ParamPath, start: complex, step: float = INITIAL_STEP,
              min_step: float = MIN_STEP, separation: float = SEPARATION,
              punctures: Sequence[complex] = PUNCTURES) -> ComplexPath:
    """Continue the branch of ``g^-1`` along ``target`` that starts at ``start``.

    A step is accepted when the target moves little compared with its
    distance to the punctures, the chosen preimage is much nearer the current
    point than the other preimage, and the new point moves little compared
    with its own distance to the punctures.  Otherwise the step is halved.
    """
    w0 = target(0.0)
    if chordal(g(start), w0) > 1e-7:
        raise LiftError(f"start {start} does not lie over the target start {w0}")
    t, z = 0.0, start
    pts, ts = [z], [0.0]
    worst = chordal(g(z), w0)
    h = step
    w_prev = w0
    while t < 1.0:
        h = min(h, 1.0 - t)
        w = target(t + h)
        r1, r2 = g.preimages(w)
        d1, d2 = chordal(z, r1), chordal(z, r2)
        near, dn, df = (r1, d1, d2) if d1 <= d2 else (r2, d2, d1)
        ok = (_fine_enough(w_prev, w, punctures)
              and chordal(r1, r2) >= separation
              and dn <= 0.25 * df
              and _fine_enough(z, near, punctures))
        if ok:
            t += h
            z = near
            w_prev = w
            pts.append(z)
            ts.append(t)
            worst = max(worst, chordal(g(z), w))
            h = min(2 * h, step)
        else:
            h /= 2
            if h < min_step:
                raise LiftError(f"cannot separate branches near t = {t:.6g}, z = {z}")
    return ComplexPath(pts, ts, worst)


# ---------------------------------------------------------------- reading loops


def loop_to_word(loop: ComplexPath, basepoint: complex, signs: Tuple[int, int] = (1, 1)) -> Word:
    """Word in ``a``, ``b`` read from the crossings of a closed sampled loop.

    ``a`` is a counterclockwise crossing of the ray leaving ``0`` and ``b``
    one of the ray leaving ``1``; ``signs`` flips either generator.
    """
    if chordal(loop.start, basepoint) > 1e-8 or chordal(loop.end, basepoint) > 1e-8:
        raise ValueError("loop is not closed at the basepoint")
    rays = ((0j, RAY_ANGLE_ZERO, 1, signs[0]), (1 + 0j, RAY_ANGLE_ONE, 2, signs[1]))
    events = []
    rots = [cmath.exp(-1j * ang) for _, ang, _, _ in rays]
    prev = None
    for i, z in enumerate(loop.points):
        if is_inf(z):
            raise TangentialCrossing("loop passes through infinity")
        ws = [(z - o) * r for (o, _, _, _), r in zip(rays, rots)]
        for w in ws:
            if abs(w.imag) < TANGENCY_TOL and w.real > 0:
                raise TangentialCrossing(f"loop touches a reading ray at {z}")
        if prev is not None:
            for (_, _, letter, sign), w, pw in zip(rays, ws, prev):
                if (pw.imag < 0) != (w.imag < 0):
                    x = pw.real - pw.imag * (w.real - pw.real) / (w.imag - pw.imag)
                    if x > 0:
                        s = 1 if w.imag > 0 else -1
                        # two crossings inside one step are ordered by where they occur
                        frac = pw.imag / (pw.imag - w.imag)
                        events.append((i, frac, letter * s * sign))
        prev = ws
    events.sort()
    return Word(e for _, _, e in events)


def word_to_loop(w: Word, basepoint: complex = 0.25 + 0j) -> ParamPath:
    """Reference loop for a word: circles about 0 and 1 through ``basepoint``."""
    pieces = []
    for x in w.letters:
        c = 0j if abs(x) == 1 else 1 + 0j
        loop = circle(c, basepoint)
        pieces.append(loop if x > 0 else loop.reverse())
    if not pieces:
        return segment(basepoint, basepoint)
    return concat(*pieces)


# ---------------------------------------------------------------- recursions


REFERENCE_BASE = 0.25 + 0j


def reference_generators() -> Tuple[ParamPath, ParamPath]:
    """Positively oriented loops about 0 and 1 based at 1/4."""
    return circle(0j, REFERENCE_BASE), circle(1 + 0j, REFERENCE_BASE)


def _real_detour_path(a: float, b: float, p: complex, radius: float) -> ParamPath:
    """Real segment from ``a`` to ``b`` with a semicircle around ``p`` on its left."""
    d = 1.0 if b > a else -1.0
    p = p.real
    before = segment(complex(a), complex(p - d * radius))
    # the left of a rightward path is the upper half plane
    if d > 0:
        bend = arc(complex(p), radius, math.pi, 0.0)
    else:
        bend = arc(complex(p), radius, 0.0, -math.pi)
    after = segment(complex(p + d * radius), complex(b))
    return concat(before, bend, after)


def connecting_path(z0: complex, target: complex, radius: float = DETOUR_RADIUS) -> Optional[ParamPath]:
    """Path from ``z0`` to ``target`` used to move generators to ``z0``.

    A straight segment when it keeps away from 0 and 1; otherwise the real
    route through exactly one of 0, 1, infinity, bent to the left around it.
    Returns None when the points coincide.
    """
    if abs(z0 - target) < 1e-14:
        return None
    seg = segment(z0, target)
    if _segment_clearance(z0, target) >= radius:
        return seg
    if abs(z0.imag) > 1e-12 or abs(target.imag) > 1e-12:
        raise ValueError("segment passes a puncture but endpoints are not real")
    a, b = z0.real, target.real
    lo, hi = min(a, b), max(a, b)
    inside = [p for p in (0.0, 1.0) if lo < p < hi]
    if len(inside) == 1:
        return _real_detour_path(a, b, complex(inside[0]), radius)
    outside = [p for p in (0.0, 1.0) if not lo < p < hi]
    if not outside:
        # the direct route passes both finite punctures; go through infinity instead
        ua, ub = 1.0 / a, 1.0 / b
        return in_chart(_real_detour_path(ua, ub, 0j, radius))
    raise ValueError(f"no real route from {z0} to {target} through exactly one puncture")


def _segment_clearance(a: complex, b: complex) -> float:
    out = math.inf
    for p in (0j, 1 + 0j):
        d = b - a
        t = 0.0 if d == 0 else max(0.0, min(1.0, ((p - a) * d.conjugate()).real / abs(d) ** 2))
        out = min(out, abs(a + t * d - p))
    return out


@dataclass
class Derivation:
    recursion: WreathRecursion
    residual: float
    signs: Tuple[int, int]
    alpha_swaps_by_lift: bool
    points: Tuple[complex, complex]


def _generator_loops(mobius: Mobius, z0: complex, signs: Tuple[int, int]):
    ell = connecting_path(z0, mobius(REFERENCE_BASE))
    loops = []
    for gen, s in zip(reference_generators(), signs):
        g = gen if s > 0 else gen.reverse()
        moved = g.image(mobius)
        loops.append(moved if ell is None else concat(ell, moved, ell.reverse()))
    return ell, loops


def _decode(loop: ComplexPath, ell: Optional[ParamPath], mobius: Mobius, signs) -> Word:
    """Word of a loop at ``z0`` with respect to the transported generators."""
    if ell is not None:
        e = sample_path(ell)
        loop = e.reverse() + loop + e
    return loop_to_word(loop.image(mobius.inverse()), REFERENCE_BASE, signs)


def derive_recursion(g: RationalMap, mobius: Mobius, z0: Optional[complex],
                     signs: Tuple[int, int] = (1, 1)) -> Derivation:
    """Wreath recursion of ``g`` at the fixed point ``z0`` from lifted loops.

    Generators are the reference loops pushed forward by ``mobius`` and
    joined to ``z0`` by ``connecting_path``.  Label 1 is ``z0``, label 2 its
    other preimage, reached by lifting the first generator.  With ``z0``
    None the formal setup for ``z^2`` is used: basepoint 1/4, label 1 at 1/2
    joined along the real line and label 2 at -1/2 joined by the upper
    semicircle.
    """
    if z0 is None:
        return _derive_formal(g, signs)
    if chordal(g(z0), z0) > 1e-9:
        raise ValueError(f"{z0} is not a fixed point")
    ell, (alpha, beta) = _generator_loops(mobius, z0, signs)
    conn2 = lift_path(g, alpha, z0)
    z1 = conn2.end
    if chordal(z1, z0) < 1e-6:
        raise LiftError("the first generator does not swap the two preimages")
    starts = {1: z0, 2: z1}
    conns = {1: constant_path(z0), 2: conn2}
    res = conn2.residual
    table = {}
    swaps = {}
    for name, loop in (("a", alpha), ("b", beta)):
        words = []
        for x in (1, 2):
            lifted = lift_path(g, loop, starts[x])
            res = max(res, lifted.residual)
            y = 1 if chordal(lifted.end, z0) < chordal(lifted.end, z1) else 2
            if x == 1:
                swaps[name] = (y == 2)
            closed = conns[x] + lifted + conns[y].reverse()
            words.append(_decode(closed, ell, mobius, signs))
        table[name] = tuple(words)
    rec = WreathRecursion(table["a"], swaps["a"], table["b"], swaps["b"])
    return Derivation(rec, res, signs, swaps["a"], (z0, z1))


def _derive_formal(g: RationalMap, signs) -> Derivation:
    base = REFERENCE_BASE
    pre = {1: 0.5 + 0j, 2: -0.5 + 0j}
    for p in pre.values():
        if chordal(g(p), base) > 1e-12:
            raise ValueError("formal setup expects the preimages of 1/4 to be 1/2 and -1/2")
    conns = {1: sample_path(segment(base, pre[1])),
             2: sample_path(arc(-0.125 + 0j, 0.375, 0.0, math.pi))}
    gens = reference_generators()
    res = 0.0
    table, swaps = {}, {}
    for name, gen, s in (("a", gens[0], signs[0]), ("b", gens[1], signs[1])):
        loop = gen if s > 0 else gen.reverse()
        words = []
        for x in (1, 2):
            lifted = lift_path(g, loop, pre[x])
            res = max(res, lifted.residual)
            y = 1 if chordal(lifted.end, pre[1]) < chordal(lifted.end, pre[2]) else 2
            if x == 1:
                swaps[name] = (y == 2)
            closed = conns[x] + lifted + conns[y].reverse()
            words.append(loop_to_word(closed, base, signs))
        table[name] = tuple(words)
    rec = WreathRecursion(table["a"], swaps["a"], table["b"], swaps["b"])
    return Derivation(rec, res, signs, swaps["a"], (pre[1], pre[2]))


SIGN_CHOICES = ((1, 1), (-1, 1), (1, -1), (-1, -1))


def calibrate(g: RationalMap, mobius: Mobius, z0: Optional[complex],
              expected: WreathRecursion) -> Optional[Tuple[int, int]]:
    """First generator orientation for which the derivation reproduces ``expected``."""
    for signs in SIGN_CHOICES:
        try:
            d = derive_recursion(g, mobius, z0, signs)
        except (LiftError, TangentialCrossing):
            continue
        if d.recursion == expected:
            return signs
    return None


# ---------------------------------------------------------------- normalisation


def moduli_map_value(edges: Mapping[str, Tuple[str, int]], x: complex) -> complex:
    """The map on moduli space at ``x`` for a portrait on ``0, 1, inf, *``.

    The source sphere is marked by ``(0, 1, inf, x)`` and the target by
    ``(0, 1, inf, y)``.  Both critical points must be among ``0, 1, inf``.
    The quadratic map is ``A(m(z)^2)`` with ``m`` sending the critical points
    to 0 and infinity; ``A`` is fixed by the three marked points whose images
    are known, and ``y`` is the image of the remaining one.
    """
    source = {"0": 0j, "1": 1 + 0j, "inf": INF, "*": complex(x)}
    crit = [k for k in ("0", "1", "inf") if edges[k][1] == 2]
    if len(crit) != 2 or edges["*"][1] != 1:
        raise ValueError("both critical points must be among 0, 1, inf")
    rest = [k for k in ("0", "1", "inf") if k not in crit][0]
    m = mobius_three([source[crit[0]], source[crit[1]], source[rest]], [0j, INF, 1 + 0j])

    def w(label: str) -> complex:
        u = m(source[label])
        return INF if is_inf(u) else u * u
    known = [k for k in source if edges[k][0] != "*"]
    moving = [k for k in source if edges[k][0] == "*"]
    if len(known) != 3 or len({edges[k][0] for k in known}) != 3:
        raise ValueError("exactly one marked point must map to the moving point")
    a = mobius_three([w(k) for k in known], [source[edges[k][0]] for k in known])
    return a(w(moving[0]))
