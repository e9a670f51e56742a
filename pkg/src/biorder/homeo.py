"""Exact piecewise-linear homeomorphisms of [0, 1] and their partial order.

A map is in the cone ``P`` when it is on or above the diagonal on some tail
``[t, 1]`` with ``t < 1`` and strictly above it somewhere in that tail. Maps
with rational breakpoints make this decidable: the set where ``f(x) < x`` is a
finite union of intervals with rational ends.
"""

from __future__ import annotations

import csv
import io
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

# f > g  <=>  g^-1 o f in P, so the map that is higher near 1 is the larger one.
ORDER_CONVENTION = "f > g iff pl_compose(pl_invert(g), f) is in P"

Point = tuple[Fraction, Fraction]


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalPLMap:
    points: tuple  # ((x, y), ...) strictly increasing in both coordinates

    def __post_init__(self):
        pts = tuple((_q(x), _q(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2 or pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise ValueError("a PL map must fix 0 and 1")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x0 < x1 and y0 < y1):
                raise ValueError("breakpoints must be strictly increasing in x and y")

    @classmethod
    def from_points(cls, points) -> "RationalPLMap":
        pts = sorted((_q(x), _q(y)) for x, y in points)
        return cls(tuple(_simplify(pts)))

    @classmethod
    def identity(cls) -> "RationalPLMap":
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    @property
    def xs(self):
        return [p[0] for p in self.points]

    def __call__(self, x) -> Fraction:
        x = _q(x)
        pts = self.points
        if not 0 <= x <= 1:
            raise ValueError("argument outside [0, 1]")
        i = bisect_right(self.xs, x) - 1
        if i >= len(pts) - 1:
            return pts[-1][1]
        (x0, y0), (x1, y1) = pts[i], pts[i + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def is_identity(self) -> bool:
        return all(x == y for x, y in self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y"])
        for x, y in self.points:
            w.writerow([str(x), str(y)])
        return buf.getvalue()


def _simplify(pts):
    """Drop breakpoints where the slope does not change."""
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        (x0, y0), (x1, y1), (x2, y2) = out[-1], pts[i], pts[i + 1]
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            out.append(pts[i])
    out.append(pts[-1])
    return out


def pl_invert(f: RationalPLMap) -> RationalPLMap:
    return RationalPLMap(tuple((y, x) for x, y in f.points))


def pl_compose(f: RationalPLMap, g: RationalPLMap) -> RationalPLMap:
    """``f o g`` (apply ``g`` first)."""
    ginv = pl_invert(g)
    xs = set(g.xs) | {ginv(x) for x in f.xs}
    return RationalPLMap(tuple(_simplify([(x, f(g(x))) for x in sorted(xs)])))


def pl_equal(f: RationalPLMap, g: RationalPLMap) -> bool:
    return tuple(_simplify(list(f.points))) == tuple(_simplify(list(g.points)))


@dataclass(frozen=True)
class TailAnalysis:
    violation_sup: Fraction
    strict_witness: Fraction | None


def tail_analysis(f: RationalPLMap) -> TailAnalysis:
    """Exact sup of ``{x : f(x) < x}`` and a point beyond it where ``f(x) > x``."""
    pts = f.points
    sup = Fraction(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        d0, d1 = y0 - x0, y1 - x1
        if d1 < 0:
            sup = max(sup, x1)
        elif d0 < 0:
            # d crosses zero inside the segment
            sup = max(sup, x0 + (x1 - x0) * d0 / (d0 - d1))
    witness = None
    if sup < 1:
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 <= sup:
                continue
            lo = max(x0, sup)
            dlo = f(lo) - lo
            dhi = y1 - x1
            if dlo > 0 and lo > sup:
                witness = lo
                break
            if dlo > 0 or dhi > 0:
                witness = (lo + x1) / 2
                break
    return TailAnalysis(sup, witness)


def in_P(f: RationalPLMap) -> bool:
    t = tail_analysis(f)
    return t.violation_sup < 1 and t.strict_witness is not None


def partial_cmp(f: RationalPLMap, g: RationalPLMap) -> str:
    """``"="``, ``">"``, ``"<"`` or ``"incomparable"`` under :data:`ORDER_CONVENTION`."""
    if pl_equal(f, g):
        return "="
    if in_P(pl_compose(pl_invert(g), f)):
        return ">"
    if in_P(pl_compose(pl_invert(f), g)):
        return "<"
    return "incomparable"


def random_map(rng: random.Random, max_breaks: int = 4, denom: int = 12) -> RationalPLMap:
    """Random PL homeomorphism with breakpoints on a grid of step ``1/denom``."""
    k = rng.randint(1, max_breaks)
    xs = sorted(rng.sample(range(1, denom), min(k, denom - 1)))
    ys = sorted(rng.sample(range(1, denom), len(xs)))
    pts = [(0, 0)] + [(Fraction(x, denom), Fraction(y, denom)) for x, y in zip(xs, ys)] + [(1, 1)]
    return RationalPLMap.from_points(pts)


def random_positive(rng: random.Random, **kw) -> RationalPLMap:
    while True:
        f = random_map(rng, **kw)
        if in_P(f):
            return f
        g = pl_invert(f)
        if in_P(g):
            return g


def rescale(points, lo, hi) -> RationalPLMap:
    """Conjugate a map of ``[lo, hi]`` (given by its breakpoints) into ``[0, 1]``."""
    lo, hi = _q(lo), _q(hi)
    span = hi - lo
    return RationalPLMap.from_points([((x - lo) / span, (y - lo) / span) for x, y in points])
