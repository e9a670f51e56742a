"""Finite-stage dynamical realization of a bi-ordered F2.

A :class:`Stage` embeds the first ``N`` ShortLex words into the rationals
preserving the order; left multiplication by ``g`` then induces a PL map
through the control points ``(t(h), t(gh))``. Archimedean classes are laid out
on the gaps of the middle-thirds Cantor set by :func:`build_tau`.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass, field
from fractions import Fraction

from biorder import freeword as fw
from biorder.errors import EmptySupport, NotPositive
from biorder.homeo import RationalPLMap, rescale
from biorder.magnus import Monomial, SignOracle


def qstr(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def qparse(s: str) -> Fraction:
    return Fraction(s)


@dataclass
class Stage:
    oracle: SignOracle
    elements: list
    t: dict  # word -> Fraction

    @property
    def N(self) -> int:
        return len(self.elements)

    @property
    def bounds(self) -> tuple[Fraction, Fraction]:
        vals = self.t.values()
        return min(vals) - 1, max(vals) + 1

    def ordered(self) -> list:
        return sorted(self.elements, key=self.t.__getitem__)

    def to_json(self) -> dict:
        return {
            "order": self.oracle.descriptor(),
            "N": self.N,
            "t": [{"word": fw.fmt(w), "value": qstr(self.t[w])} for w in self.elements],
        }


def build_embedding(o: SignOracle, N: int) -> Stage:
    """Greedy order-preserving embedding of the first ``N`` words into Q.

    Each new word lands at the midpoint of its two order-neighbours, or one
    unit beyond the current extreme.
    """
    words = fw.enumerate_words(N)
    t: dict[str, Fraction] = {}
    chain: list[tuple[Fraction, str]] = []  # sorted by value
    for w in words:
        if not chain:
            t[w] = Fraction(0)
            chain.append((t[w], w))
            continue
        lo, hi = 0, len(chain)
        while lo < hi:
            mid = (lo + hi) // 2
            if o.compare(chain[mid][1], w) < 0:
                lo = mid + 1
            else:
                hi = mid
        if lo == 0:
            val = chain[0][0] - 1
        elif lo == len(chain):
            val = chain[-1][0] + 1
        else:
            val = (chain[lo - 1][0] + chain[lo][0]) / 2
        t[w] = val
        insort(chain, (val, w))
    return Stage(o, words, t)


def check_order_preserving(stage: Stage) -> bool:
    """Exact check: consecutive elements in t-order are increasing for the oracle."""
    seq = stage.ordered()
    vals = [stage.t[w] for w in seq]
    if len(set(vals)) != len(vals):
        return False
    return all(stage.oracle.compare(u, v) < 0 for u, v in zip(seq, seq[1:]))


def control_points(g: fw.Word, stage: Stage) -> list[tuple[Fraction, Fraction]]:
    pts = []
    for h in stage.elements:
        gh = fw.multiply(g, h)
        if gh in stage.t:
            pts.append((stage.t[h], stage.t[gh]))
    return sorted(pts)


def realize(g: fw.Word, stage: Stage) -> RationalPLMap:
    """PL map of ``[lo, hi]`` induced by ``g``, rescaled into ``[0, 1]``.

    ``[lo, hi]`` is the stage's bounding interval (one unit past the extreme
    values of ``t``); its endpoints are fixed.
    """
    pts = control_points(g, stage)
    if not pts:
        raise EmptySupport(f"no h with h and {fw.fmt(g)}h both in the stage")
    lo, hi = stage.bounds
    return rescale([(lo, lo)] + pts + [(hi, hi)], lo, hi)


def evaluate(f: RationalPLMap, stage: Stage, x: Fraction) -> Fraction:
    """Apply a rescaled realization to a point in stage coordinates."""
    lo, hi = stage.bounds
    span = hi - lo
    return lo + span * f((x - lo) / span)


def check_homomorphism(g1: fw.Word, g2: fw.Word, stage: Stage) -> dict:
    """Compare ``rho(g1 g2)`` with ``rho(g1) o rho(g2)`` at every shared point."""
    g12 = fw.multiply(g1, g2)
    hs = [h for h in stage.elements
          if fw.multiply(g2, h) in stage.t and fw.multiply(g12, h) in stage.t]
    out = {"g1": fw.fmt(g1), "g2": fw.fmt(g2), "N": stage.N, "checked": len(hs),
           "failures": [], "vacuous": not hs}
    if hs:
        f12, f1, f2 = realize(g12, stage), realize(g1, stage), realize(g2, stage)
        for h in hs:
            x = stage.t[h]
            lhs = evaluate(f12, stage, x)
            rhs = evaluate(f1, stage, evaluate(f2, stage, x))
            if lhs != rhs or lhs != stage.t[fw.multiply(g12, h)]:
                out["failures"].append(fw.fmt(h))
    out["passed"] = not out["failures"]
    return out


def check_positivity(g: fw.Word, stage: Stage) -> dict:
    """For positive ``g``: ``t(gh) > t(h)`` wherever both are in the stage."""
    if not g or stage.oracle.sign(g) < 0:
        raise NotPositive(f"{fw.fmt(g)} is not positive")
    pts = control_points(g, stage)
    bad = [(qstr(x), qstr(y)) for x, y in pts if not y > x]
    f = realize(g, stage) if pts else None
    above = f is not None and all(y >= x for x, y in f.points)
    strict = f is not None and any(y > x for x, y in f.points)
    return {"g": fw.fmt(g), "N": stage.N, "checked": len(pts), "failures": bad,
            "map_above_diagonal": above, "strict_point": strict,
            "passed": not bad and (not pts or (above and strict))}


# --- Cantor gaps -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class GapInterval:
    p: Fraction
    q: Fraction
    address: str = field(compare=False)

    def to_json(self) -> dict:
        return {"address": self.address, "endpoints": [qstr(self.p), qstr(self.q)]}


def cantor_gap(address: str) -> GapInterval:
    """Middle third removed from the construction interval named by ``address``."""
    lo, width = Fraction(0), Fraction(1)
    for ch in address:
        width /= 3
        if ch == "2":
            lo += 2 * width
        elif ch != "0":
            raise ValueError("Cantor addresses use the digits 0 and 2")
    return GapInterval(lo + width / 3, lo + 2 * width / 3, address)


def gap_between(I: GapInterval, J: GapInterval) -> GapInterval:
    """A gap strictly between ``I < J``."""
    if not I.p < J.p:
        raise ValueError("gap_between needs I < J")
    if J.address.startswith(I.address):
        # J sits in the right part of I's construction interval
        return cantor_gap(J.address + "0")
    return cantor_gap(I.address + "2")


@dataclass
class ClassAtlas:
    oracle: SignOracle
    length_bound: int
    classes: list  # ascending: each much less than the next
    tau: dict  # class -> GapInterval
    representative: dict  # class -> first word realising it

    def t_of(self, g: fw.Word) -> Fraction:
        """Left endpoint of the gap assigned to the class of ``g``."""
        return self.tau[self.oracle.arch_class(g)].p

    def is_order_isomorphism(self) -> bool:
        for i, c1 in enumerate(self.classes):
            for c2 in self.classes[i + 1:]:
                w1, w2 = self.representative[c1], self.representative[c2]
                if self.oracle.arch_cmp(w1, w2) != "<<":
                    return False
                if not self.tau[c1] < self.tau[c2]:
                    return False
        gaps = [self.tau[c] for c in self.classes]
        return len(set(gaps)) == len(gaps)

    def to_json(self) -> list[dict]:
        return [{"class": c, **self.tau[c].to_json()} for c in self.classes]


def insert_class(tau: dict, below=None, above=None) -> GapInterval:
    """Gap for a new class given its neighbours among the classes already placed."""
    if not tau:
        return cantor_gap("")
    if below is None and above is None:
        raise ValueError("need a neighbour once the atlas is non-empty")
    if above is None:
        return cantor_gap(tau[below].address + "2")
    if below is None:
        return cantor_gap(tau[above].address + "0")
    return gap_between(tau[below], tau[above])


def build_tau(o: SignOracle, L: int) -> ClassAtlas:
    """Order-preserving assignment of Cantor gaps to the classes of words up to ``L``.

    Classes are inserted from the smallest upward; the first gets the root gap
    ``(1/3, 2/3)``.
    """
    reps: dict[Monomial, str] = {}
    for w in fw.ball(L)[1:]:
        reps.setdefault(o.arch_class(w), w)
    # larger class key = smaller class
    classes = sorted(reps, key=o.class_key, reverse=True)
    tau: dict = {}
    placed: list = []
    for c in classes:
        below = placed[-1] if placed else None
        tau[c] = insert_class(tau, below=below)
        placed.append(c)
    return ClassAtlas(o, L, classes, tau, reps)


def class_action(atlas: ClassAtlas, g: fw.Word) -> dict:
    """Where conjugation by ``g`` sends each class's gap."""
    o = atlas.oracle
    out = {}
    for c in atlas.classes:
        moved = o.arch_class(fw.conjugate(atlas.representative[c], g))
        out[c] = moved
    return out


def stage_json(stage: Stage, atlas: ClassAtlas | None = None) -> dict:
    d = stage.to_json()
    d["tau"] = atlas.to_json() if atlas is not None else []
    if atlas is not None:
        d["tau_length"] = atlas.length_bound
    return d
