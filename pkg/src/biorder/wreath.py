"""Ordered restricted wreath product ``Z wr_Omega H`` used to close a gap.

Given a bi-ordered base group ``H`` with a gap ``(h1, h2)`` (``h1 << h2`` and
nothing in between), let ``M`` be the stabiliser of the class of ``h1`` under
conjugation and ``Omega`` the left cosets of ``M``. Elements are written

    h0 * (z^k1)^(r1 M) * ... * (z^kn)^(rn M)

and stored as a head ``h0`` plus a tail of ``(coset representative, k)``
pairs sorted by the instance's coset order.

Conjugation convention: the multiplication below re-bases the left factor's
cosets by *left* multiplication with the right factor's head. That is only
coherent with the comparison rules when the conjugates inside those rules are
taken as ``r^-1 x r``, so :meth:`WreathProduct.rule_conj` uses that form. The
opposite choice breaks conjugation invariance of the cone on the lamplighter
instance (see ``tests/test_wreath.py``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from biorder import freeword as fw
from biorder.errors import IdentityInput
from biorder.groups import F2Group, OrderedGroup, _cmp_with_identity
from biorder.magnus import MAGNUS


class BaseGroupOracle(OrderedGroup):
    """An ordered group with a designated gap and canonical coset representatives."""

    name = "base"
    gap: tuple

    def coset_rep(self, h):
        raise NotImplementedError

    def coset_key(self, rep):
        raise NotImplementedError

    def coset_eq(self, h1, h2) -> bool:
        return self.coset_rep(h1) == self.coset_rep(h2)

    def in_M(self, h) -> bool:
        """Definitional membership: ``h`` fixes the class of the gap's lower end."""
        low = self.gap[0]
        return self.arch_cmp(self.conjugate(low, h), low) == "~"

    def generators(self) -> list:
        raise NotImplementedError

    def sample(self, rng: random.Random):
        raise NotImplementedError

    def ball(self, radius: int) -> list:
        gens = self.generators()
        gens = gens + [self.invert(g) for g in gens]
        seen = {self.identity}
        frontier = [self.identity]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.multiply(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return list(seen)

    def fmt(self, x) -> str:
        return str(x)


class F2MagnusBase(F2Group, BaseGroupOracle):
    """F2 with the Magnus order and gap ``(b, a)``.

    Conjugation fixes every Magnus class, so ``M`` is all of F2 and Omega is a
    single point.
    """

    name = "f2-magnus"

    def __init__(self):
        super().__init__(MAGNUS)
        self.gap = ("b", "a")

    def coset_rep(self, h):
        return fw.IDENTITY

    def coset_key(self, rep):
        return 0

    def generators(self):
        return ["a", "b"]

    def sample(self, rng, max_length=3):
        n = rng.randint(0, max_length)
        return fw.reduce(rng.choice(fw.LETTERS) for _ in range(n))


class Lamplighter(BaseGroupOracle):
    """``Z wr Z`` with the lexicographic bi-order.

    Elements are ``(lamps, shift)`` with ``lamps`` a sorted tuple of
    ``(position, value)`` pairs with nonzero values. Multiplication is
    ``(f, m)(g, n) = (f + g(. - m), m + n)``, so the shift ``t`` conjugates
    the lamp at ``i`` to the lamp at ``i + 1``. An element is positive when its
    shift is positive, or its shift is zero and its lowest lamp is positive.
    Classes: all elements with nonzero shift form the top class; a lamp
    configuration's class is its lowest position, lower positions being larger.
    The gap is ``(z1, z0)`` (single lamps at 1 and 0) and ``M`` is the
    zero-shift subgroup.
    """

    name = "lamplighter"
    identity = ((), 0)

    def __init__(self):
        self.gap = (self.lamp(1), self.lamp(0))

    @staticmethod
    def lamp(i, v=1):
        return (((i, v),), 0)

    @staticmethod
    def shift(m):
        return ((), m)

    @staticmethod
    def _add(f, g):
        acc = dict(f)
        for i, v in g:
            acc[i] = acc.get(i, 0) + v
        return tuple(sorted((i, v) for i, v in acc.items() if v))

    def multiply(self, x, y):
        (f, m), (g, n) = x, y
        return (self._add(f, tuple((i + m, v) for i, v in g)), m + n)

    def invert(self, x):
        f, m = x
        return (tuple((i - m, -v) for i, v in f), -m)

    def sign(self, x):
        f, m = x
        if m:
            return 1 if m > 0 else -1
        if not f:
            raise IdentityInput("the identity has no sign")
        return 1 if f[0][1] > 0 else -1

    def _tier(self, x):
        f, m = x
        return (1, 0) if m else (0, -f[0][0])

    def arch_cmp(self, x, y):
        trivial = _cmp_with_identity(self, x, y)
        if trivial is not None:
            return trivial
        tx, ty = self._tier(x), self._tier(y)
        if tx == ty:
            return "~"
        return "<<" if tx < ty else ">>"

    def coset_rep(self, h):
        return ((), h[1])

    def coset_key(self, rep):
        return rep[1]

    def generators(self):
        return [self.shift(1), self.lamp(0)]

    def sample(self, rng, spread=2):
        lamps = {}
        for _ in range(rng.randint(0, 3)):
            lamps[rng.randint(-spread, spread)] = rng.randint(-spread, spread)
        f = tuple(sorted((i, v) for i, v in lamps.items() if v))
        return (f, rng.randint(-spread, spread))

    def fmt(self, x):
        f, m = x
        lamps = ",".join(f"{i}:{v}" for i, v in f)
        return f"[{lamps}|t^{m}]"


@dataclass(frozen=True)
class WreathElement:
    head: object
    tail: tuple = ()  # ((coset rep, exponent), ...) sorted by coset order


class WreathProduct:
    def __init__(self, base: BaseGroupOracle):
        self.base = base
        self.identity = WreathElement(base.identity, ())

    # -- construction -------------------------------------------------------
    def normal(self, head, pairs) -> WreathElement:
        acc: dict = {}
        for rep, k in pairs:
            r = self.base.coset_rep(rep)
            acc[r] = acc.get(r, 0) + k
        tail = tuple(sorted(((r, k) for r, k in acc.items() if k),
                            key=lambda rk: self.base.coset_key(rk[0])))
        return WreathElement(head, tail)

    def embed(self, h) -> WreathElement:
        return WreathElement(h, ())

    def z(self, rep=None, k: int = 1) -> WreathElement:
        rep = self.base.identity if rep is None else rep
        return self.normal(self.base.identity, [(rep, k)])

    # -- group law ----------------------------------------------------------
    def multiply(self, x: WreathElement, y: WreathElement) -> WreathElement:
        B = self.base
        head = B.multiply(x.head, y.head)
        moved = [(B.multiply(y.head, r), k) for r, k in x.tail]
        return self.normal(head, moved + list(y.tail))

    def invert(self, x: WreathElement) -> WreathElement:
        B = self.base
        hinv = B.invert(x.head)
        return self.normal(hinv, [(B.multiply(hinv, r), -k) for r, k in x.tail])

    def is_identity(self, x) -> bool:
        return x == self.identity

    def power(self, x, n):
        if n < 0:
            x, n = self.invert(x), -n
        out = self.identity
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    def conjugate(self, x, y):
        return self.multiply(self.multiply(y, x), self.invert(y))

    # -- order --------------------------------------------------------------
    def rule_conj(self, h, r):
        """``r^-1 h r``: the conjugate used by the comparison rules."""
        B = self.base
        return B.multiply(B.multiply(B.invert(r), h), r)

    def cmp_ll(self, u, v) -> str:
        """Relation between operands ``("h", base element)`` or ``("z", coset rep)``.

        Returns ``"<<"``, ``">>"``, ``"~"`` (base elements of one class) or
        ``"="`` (the same coset symbol).
        """
        B = self.base
        low, high = B.gap
        ku, xu = u
        kv, xv = v
        if ku == "h" and kv == "h":
            return B.arch_cmp(xu, xv)
        if ku == "z" and kv == "z":
            if B.coset_eq(xu, xv):
                return "="
            rel = B.arch_cmp(self.rule_conj(low, xu), self.rule_conj(low, xv))
            if rel == "~":
                raise ValueError("distinct cosets with equal classes: not a gap instance")
            return rel
        if ku == "z":
            return {"<<": ">>", ">>": "<<"}[self.cmp_ll(v, u)]
        # base element against a coset symbol
        if B.arch_cmp(xu, self.rule_conj(high, xv)) == "<<":
            return "<<"
        if B.arch_cmp(xu, self.rule_conj(low, xv)) == ">>":
            return ">>"
        raise ValueError("element sits inside the gap: not a gap instance")

    def dominant(self, x: WreathElement):
        """Tail entry whose coset symbol is largest."""
        best = x.tail[0]
        for entry in x.tail[1:]:
            if self.cmp_ll(("z", entry[0]), ("z", best[0])) == ">>":
                best = entry
        return best

    def sign(self, x: WreathElement) -> int:
        if self.is_identity(x):
            raise IdentityInput("the identity has no sign")
        if not x.tail:
            return self.base.sign(x.head)
        rep, k = self.dominant(x)
        if self.cmp_ll(("h", x.head), ("z", rep)) == "<<":
            return 1 if k > 0 else -1
        return self.base.sign(x.head)

    def is_positive(self, x) -> bool:
        return not self.is_identity(x) and self.sign(x) > 0

    def abs(self, x):
        if self.is_identity(x) or self.sign(x) > 0:
            return x
        return self.invert(x)

    # -- random elements ----------------------------------------------------
    def sample(self, rng: random.Random, max_tail: int = 3, max_exp: int = 3) -> WreathElement:
        head = self.base.sample(rng)
        pairs = []
        for _ in range(rng.randint(0, max_tail)):
            k = rng.randint(-max_exp, max_exp)
            pairs.append((self.base.sample(rng), k))
        return self.normal(head, pairs)

    def fmt(self, x: WreathElement) -> str:
        parts = [self.base.fmt(x.head)]
        parts += [f"(z^{k})^{self.base.fmt(r)}M" for r, k in x.tail]
        return " ".join(parts)


INSTANCES = {
    "f2-magnus": F2MagnusBase,
    "lamplighter": Lamplighter,
}


def make_instance(name: str) -> WreathProduct:
    try:
        return WreathProduct(INSTANCES[name]())
    except KeyError:
        raise ValueError(f"unknown instance {name!r}; choose from {sorted(INSTANCES)}") from None


def wr_multiply(H: WreathProduct, x, y):
    return H.multiply(x, y)


def wr_invert(H: WreathProduct, x):
    return H.invert(x)


def wr_cmp_ll(H: WreathProduct, u, v):
    return H.cmp_ll(u, v)


def wr_sign(H: WreathProduct, x):
    return H.sign(x)


def much_less(H: WreathProduct, x, y, n_max: int = 8) -> bool:
    """``x << y`` tested through the cone: ``|y| |x|^-n > 1`` for n = 1..n_max."""
    ax, ay = H.abs(x), H.abs(y)
    return all(H.is_positive(H.multiply(ay, H.power(ax, -n))) for n in range(1, n_max + 1))


def gap_elimination_check(H: WreathProduct, n_max: int = 8, low=None, mid=None, high=None) -> dict:
    """Check ``low << mid << high`` in the wreath product (defaults: the gap around ``z``)."""
    B = H.base
    low = H.embed(B.gap[0]) if low is None else low
    mid = H.z() if mid is None else mid
    high = H.embed(B.gap[1]) if high is None else high
    lower = much_less(H, low, mid, n_max)
    upper = much_less(H, mid, high, n_max)
    return {
        "instance": B.name,
        "low": H.fmt(low),
        "mid": H.fmt(mid),
        "high": H.fmt(high),
        "n_max": n_max,
        "low_below_mid": lower,
        "mid_below_high": upper,
        "passed": lower and upper,
    }


def verify_gap(B: BaseGroupOracle, radius: int = 3) -> dict:
    """Sampled check that the designated pair is a gap and that ``M`` is a subgroup."""
    low, high = B.gap
    elems = B.ball(radius)
    inside = [x for x in elems
              if not B.is_identity(x)
              and B.arch_cmp(low, x) == "<<" and B.arch_cmp(x, high) == "<<"]
    is_gap = B.arch_cmp(low, high) == "<<" and not inside
    coset_ok = all(B.coset_eq(x, y) == B.in_M(B.multiply(B.invert(y), x))
                   for x in elems[:60] for y in elems[:60])
    sub_ok = all(B.in_M(B.multiply(x, y))
                 for x in elems if B.in_M(x) for y in elems[:60] if B.in_M(y))
    return {"radius": radius, "ball_size": len(elems), "is_gap": is_gap,
            "between": [B.fmt(x) for x in inside[:5]],
            "coset_eq_matches_M": coset_ok, "M_closed": sub_ok}


def axiom_suite(H: WreathProduct, samples: int, seed: int = 0) -> dict:
    """Seeded sampling of the group axioms and the cone axioms for the wreath order."""
    rng = random.Random(seed)
    fails = {"associativity": 0, "identity": 0, "inverse": 0,
             "cone_product": 0, "cone_conjugation": 0, "trichotomy": 0}
    checked = dict.fromkeys(fails, 0)
    for _ in range(samples):
        x, y, w = H.sample(rng), H.sample(rng), H.sample(rng)
        checked["associativity"] += 1
        if H.multiply(H.multiply(x, y), w) != H.multiply(x, H.multiply(y, w)):
            fails["associativity"] += 1
        checked["identity"] += 1
        if H.multiply(H.identity, x) != x or H.multiply(x, H.identity) != x:
            fails["identity"] += 1
        checked["inverse"] += 1
        xi = H.invert(x)
        if not (H.is_identity(H.multiply(x, xi)) and H.is_identity(H.multiply(xi, x))
                and H.invert(xi) == x):
            fails["inverse"] += 1
        if H.is_identity(x):
            continue
        checked["trichotomy"] += 1
        if H.is_positive(x) == H.is_positive(xi):
            fails["trichotomy"] += 1
        px = x if H.is_positive(x) else xi
        if not H.is_identity(y):
            py = y if H.is_positive(y) else H.invert(y)
            checked["cone_product"] += 1
            if not H.is_positive(H.multiply(px, py)):
                fails["cone_product"] += 1
        checked["cone_conjugation"] += 1
        if not H.is_positive(H.conjugate(px, w)):
            fails["cone_conjugation"] += 1
    return {"instance": H.base.name, "samples": samples, "seed": seed,
            "checked": checked, "violations": fails,
            "passed": not any(fails.values())}


def demo(instance: str, samples: int = 10_000, seed: int = 0) -> dict:
    H = make_instance(instance)
    return {
        "instance": instance,
        "gap": [H.base.fmt(g) for g in H.base.gap],
        "axioms": axiom_suite(H, samples, seed),
        "gap_verification": verify_gap(H.base),
        "gap_elimination": gap_elimination_check(H),
    }
