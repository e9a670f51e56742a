"""Combinators that turn one bi-order of F2 into another.

Every oracle here can be written out as a JSON descriptor

    {"base": "magnus", "degree": 2, "max_degree": 32,
     "transforms": [{"kind": ..., "params": {...}}, ...]}

with transforms applied left to right, so certificates can name the exact
order they rely on.
"""

from __future__ import annotations

import json
from pathlib import Path

from biorder import freeword as fw
from biorder.errors import IdentityInput
from biorder.groups import OrderedGroup, _cmp_with_identity
from biorder.magnus import (
    DEFAULT_DEGREE,
    DEFAULT_MAX_DEGREE,
    MagnusOracle,
    Monomial,
    SignOracle,
)


class _Derived(SignOracle):
    def __init__(self, inner: SignOracle):
        self.inner = inner

    def class_key(self, m):
        return self.inner.class_key(m)

    def _transform_entry(self) -> dict:
        raise NotImplementedError

    def descriptor(self) -> dict:
        d = self.inner.descriptor()
        d["transforms"] = d["transforms"] + [self._transform_entry()]
        return d


class Reverse(_Derived):
    def __init__(self, inner):
        super().__init__(inner)
        self.name = f"reverse({inner.name})"

    def sign(self, w):
        return -self.inner.sign(w)

    def arch_class(self, w):
        return self.inner.arch_class(w)

    def _transform_entry(self):
        return {"kind": "reverse", "params": {}}


class ConvexFlip(_Derived):
    """Reverse the order on the convex normal subgroup of classes at or below a threshold.

    The subgroup is every element whose class is ``threshold`` or comes after
    it in the monomial order, together with the identity.
    """

    def __init__(self, inner, threshold: Monomial):
        if not threshold:
            raise ValueError("threshold must be a nonconstant monomial")
        super().__init__(inner)
        self.threshold = threshold
        self._tkey = inner.class_key(threshold)
        self.name = f"flip[{threshold}]({inner.name})"

    def in_subgroup(self, w) -> bool:
        return not w or self.inner.class_key(self.inner.arch_class(w)) >= self._tkey

    def sign(self, w):
        s = self.inner.sign(w)
        return -s if self.in_subgroup(w) else s

    def arch_class(self, w):
        return self.inner.arch_class(w)

    def _transform_entry(self):
        return {"kind": "convex_flip", "params": {"threshold": self.threshold}}


_WHITELIST = {
    "swap": ("b", "a"),
    "inv_a": ("A", "b"),
    "right_mult": ("ab", "b"),
}


def _substitute(images: tuple[str, str], w: fw.Word) -> fw.Word:
    ia, ib = images
    table = {"a": ia, "A": fw.invert(ia), "b": ib, "B": fw.invert(ib)}
    out = fw.IDENTITY
    for ch in w:
        out = fw.multiply(out, table[ch])
    return out


class NielsenMap:
    """Composite ``s1 o s2 o ... o sk`` of whitelisted automorphisms."""

    def __init__(self, steps=()):
        steps = tuple(steps)
        for s in steps:
            if s not in _WHITELIST:
                raise ValueError(f"unknown Nielsen move {s!r}; allowed: {sorted(_WHITELIST)}")
        self.steps = steps
        images = ("a", "b")
        for s in reversed(steps):
            images = tuple(_substitute(_WHITELIST[s], img) for img in images)
        self.images = images

    def __call__(self, w: fw.Word) -> fw.Word:
        return _substitute(self.images, w)

    def __repr__(self):
        return f"NielsenMap({list(self.steps)}: a->{self.images[0]}, b->{self.images[1]})"

    @staticmethod
    def moves():
        return sorted(_WHITELIST)


class Pullback(_Derived):
    def __init__(self, inner, phi: NielsenMap):
        super().__init__(inner)
        self.phi = phi
        self.name = f"pullback[{','.join(phi.steps)}]({inner.name})"
        self._cache: dict[str, str] = {}

    def image(self, w):
        try:
            return self._cache[w]
        except KeyError:
            v = self._cache[w] = self.phi(w)
            return v

    def sign(self, w):
        if not w:
            raise IdentityInput("the identity has no sign")
        return self.inner.sign(self.image(w))

    def arch_class(self, w):
        return self.inner.arch_class(self.image(w))

    def _transform_entry(self):
        return {"kind": "pullback", "params": {"steps": list(self.phi.steps)}}


def reverse(o: SignOracle) -> SignOracle:
    return Reverse(o)


def convex_flip(o: SignOracle, threshold: Monomial) -> SignOracle:
    return ConvexFlip(o, threshold)


def pullback(o: SignOracle, phi: NielsenMap) -> SignOracle:
    return Pullback(o, phi)


def monomial_swap(o: SignOracle) -> SignOracle:
    if not isinstance(o, MagnusOracle):
        raise TypeError("monomial_swap applies to a Magnus oracle")
    return MagnusOracle(o.degree, o.max_degree, swapped=not o.swapped)


# --- descriptors -----------------------------------------------------------

def from_descriptor(desc) -> SignOracle:
    """Build an oracle from a descriptor dict, a JSON path, or a short name."""
    if isinstance(desc, str):
        if desc == "magnus":
            return MagnusOracle()
        if desc == "magnus-swapped":
            return MagnusOracle(swapped=True)
        desc = json.loads(Path(desc).read_text())
    if desc.get("base") != "magnus":
        raise ValueError(f"unsupported base order {desc.get('base')!r}")
    o: SignOracle = MagnusOracle(
        int(desc.get("degree", DEFAULT_DEGREE)),
        int(desc.get("max_degree", DEFAULT_MAX_DEGREE)),
    )
    for i, t in enumerate(desc.get("transforms", [])):
        kind = t["kind"]
        params = t.get("params", {})
        if kind == "reverse":
            o = Reverse(o)
        elif kind == "convex_flip":
            o = ConvexFlip(o, params["threshold"])
        elif kind == "pullback":
            o = Pullback(o, NielsenMap(params["steps"]))
        elif kind == "monomial_swap":
            if i != 0:
                raise ValueError("monomial_swap must be the first transform")
            o = monomial_swap(o)
        else:
            raise ValueError(f"unknown transform kind {kind!r}")
    return o


def degree3_thresholds() -> list[Monomial]:
    """Class thresholds of degree at most 3, in monomial order.

    These are the leading monomials that actually occur; words up to length 8
    already realise every class of degree at most 3.
    """
    from biorder.magnus import class_census

    return [m for m in class_census(8) if len(m) <= 3]


def nielsen_maps(max_length: int = 2) -> list[NielsenMap]:
    out = []
    frontier = [()]
    for _ in range(max_length):
        frontier = [s + (m,) for s in frontier for m in NielsenMap.moves()]
        out.extend(NielsenMap(s) for s in frontier)
    return out


def family(base: SignOracle | None = None) -> list[SignOracle]:
    """The structured transform family, in the order the witness search scans it.

    Reversal first, then the swapped monomial order, convex flips at each class
    threshold, reversed flips (which keep the low classes and reverse the rest),
    and finally pullbacks along Nielsen maps of length at most two.
    """
    base = base or MagnusOracle()
    thresholds = degree3_thresholds()
    out: list[SignOracle] = [Reverse(base), monomial_swap(base)]
    out += [ConvexFlip(base, m) for m in thresholds[1:]]
    out += [Reverse(ConvexFlip(base, m)) for m in thresholds[1:]]
    out += [Pullback(base, phi) for phi in nielsen_maps(2)]
    return out


# --- lexicographic Z-extensions -------------------------------------------

class LexExtension(OrderedGroup):
    """``Z x base`` ordered lexicographically.

    Elements are pairs ``(k, h)`` with ``k`` the exponent of the new generator
    ``z``. With ``variant="prepend"`` the Z factor dominates, so ``z`` sits
    above every class of ``base``; with ``"append"`` the base dominates and
    ``z`` sits below every nontrivial class.
    """

    def __init__(self, base: OrderedGroup, variant: str = "prepend"):
        if variant not in ("prepend", "append"):
            raise ValueError("variant is 'prepend' or 'append'")
        self.base = base
        self.variant = variant
        self.identity = (0, base.identity)

    @property
    def z(self):
        return (1, self.base.identity)

    def embed(self, h):
        return (0, h)

    def multiply(self, x, y):
        return (x[0] + y[0], self.base.multiply(x[1], y[1]))

    def invert(self, x):
        return (-x[0], self.base.invert(x[1]))

    def sign(self, x):
        k, h = x
        base_trivial = self.base.is_identity(h)
        if self.variant == "prepend":
            if k:
                return 1 if k > 0 else -1
            return self.base.sign(h)
        if not base_trivial:
            return self.base.sign(h)
        if k:
            return 1 if k > 0 else -1
        raise IdentityInput("the identity has no sign")

    def _rank(self, x):
        # (tier, base element) where a larger tier means a larger class
        k, h = x
        if self.variant == "prepend":
            return (1, None) if k else (0, h)
        if not self.base.is_identity(h):
            return (1, h)
        return (0, None)

    def arch_cmp(self, x, y):
        trivial = _cmp_with_identity(self, x, y)
        if trivial is not None:
            return trivial
        tx, hx = self._rank(x)
        ty, hy = self._rank(y)
        if tx != ty:
            return "<<" if tx < ty else ">>"
        if hx is None:
            return "~"
        return self.base.arch_cmp(hx, hy)


def lex_prepend_Z(base: OrderedGroup) -> LexExtension:
    return LexExtension(base, "prepend")


def lex_append_Z(base: OrderedGroup) -> LexExtension:
    return LexExtension(base, "append")
