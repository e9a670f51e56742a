"""Truncated Magnus expansion and the bi-order it induces on F2.

The substitution ``a -> 1 + A``, ``b -> 1 + B`` embeds F2 in the ring of
noncommutative power series with integer coefficients. Comparing the first
nonzero coefficient of ``series(w) - 1`` (monomials ordered by degree, then
lexicographically) gives a total bi-order. The leading monomial of that
difference also names the Archimedean class of ``w``.

Monomials are strings over ``"AB"``; the empty string is the constant term.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from biorder import freeword as fw
from biorder.errors import IdentityInput, TruncationExceeded

DEFAULT_DEGREE = 2
DEFAULT_MAX_DEGREE = 32

Monomial = str

_SWAP = str.maketrans("AB", "BA")


def monomial_key(m: Monomial, swapped: bool = False) -> tuple[int, str]:
    """Sort key for the monomial order (degree first, then A < B)."""
    return (len(m), m.translate(_SWAP) if swapped else m)


def monomials(degree: int) -> list[Monomial]:
    """All monomials of exactly ``degree`` in increasing order."""
    out = [""]
    for _ in range(degree):
        out = [m + x for m in out for x in "AB"]
    return out


@dataclass(frozen=True)
class MagnusSeries:
    degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(len(m) > self.degree for m in self.coeffs):
            raise ValueError("monomial above truncation degree")
        if any(c == 0 for c in self.coeffs.values()):
            raise ValueError("zero coefficient stored")

    def __getitem__(self, m: Monomial) -> int:
        return self.coeffs.get(m, 0)

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        d = min(self.degree, other.degree)
        out: dict[str, int] = defaultdict(int)
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                if len(m1) + len(m2) <= d:
                    out[m1 + m2] += c1 * c2
        return MagnusSeries(d, {m: c for m, c in out.items() if c})

    def truncate(self, degree: int) -> "MagnusSeries":
        return MagnusSeries(degree, {m: c for m, c in self.coeffs.items() if len(m) <= degree})

    def leading(self, swapped: bool = False) -> tuple[Monomial, int] | None:
        """First nonconstant monomial with nonzero coefficient, or None."""
        terms = [m for m in self.coeffs if m]
        if not terms:
            return None
        m = min(terms, key=lambda t: monomial_key(t, swapped))
        return m, self.coeffs[m]

    def __str__(self) -> str:
        parts = []
        for m in sorted(self.coeffs, key=monomial_key):
            c = self.coeffs[m]
            body = m if m else "1"
            if m and abs(c) == 1:
                parts.append(("- " if c < 0 else "+ ") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + (f"{abs(c)}{body}" if m else str(abs(c))))
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def expand(w: fw.Word, degree: int) -> MagnusSeries:
    """Magnus series of ``w`` truncated above ``degree``."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    coeffs: dict[str, int] = {"": 1}
    for ch in w:
        var = ch.upper()
        sign = 1 if ch.islower() else -1
        out: dict[str, int] = defaultdict(int)
        for m, c in coeffs.items():
            out[m] += c
            if sign == 1:
                if len(m) < degree:
                    out[m + var] += c
            else:
                # a^-1 = 1 - A + A^2 - ...
                tail = m
                s = c
                for _ in range(degree - len(m)):
                    tail += var
                    s = -s
                    out[tail] += s
        coeffs = {m: c for m, c in out.items() if c}
    return MagnusSeries(degree, coeffs)


@lru_cache(maxsize=None)
def leading_term(
    w: fw.Word,
    swapped: bool = False,
    degree: int = DEFAULT_DEGREE,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> tuple[Monomial, int]:
    """Leading monomial and coefficient of ``series(w) - 1``.

    Degree one is read off the exponent sums; beyond that the truncation
    degree starts at ``degree`` and doubles until a nonzero term shows up.
    """
    if not w:
        raise IdentityInput("the identity has no leading term")
    alpha, beta = fw.exponent_sums(w)
    first, second = (("B", beta), ("A", alpha)) if swapped else (("A", alpha), ("B", beta))
    if first[1]:
        return first
    if second[1]:
        return second
    d = max(2, degree)
    while True:
        d = min(d, max_degree)
        lead = expand(w, d).leading(swapped)
        if lead is not None:
            return lead
        if d >= max_degree:
            raise TruncationExceeded(w, max_degree)
        d *= 2


class SignOracle:
    """A computable total bi-order on F2.

    Subclasses implement :meth:`sign` and :meth:`arch_class`; classes are
    monomials compared with :meth:`class_key` (earlier key = larger class).
    """

    name = "oracle"

    def sign(self, w: fw.Word) -> int:
        raise NotImplementedError

    def arch_class(self, w: fw.Word) -> Monomial:
        raise NotImplementedError

    def class_key(self, m: Monomial):
        return monomial_key(m)

    def descriptor(self) -> dict:
        raise NotImplementedError

    def is_positive(self, w: fw.Word) -> bool:
        return bool(w) and self.sign(w) > 0

    def compare(self, u: fw.Word, v: fw.Word) -> int:
        """-1, 0 or 1 as ``u < v``, ``u == v``, ``u > v``."""
        if u == v:
            return 0
        return -self.sign(fw.multiply(fw.invert(u), v))

    def abs(self, w: fw.Word) -> fw.Word:
        if not w or self.sign(w) > 0:
            return w
        return fw.invert(w)

    def arch_cmp(self, x: fw.Word, y: fw.Word) -> str:
        """``"<<"``, ``"~"`` or ``">>"`` for the Archimedean relation of x to y."""
        if not x or not y:
            raise IdentityInput("Archimedean comparison needs nontrivial elements")
        kx = self.class_key(self.arch_class(x))
        ky = self.class_key(self.arch_class(y))
        if kx == ky:
            return "~"
        return "<<" if ky < kx else ">>"

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class MagnusOracle(SignOracle):
    def __init__(
        self,
        degree: int = DEFAULT_DEGREE,
        max_degree: int = DEFAULT_MAX_DEGREE,
        swapped: bool = False,
    ):
        self.degree = degree
        self.max_degree = max_degree
        self.swapped = swapped
        self.name = "magnus-swapped" if swapped else "magnus"

    def lead(self, w: fw.Word) -> tuple[Monomial, int]:
        return leading_term(w, self.swapped, self.degree, self.max_degree)

    def sign(self, w: fw.Word) -> int:
        return 1 if self.lead(w)[1] > 0 else -1

    def arch_class(self, w: fw.Word) -> Monomial:
        return self.lead(w)[0]

    def class_key(self, m: Monomial):
        return monomial_key(m, self.swapped)

    def descriptor(self) -> dict:
        transforms = [{"kind": "monomial_swap", "params": {}}] if self.swapped else []
        return {
            "base": "magnus",
            "degree": self.degree,
            "max_degree": self.max_degree,
            "transforms": transforms,
        }


MAGNUS = MagnusOracle()


def sign(w: fw.Word, degree: int = DEFAULT_DEGREE, max_degree: int = DEFAULT_MAX_DEGREE) -> int:
    if not w:
        raise IdentityInput("the identity has no sign")
    return 1 if leading_term(w, False, degree, max_degree)[1] > 0 else -1


def compare(u: fw.Word, v: fw.Word) -> int:
    return MAGNUS.compare(u, v)


def arch_class(w: fw.Word) -> Monomial:
    return MAGNUS.arch_class(w)


def arch_cmp(x: fw.Word, y: fw.Word) -> str:
    return MAGNUS.arch_cmp(x, y)


def abs_word(w: fw.Word) -> fw.Word:
    return MAGNUS.abs(w)


def class_census(max_length: int, oracle: SignOracle = MAGNUS) -> dict[Monomial, fw.Word]:
    """Distinct classes among words up to ``max_length``, each with its first word.

    Returned in decreasing class order (largest class first).
    """
    seen: dict[Monomial, fw.Word] = {}
    for w in fw.ball(max_length)[1:]:
        m = oracle.arch_class(w)
        seen.setdefault(m, w)
    return dict(sorted(seen.items(), key=lambda kv: oracle.class_key(kv[0])))


def axiom_suite(o: SignOracle, L: int = 6, Lc: int = 4, samples: int = 0, seed: int = 0) -> dict:
    """Check the bi-order axioms for ``o`` on the ball of radius ``L``.

    Exhaustive part: antisymmetry ``sign(w^-1) = -sign(w)`` for every word,
    closure of the positives under products that stay in the ball, and
    invariance under conjugation by every word of length up to ``Lc`` (the
    conjugate itself may be longer than ``L``). ``samples`` adds seeded
    products of random positive pairs of any length.
    """
    import random

    words = fw.ball(L)[1:]
    s = {w: o.sign(w) for w in words}
    pos = [w for w in words if s[w] > 0]
    fails = {"antisymmetry": 0, "product": 0, "conjugation": 0, "sampled_product": 0}
    checked = dict.fromkeys(fails, 0)
    examples: list = []

    def fail(kind, *ws):
        fails[kind] += 1
        if len(examples) < 5:
            examples.append({"axiom": kind, "words": [fw.fmt(w) for w in ws]})

    for w in words:
        checked["antisymmetry"] += 1
        if s[w] != -s[fw.invert(w)]:
            fail("antisymmetry", w)
    for u in pos:
        for v in pos:
            p = fw.multiply(u, v)
            if len(p) <= L:
                checked["product"] += 1
                if not p or s[p] < 0:
                    fail("product", u, v)
    for g in fw.ball(Lc)[1:]:
        gi = fw.invert(g)
        for u in pos:
            checked["conjugation"] += 1
            if o.sign(fw.reduce(g + u + gi)) < 0:
                fail("conjugation", u, g)
    rng = random.Random(seed)
    for _ in range(samples):
        u, v = rng.choice(pos), rng.choice(pos)
        p = fw.multiply(u, v)
        checked["sampled_product"] += 1
        if not p or o.sign(p) < 0:
            fail("sampled_product", u, v)
    return {"length": L, "conj": Lc, "checked": checked, "violations": fails,
            "examples": examples, "passed": not any(fails.values())}
