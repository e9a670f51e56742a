"""Finite-resolution evidence that no bi-ordering of F2 is isolated.

A basic open set of the space of orders is a finite list of words required
to be positive. :func:`witness_nonisolation` produces two orders (or order
approximations) that both satisfy the list yet disagree on a witness word.

The search has two phases. The structured phase scans genuine total
bi-orders built by :mod:`biorder.transform`; the cone-search phase asserts
the opposite sign for a candidate word and keeps the result if bounded
saturation finds no contradiction. Cone-search certificates only show
consistency up to the length bound, and are labelled as such.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from biorder import cones
from biorder import freeword as fw
from biorder.errors import NotFound, PreconditionFailed
from biorder.magnus import MAGNUS, MagnusOracle, SignOracle
from biorder.transform import family

STRUCTURED = "structured-transform"
CONE_SEARCH = "cone-search"


@dataclass(frozen=True)
class BasicOpenSet:
    positives: tuple = ()

    def __post_init__(self):
        ws = tuple(fw.reduce(w) for w in self.positives)
        object.__setattr__(self, "positives", ws)
        if any(not w for w in ws):
            raise ValueError("the identity cannot be a positivity constraint")
        s = set(ws)
        if any(fw.invert(w) in s for w in ws):
            raise ValueError("a word and its inverse cannot both be constraints")

    def __iter__(self):
        return iter(self.positives)

    def __len__(self):
        return len(self.positives)


@dataclass(frozen=True)
class OrderDistance:
    value: Fraction
    index: int | None  # first ShortLex index of disagreement

    def __float__(self):  # convenience for plotting only
        return float(self.value)


def distance(o1: SignOracle, o2: SignOracle, bound: int) -> OrderDistance:
    """``2^-k`` for the first ShortLex index ``k >= 1`` where the signs differ."""
    for k, w in enumerate(fw.ball(bound)):
        if k == 0:
            continue
        if o1.sign(w) != o2.sign(w):
            return OrderDistance(Fraction(1, 2 ** k), k)
    return OrderDistance(Fraction(0), None)


def seed_word(x: fw.Word) -> fw.Word:
    """``x^a (x^b)^-1``: lies one step deeper in the lower central series than ``x``."""
    return fw.multiply(fw.conjugate(x, "a"), fw.invert(fw.conjugate(x, "b")))


def witness_candidates(U: BasicOpenSet, base: SignOracle = MAGNUS, max_length: int = 6) -> list:
    """Seeds built from each constraint, then ShortLex words up to ``max_length``.

    Seeds are kept at any length; the ShortLex tail skips constraints, their
    inverses, and anything already listed.
    """
    out: list[str] = []
    seen: set[str] = set()
    banned = set(U) | {fw.invert(x) for x in U}
    for x in U:
        w = seed_word(x)
        if w and w not in seen and w not in banned:
            out.append(w)
            seen.add(w)
    for w in fw.ball(max_length)[1:]:
        if w not in seen and w not in banned:
            out.append(w)
            seen.add(w)
    return out


def _sym(s):
    return "+" if s > 0 else "-"


@dataclass
class NonIsolationCertificate:
    constraints: BasicOpenSet
    length_bound: int
    conj_bound: int
    base: dict  # {"descriptor": ...} or {"cone": ...}
    alternative: dict
    witness_word: str
    method: str
    signs: tuple  # (base sign, alternative sign) on the witness
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "constraints": [fw.fmt(w) for w in self.constraints],
            "length_bound": self.length_bound,
            "conj_bound": self.conj_bound,
            "base": self.base,
            "alternative": self.alternative,
            "witness_word": fw.fmt(self.witness_word),
            "method": self.method,
            "signs": [_sym(s) for s in self.signs],
            "stats": self.stats,
        }

    @classmethod
    def from_json(cls, d: dict) -> "NonIsolationCertificate":
        return cls(
            BasicOpenSet(tuple(fw.parse(w) for w in d["constraints"])),
            int(d["length_bound"]), int(d["conj_bound"]),
            d["base"], d["alternative"], fw.parse(d["witness_word"]), d["method"],
            tuple(1 if s == "+" else -1 for s in d["signs"]), d.get("stats", {}),
        )


_CONSISTENT: dict = {}


def oracle_consistent(o: SignOracle, L: int, Lc: int) -> bool:
    """Bounded-saturation consistency of a total oracle, cached by descriptor."""
    import json

    key = (json.dumps(o.descriptor(), sort_keys=True), L, Lc)
    if key not in _CONSISTENT:
        _, rep = cones.saturate(cones.from_oracle(o, L, Lc))
        _CONSISTENT[key] = rep.consistent and not rep.derived
    return _CONSISTENT[key]


def _structured(U, L, Lc, base, cands, stats):
    short = [w for w in cands if len(w) <= L]
    seeds = [w for w in cands if len(w) > L]
    for o in family(base):
        stats["orders_tried"] += 1
        if not all(o.sign(x) > 0 for x in U):
            continue
        # seeds may exceed L: both sides are total orders, defined on every word
        witness = next((w for w in seeds + short if o.sign(w) != base.sign(w)), None)
        if witness is None:
            continue
        if not oracle_consistent(o, L, Lc):
            continue
        return o, witness
    return None


def _cone_search(U, L, Lc, base, cands, budget, stats):
    for w in cands:
        if len(w) > L:
            continue
        if stats["saturations"] >= budget:
            stats["budget_exhausted"] = True
            return None
        s = base.sign(w)
        try:
            c = cones.cone_from_signs(list(U), L=L, Lc=Lc).assert_sign(w, -s)
        except cones.ImmediateClash:
            continue
        stats["saturations"] += 1
        sat, rep = cones.saturate(c)
        if rep.consistent:
            return w, s, c, sat
    return None


def cone_side(assertions, saturated: cones.PartialCone) -> dict:
    return {"cone": {
        "assertions": [{"word": fw.fmt(w), "sign": _sym(s)} for w, s in assertions],
        "mode": saturated.mode,
        "assignments": saturated.assignments(),
    }}


def witness_nonisolation(U, L: int = 6, Lc: int | None = None, budget: int = 500,
                         base: SignOracle | None = None) -> NonIsolationCertificate:
    U = U if isinstance(U, BasicOpenSet) else BasicOpenSet(tuple(U))
    Lc = L if Lc is None else Lc
    base = base or MagnusOracle()
    for x in U:
        if len(x) > L:
            raise PreconditionFailed(f"constraint {x} longer than L={L}")
        if base.sign(x) < 0:
            raise PreconditionFailed(f"constraint {x} is negative in the base order")
    if not oracle_consistent(base, L, Lc):
        raise PreconditionFailed("base order fails bounded saturation")
    stats = Counter(orders_tried=0, saturations=0)
    cands = witness_candidates(U, base, L)
    hit = _structured(U, L, Lc, base, cands, stats)
    if hit is not None:
        o, w = hit
        return NonIsolationCertificate(
            U, L, Lc, {"descriptor": base.descriptor()}, {"descriptor": o.descriptor()},
            w, STRUCTURED, (base.sign(w), o.sign(w)), dict(stats))
    hit = _cone_search(U, L, Lc, base, cands, budget, stats)
    if hit is not None:
        w, s, seeded, sat = hit
        assertions = [(x, 1) for x in U] + [(w, -s)]
        return NonIsolationCertificate(
            U, L, Lc, {"descriptor": base.descriptor()}, cone_side(assertions, sat),
            w, CONE_SEARCH, (s, -s), dict(stats))
    raise NotFound(f"no certificate for {[fw.fmt(x) for x in U]} at L={L}", dict(stats))


def constraint_sets(n_max: int, len_max: int, base: SignOracle = MAGNUS) -> list[tuple]:
    """All sets of at most ``n_max`` base-positive words of length 1..len_max."""
    pos = [w for w in fw.ball(len_max)[1:] if base.sign(w) > 0]
    out: list[tuple] = []
    for n in range(n_max + 1):
        out.extend(combinations(pos, n))
    return out


def nonisolation_sweep(n_max: int = 2, len_max: int = 3, L: int = 6, Lc: int = 3,
                       budget: int = 500, verify: bool = True, progress=None) -> dict:
    from biorder.verify import verify_certificate

    sets = constraint_sets(n_max, len_max)
    methods: Counter = Counter()
    not_found = []
    invalid = []
    certs = []
    for i, U in enumerate(sets):
        try:
            cert = witness_nonisolation(U, L, Lc, budget)
        except NotFound as exc:
            not_found.append({"constraints": [fw.fmt(w) for w in U], "stats": exc.stats})
            continue
        methods[cert.method] += 1
        data = cert.to_json()
        if verify:
            res = verify_certificate(data)
            if not res.valid:
                invalid.append({"certificate": data, "reasons": res.reasons})
        certs.append(data)
        if progress:
            progress(i + 1, len(sets))
    total = len(sets)
    found = sum(methods.values())
    return {
        "parameters": {"max_constraints": n_max, "max_word_length": len_max,
                       "length": L, "conj": Lc, "budget": budget},
        "total": total,
        "certificates": found,
        "success_rate": str(Fraction(found, total)) if total else "1",
        "structured_rate": str(Fraction(methods[STRUCTURED], total)) if total else "1",
        "methods": dict(methods),
        "not_found": not_found,
        "verified": verify,
        "invalid": invalid,
        "items": certs,
    }
