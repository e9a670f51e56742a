"""Bounded positive-cone saturation.

A :class:`PartialCone` assigns signs to some reduced words of length at most
``L``. Saturation closes the assignment under

* R1: ``sign(w^-1) = -sign(w)``;
* R2: if ``u`` and ``v`` have the same sign and ``1 <= |uv| <= L`` then ``uv``
  gets that sign;
* R3 (bi-order mode only): if ``w`` has a sign and ``|g| <= Lc`` then
  ``g w g^-1`` gets the same sign whenever it is short enough.

Only one of each pair ``{w, w^-1}`` is stored (the ShortLex-smaller one), so
R1 holds by construction. Every rule instance holds in every bi-order (or
left order) extending the assertions, so a contradiction proves there is
none. The converse is not claimed: a consistent cone at length ``L`` may
still fail to extend.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from biorder import freeword as fw
from biorder.errors import BudgetExhausted, ImmediateClash, LengthExceeded
from biorder.magnus import SignOracle

BI = "bi"
LEFT = "left"

ASSERTED = "asserted"


def _sym(s: int) -> str:
    return "+" if s > 0 else "-"


def _parse_sign(s) -> int:
    if s in (1, "+", "pos"):
        return 1
    if s in (-1, "-", "neg"):
        return -1
    raise ValueError(f"bad sign {s!r}")


@dataclass
class PartialCone:
    length_bound: int
    conj_bound: int | None = None
    mode: str = BI
    signs: dict = field(default_factory=dict)  # canonical word -> +1/-1
    origin: dict = field(default_factory=dict)  # canonical word -> (rule, premises, conjugator)

    def __post_init__(self):
        if self.length_bound < 1:
            raise ValueError("length bound must be positive")
        if self.conj_bound is None:
            self.conj_bound = self.length_bound
        if self.mode not in (BI, LEFT):
            raise ValueError(f"mode must be {BI!r} or {LEFT!r}")

    def copy(self) -> "PartialCone":
        return PartialCone(self.length_bound, self.conj_bound, self.mode,
                           dict(self.signs), dict(self.origin))

    def get(self, w: fw.Word) -> int:
        """+1, -1, or 0 when unknown."""
        if not w:
            return 0
        c = fw.canonical(w)
        s = self.signs.get(c, 0)
        return s if c == w else -s

    def positives(self) -> list[fw.Word]:
        out = [c if s > 0 else fw.invert(c) for c, s in self.signs.items()]
        return sorted(out, key=fw.shortlex_key)

    def undetermined(self) -> list[fw.Word]:
        return [w for w in fw.ball(self.length_bound)[1:]
                if fw.canonical(w) == w and w not in self.signs]

    @property
    def size(self) -> int:
        """Number of canonical words of length 1..L."""
        return (len(fw.ball(self.length_bound)) - 1) // 2

    def is_complete(self) -> bool:
        return len(self.signs) == self.size

    def assignments(self) -> list[dict]:
        items = sorted(self.signs.items(), key=lambda kv: fw.shortlex_key(kv[0]))
        return [{"word": fw.fmt(w), "sign": _sym(s)} for w, s in items]

    def assert_sign(self, w: fw.Word, s) -> "PartialCone":
        """Record ``sign(w) = s`` (and the opposite for ``w^-1``) without closure."""
        s = _parse_sign(s)
        if not 1 <= len(w) <= self.length_bound:
            raise LengthExceeded(f"{fw.fmt(w)!r} is outside lengths 1..{self.length_bound}")
        current = self.get(w)
        if current == -s:
            raise ImmediateClash(f"{w} already has sign {_sym(current)}")
        out = self.copy()
        c = fw.canonical(w)
        if c not in out.signs:
            out.signs[c] = s if c == w else -s
            out.origin[c] = (ASSERTED, (), None)
        return out


@dataclass
class SaturationReport:
    outcome: str  # "Consistent" or "Contradiction"
    derived: list = field(default_factory=list)
    contradiction_trace: list | None = None

    @property
    def consistent(self) -> bool:
        return self.outcome == "Consistent"

    def to_json(self) -> list[dict]:
        return [dict(d) for d in self.derived]


class _Contradiction(Exception):
    def __init__(self, word, rule, premises, conjugator):
        self.word, self.rule, self.premises, self.conjugator = word, rule, premises, conjugator


class _Engine:
    """Worklist over positive words; R2/R3 only ever derive positive words."""

    def __init__(self, cone: PartialCone):
        self.cone = cone
        self.L = cone.length_bound
        self.conjugators = fw.ball(cone.conj_bound)[1:] if cone.mode == BI else ()
        self.pos: set[str] = set()
        # (prefix, length) -> positive words; same for suffixes
        self.by_prefix: dict[tuple[str, int], list[str]] = {}
        self.by_suffix: dict[tuple[str, int], list[str]] = {}
        self.derived: list[dict] = []
        for c, s in cone.signs.items():
            self._index(c if s > 0 else fw.invert(c))

    def _index(self, p):
        self.pos.add(p)
        n = len(p)
        for k in range(n + 1):
            self.by_prefix.setdefault((p[:k], n), []).append(p)
            self.by_suffix.setdefault((p[n - k:], n), []).append(p)

    def _add(self, p, rule, premises, conjugator=None) -> bool:
        """Record positive ``p``; return True if it is new."""
        if p in self.pos:
            return False
        if fw.invert(p) in self.pos:
            raise _Contradiction(p, rule, premises, conjugator)
        c = fw.canonical(p)
        self.cone.signs[c] = 1 if c == p else -1
        self.cone.origin[c] = (rule, tuple(premises), conjugator)
        self.derived.append({
            "word": fw.fmt(c),
            "sign": _sym(self.cone.signs[c]),
            "rule": rule,
            "premises": [fw.fmt(x) for x in premises],
            "conjugator": fw.fmt(conjugator) if conjugator is not None else None,
        })
        self._index(p)
        return True

    def run(self, work: list[str]):
        L = self.L
        while work:
            u = work.pop()
            lu = len(u)
            # u * v with v positive: v must start with the inverse of a suffix of u
            for k in range(0, lu + 1):
                head = fw.invert(u[lu - k:]) if k else ""
                for lv in range(max(k, 1), L - lu + 2 * k + 1):
                    for v in tuple(self.by_prefix.get((head, lv), ())):
                        p = fw.multiply(u, v)
                        if (lu + lv - len(p)) // 2 != k or not p:
                            continue
                        if self._add(p, "R2", (u, v)):
                            work.append(p)
            # v * u
            for k in range(0, lu + 1):
                tail = fw.invert(u[:k]) if k else ""
                for lv in range(max(k, 1), L - lu + 2 * k + 1):
                    for v in tuple(self.by_suffix.get((tail, lv), ())):
                        p = fw.multiply(v, u)
                        if (lu + lv - len(p)) // 2 != k or not p:
                            continue
                        if self._add(p, "R2", (v, u)):
                            work.append(p)
            for g in self.conjugators:
                p = fw.conjugate(u, g)
                if len(p) <= L and self._add(p, "R3", (u,), g):
                    work.append(p)


def _ancestry(cone: PartialCone, words) -> list[dict]:
    seen = set()
    out = []
    stack = [fw.canonical(w) for w in words]
    while stack:
        c = stack.pop()
        if c in seen or c not in cone.signs:
            continue
        seen.add(c)
        rule, premises, conj = cone.origin.get(c, (ASSERTED, (), None))
        out.append({"word": fw.fmt(c), "sign": _sym(cone.signs[c]), "rule": rule,
                    "premises": [fw.fmt(x) for x in premises],
                    "conjugator": fw.fmt(conj) if conj is not None else None})
        stack.extend(fw.canonical(x) for x in premises)
    out.sort(key=lambda d: (d["rule"] != ASSERTED, fw.shortlex_key(fw.parse(d["word"]))))
    return out


def _saturate_from(cone: PartialCone, seeds) -> tuple[PartialCone, SaturationReport]:
    eng = _Engine(cone)
    try:
        eng.run(list(seeds))
    except _Contradiction as clash:
        p = clash.word
        trace = [{
            "word": fw.fmt(p), "sign": "+", "rule": clash.rule,
            "premises": [fw.fmt(x) for x in clash.premises],
            "conjugator": fw.fmt(clash.conjugator) if clash.conjugator is not None else None,
            "clash": True,
        }]
        trace += _ancestry(cone, list(clash.premises) + [p])
        return cone, SaturationReport("Contradiction", eng.derived, trace)
    return cone, SaturationReport("Consistent", eng.derived)


def saturate(cone: PartialCone) -> tuple[PartialCone, SaturationReport]:
    """Least fixed point of R1-R3 over the cone's bounds (input left untouched)."""
    out = cone.copy()
    return _saturate_from(out, out.positives())


def from_oracle(o: SignOracle, L: int, Lc: int | None = None, mode: str = BI) -> PartialCone:
    cone = PartialCone(L, Lc, mode)
    for w in fw.ball(L)[1:]:
        if fw.canonical(w) == w:
            cone.signs[w] = o.sign(w)
            cone.origin[w] = (ASSERTED, (), None)
    return cone


def cone_from_signs(positives=(), negatives=(), L: int = 4, Lc: int | None = None,
                    mode: str = BI) -> PartialCone:
    cone = PartialCone(L, Lc, mode)
    for w in positives:
        cone = cone.assert_sign(w, 1)
    for w in negatives:
        cone = cone.assert_sign(w, -1)
    return cone


@dataclass
class Census:
    completions: list
    exhausted: bool
    nodes: int

    def __len__(self):
        return len(self.completions)


def enumerate_extensions(cone: PartialCone, budget: int = 10_000, strict: bool = False) -> Census:
    """All consistent complete cones at length ``L`` extending ``cone``.

    Depth-first over the ShortLex-first undetermined word, trying ``+`` then
    ``-`` and re-saturating after each choice. ``budget`` caps the number of
    saturation calls; when it runs out the completions found so far are
    returned with ``exhausted=True`` (or raised inside :class:`BudgetExhausted`
    when ``strict``).
    """
    root, rep = saturate(cone)
    nodes = 1
    found: list[PartialCone] = []
    if not rep.consistent:
        return Census(found, False, nodes)
    order = [w for w in fw.ball(cone.length_bound)[1:] if fw.canonical(w) == w]
    exhausted = False

    def dfs(c: PartialCone):
        nonlocal nodes, exhausted
        nxt = next((w for w in order if w not in c.signs), None)
        if nxt is None:
            found.append(c)
            return
        for s in (1, -1):
            if nodes >= budget:
                exhausted = True
                return
            child = c.copy()
            child.signs[nxt] = s
            child.origin[nxt] = (ASSERTED, (), None)
            nodes += 1
            child, r = _saturate_from(child, [nxt if s > 0 else fw.invert(nxt)])
            if r.consistent:
                dfs(child)
            if exhausted:
                return

    dfs(root)
    if exhausted and strict:
        raise BudgetExhausted(f"census budget {budget} exhausted", found)
    return Census(found, exhausted, nodes)


def replay(report: SaturationReport | list, L: int, Lc: int | None = None,
           mode: str = BI, known=None) -> bool:
    """Re-check every derivation in a report against its rule.

    With ``known`` (the positive words present before saturation) each premise
    must also be known or derived earlier in the report.
    """
    entries = report.derived if isinstance(report, SaturationReport) else report
    Lc = L if Lc is None else Lc
    have = None if known is None else set(known)
    for d in entries:
        w = fw.parse(d["word"])
        target = w if d["sign"] == "+" else fw.invert(w)
        prem = [fw.parse(x) for x in d["premises"]]
        if not 1 <= len(target) <= L:
            return False
        if d["rule"] == "R2":
            if len(prem) != 2 or fw.multiply(*prem) != target:
                return False
        elif d["rule"] == "R3":
            if mode != BI or len(prem) != 1 or d["conjugator"] is None:
                return False
            g = fw.parse(d["conjugator"])
            if len(g) > Lc or fw.conjugate(prem[0], g) != target:
                return False
        else:
            return False
        if have is not None:
            if any(x not in have for x in prem):
                return False
            have.add(target)
    return True


def report_json(cone: PartialCone, report: SaturationReport, exhausted: bool = False) -> dict:
    return {
        "outcome": report.outcome,
        "assignments": cone.assignments(),
        "derivations": report.to_json(),
        "contradiction_trace": report.contradiction_trace,
        "exhausted": exhausted,
    }
