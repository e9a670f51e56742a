"""Independent checker for non-isolation certificates.

Nothing here imports the search code: word arithmetic, the Magnus sign,
the transform descriptors and saturation are all re-implemented from
scratch (and deliberately by different means: the Magnus sign is computed
one coefficient at a time by dynamic programming over the word rather than
by expanding the series).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}
_ORDER = "aAbB"


def _word(text: str) -> str:
    if text in ("", "e", "1"):
        return ""
    out: list[str] = []
    for ch in text:
        if ch not in _INV:
            raise ValueError(f"bad letter {ch!r}")
        if out and out[-1] == _INV[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _inv(w: str) -> str:
    return "".join(_INV[ch] for ch in reversed(w))


def _mul(*ws: str) -> str:
    return _word("".join(ws))


def _all_words(n: int) -> list[str]:
    out = [""]
    layer = [""]
    for _ in range(n):
        layer = [w + ch for w in layer for ch in _ORDER if not (w and w[-1] == _INV[ch])]
        out.extend(layer)
    return out


# -- Magnus coefficients ----------------------------------------------------

def _coefficient(w: str, mono: str) -> int:
    """Coefficient of ``mono`` in the Magnus series of ``w``.

    ``dp[j]`` counts (with signs) the ways the letters read so far produce the
    first ``j`` symbols of ``mono``: a generator contributes its variable at
    most once, an inverse generator ``x^-1 = sum (-X)^i`` contributes any run.
    """
    n = len(mono)
    dp = [0] * (n + 1)
    dp[0] = 1
    for ch in w:
        var = ch.upper()
        new = dp[:]
        for j in range(n):
            if not dp[j]:
                continue
            if ch.islower():
                if mono[j] == var:
                    new[j + 1] += dp[j]
            else:
                i = j
                sgn = -1
                while i < n and mono[i] == var:
                    new[i + 1] += sgn * dp[j]
                    sgn = -sgn
                    i += 1
        dp = new
    return dp[n]


def _monomials(d: int, swapped: bool) -> list[str]:
    letters = "BA" if swapped else "AB"
    out = [""]
    for _ in range(d):
        out = [m + x for m in out for x in letters]
    return out


@lru_cache(maxsize=None)
def _magnus_lead(w: str, swapped: bool, max_degree: int) -> tuple[str, int]:
    if not w:
        raise ValueError("identity")
    for d in range(1, max_degree + 1):
        for m in _monomials(d, swapped):
            c = _coefficient(w, m)
            if c:
                return m, c
    raise ValueError(f"no nonzero coefficient up to degree {max_degree}")


# -- descriptors ------------------------------------------------------------

_MOVES = {"swap": ("b", "a"), "inv_a": ("A", "b"), "right_mult": ("ab", "b")}


def _apply(images, w):
    table = {"a": images[0], "A": _inv(images[0]), "b": images[1], "B": _inv(images[1])}
    return _word("".join(table[ch] for ch in w))


class _Order:
    """sign(w) and class(w) for a descriptor, interpreted step by step."""

    def __init__(self, desc: dict):
        if desc.get("base") != "magnus":
            raise ValueError("unknown base")
        self.max_degree = int(desc.get("max_degree", 32))
        self.swapped = False
        # each layer: ("reverse",), ("flip", threshold), ("pull", images)
        self.layers = []
        for i, t in enumerate(desc.get("transforms", [])):
            kind, params = t["kind"], t.get("params", {})
            if kind == "monomial_swap":
                if i:
                    raise ValueError("monomial_swap must come first")
                self.swapped = True
            elif kind == "reverse":
                self.layers.append(("reverse",))
            elif kind == "convex_flip":
                self.layers.append(("flip", params["threshold"]))
            elif kind == "pullback":
                images = ("a", "b")
                for step in reversed(params["steps"]):
                    images = tuple(_apply(_MOVES[step], x) for x in images)
                self.layers.append(("pull", images))
            else:
                raise ValueError(f"unknown transform {kind}")

    def _key(self, m):
        return (len(m), m.translate(str.maketrans("AB", "BA")) if self.swapped else m)

    def _eval(self, w, depth):
        """(sign, class) of ``w`` after the first ``depth`` layers."""
        if depth == 0:
            m, c = _magnus_lead(w, self.swapped, self.max_degree)
            return (1 if c > 0 else -1), m
        layer = self.layers[depth - 1]
        if layer[0] == "pull":
            return self._eval(_apply(layer[1], w), depth - 1)
        s, m = self._eval(w, depth - 1)
        if layer[0] == "reverse":
            return -s, m
        if self._key(m) >= self._key(layer[1]):
            return -s, m
        return s, m

    def sign(self, w):
        return self._eval(w, len(self.layers))[0]


# -- saturation -------------------------------------------------------------

def _closure(positive: set, L: int, Lc: int, mode: str):
    """Naive semi-naive closure; returns (closed set, clash word or None)."""
    pos = set(positive)
    for w in pos:
        if _inv(w) in pos:
            return pos, w
    conj = _all_words(Lc)[1:] if mode == "bi" else []
    frontier = list(pos)
    while frontier:
        new = []
        for u in frontier:
            cands = []
            for v in list(pos):
                cands.append(_mul(u, v))
                cands.append(_mul(v, u))
            for g in conj:
                cands.append(_mul(g, u, _inv(g)))
            for p in cands:
                if not p or len(p) > L or p in pos:
                    continue
                if _inv(p) in pos:
                    return pos, p
                pos.add(p)
                new.append(p)
        frontier = new
    return pos, None


_TOTAL_CACHE: dict = {}


def _total_consistent(desc: dict, L: int, Lc: int) -> bool:
    key = (json.dumps(desc, sort_keys=True), L, Lc)
    if key in _TOTAL_CACHE:
        return _TOTAL_CACHE[key]
    o = _Order(desc)
    words = _all_words(L)[1:]
    pos = {w for w in words if o.sign(w) > 0}
    ok = all((w in pos) != (_inv(w) in pos) for w in words)
    if ok:
        plist = sorted(pos)
        for u in plist:
            for v in plist:
                p = _mul(u, v)
                if p and len(p) <= L and p not in pos:
                    ok = False
                    break
            if not ok:
                break
    if ok:
        for g in _all_words(Lc)[1:]:
            gi = _inv(g)
            if any(len(p) <= L and p not in pos for p in (_mul(g, u, gi) for u in pos)):
                ok = False
                break
    _TOTAL_CACHE[key] = ok
    return ok


@dataclass
class Verification:
    valid: bool
    reasons: list = field(default_factory=list)


class _Side:
    def __init__(self, side: dict, L: int, Lc: int):
        self.L, self.Lc = L, Lc
        if "descriptor" in side:
            self.kind = "descriptor"
            self.order = _Order(side["descriptor"])
            self.desc = side["descriptor"]
        elif "cone" in side:
            self.kind = "cone"
            c = side["cone"]
            self.mode = c.get("mode", "bi")
            seeds = set()
            for a in c["assertions"]:
                w = _word(a["word"])
                seeds.add(w if a["sign"] == "+" else _inv(w))
            self.seeds = seeds
            self.closed, self.clash = _closure(seeds, L, Lc, self.mode)
            self.claimed = {_word(a["word"]) if a["sign"] == "+" else _inv(_word(a["word"]))
                            for a in c.get("assignments", [])}
        else:
            raise ValueError("side must carry a descriptor or a cone")

    def sign(self, w):
        if self.kind == "descriptor":
            return self.order.sign(w)
        if w in self.closed:
            return 1
        if _inv(w) in self.closed:
            return -1
        return 0

    def consistent(self) -> bool:
        if self.kind == "descriptor":
            return _total_consistent(self.desc, self.L, self.Lc)
        return self.clash is None


def verify_certificate(cert) -> Verification:
    """Re-derive every claim of a certificate (dict or path to JSON)."""
    if isinstance(cert, str):
        with open(cert) as fh:
            cert = json.load(fh)
    reasons = []
    try:
        L, Lc = int(cert["length_bound"]), int(cert["conj_bound"])
        cons = [_word(w) for w in cert["constraints"]]
        witness = _word(cert["witness_word"])
        base = _Side(cert["base"], L, Lc)
        alt = _Side(cert["alternative"], L, Lc)
    except (KeyError, ValueError, TypeError) as exc:
        return Verification(False, [f"malformed certificate: {exc}"])
    if any(not w for w in cons):
        reasons.append("identity among constraints")
    if any(_inv(w) in cons for w in cons):
        reasons.append("constraint and its inverse both present")
    if any(len(w) > L for w in cons):
        reasons.append("constraint longer than the length bound")
    if not witness:
        reasons.append("witness is the identity")
    method = cert.get("method")
    if method == "structured-transform" and alt.kind != "descriptor":
        reasons.append("structured certificate without an order descriptor")
    if method == "cone-search" and alt.kind != "cone":
        reasons.append("cone-search certificate without a cone")
    if method not in ("structured-transform", "cone-search"):
        reasons.append(f"unknown method {method!r}")
    if reasons:
        return Verification(False, reasons)
    for name, side in (("base", base), ("alternative", alt)):
        for w in cons:
            if side.sign(w) != 1:
                reasons.append(f"{name} does not make {w or 'e'} positive")
        if not side.consistent():
            reasons.append(f"{name} fails saturation at L={L}, Lc={Lc}")
        if side.kind == "cone" and side.claimed and side.claimed != side.closed:
            reasons.append(f"{name} cone assignments differ from the recomputed closure")
    sb, sa = base.sign(witness), alt.sign(witness)
    if sb == 0 or sa == 0 or sb == sa:
        reasons.append("sides do not disagree on the witness")
    want = [("+" if s > 0 else "-") if s else "?" for s in (sb, sa)]
    if list(cert.get("signs", [])) != want:
        reasons.append(f"recorded witness signs {cert.get('signs')} != recomputed {want}")
    return Verification(not reasons, reasons)
