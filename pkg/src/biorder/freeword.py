"""Reduced words in the free group on ``a`` and ``b``.

Words are plain ``str`` values over the alphabet ``a A b B``, where the
capital letter is the inverse generator. The empty string is the identity.
Every public function here expects and returns freely reduced words, except
:func:`reduce` and :func:`parse`, which accept raw letter sequences.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import islice
from typing import Iterable, Iterator

IDENTITY = ""
LETTERS = "aAbB"  # fixed ShortLex letter order: a < a^-1 < b < b^-1
_RANK = {ch: i for i, ch in enumerate(LETTERS)}
_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}

Word = str


def parse(text: str) -> Word:
    """Parse the text encoding used by the CLI and file formats.

    ``""`` and ``"e"`` both denote the identity; ``1`` is accepted too.
    """
    text = text.strip()
    if text in ("", "e", "1"):
        return IDENTITY
    bad = set(text) - set(LETTERS)
    if bad:
        raise ValueError(f"invalid letters {sorted(bad)} in word {text!r}")
    return reduce(text)


def fmt(w: Word) -> str:
    return w if w else "e"


def reduce(raw: Iterable[str]) -> Word:
    stack: list[str] = []
    for ch in raw:
        if stack and stack[-1] == _INV[ch]:
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


def is_reduced(w: str) -> bool:
    return all(_INV[x] != y for x, y in zip(w, w[1:]))


def multiply(u: Word, v: Word) -> Word:
    # both inputs reduced, so cancellation only happens at the seam
    k = 0
    n = min(len(u), len(v))
    while k < n and u[len(u) - 1 - k] == _INV[v[k]]:
        k += 1
    return u[: len(u) - k] + v[k:]


def product(*words: Word) -> Word:
    out = IDENTITY
    for w in words:
        out = multiply(out, w)
    return out


def invert(w: Word) -> Word:
    return w[::-1].swapcase()


def conjugate(w: Word, g: Word) -> Word:
    """Return ``g w g^-1`` (the notation ``w^g`` used throughout)."""
    return multiply(multiply(g, w), invert(g))


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = invert(w), -n
    out = IDENTITY
    for _ in range(n):
        out = multiply(out, w)
    return out


def exponent_sums(w: Word) -> tuple[int, int]:
    return (w.count("a") - w.count("A"), w.count("b") - w.count("B"))


def shortlex_key(w: Word) -> tuple[int, tuple[int, ...]]:
    return (len(w), tuple(_RANK[ch] for ch in w))


def canonical(w: Word) -> Word:
    """The ShortLex-smaller of ``w`` and its inverse."""
    wi = invert(w)
    return w if shortlex_key(w) <= shortlex_key(wi) else wi


def words_of_length(n: int) -> Iterator[Word]:
    if n == 0:
        yield IDENTITY
        return
    for prefix in words_of_length(n - 1):
        last = prefix[-1] if prefix else None
        for ch in LETTERS:
            if last is None or _INV[ch] != last:
                yield prefix + ch


def iter_shortlex() -> Iterator[Word]:
    n = 0
    while True:
        yield from words_of_length(n)
        n += 1


def enumerate_words(n: int) -> list[Word]:
    """First ``n`` reduced words in ShortLex order (identity first)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(islice(iter_shortlex(), n))


@lru_cache(maxsize=None)
def ball(radius: int) -> tuple[Word, ...]:
    """All reduced words of length at most ``radius`` in ShortLex order."""
    out: list[Word] = []
    for n in range(radius + 1):
        out.extend(words_of_length(n))
    return tuple(out)


def count_of_length(n: int) -> int:
    return 1 if n == 0 else 4 * 3 ** (n - 1)


def shortlex_index(w: Word) -> int:
    """Position of ``w`` in the ShortLex enumeration."""
    n = len(w)
    idx = sum(count_of_length(k) for k in range(n))
    # rank among length-n words: mixed radix, 4 choices then 3 each
    offset = 0
    prev = None
    for pos, ch in enumerate(w):
        allowed = [c for c in LETTERS if prev is None or _INV[c] != prev]
        r = allowed.index(ch)
        offset += r * 3 ** (n - pos - 1)
        prev = ch
    return idx + offset


def word_at(index: int) -> Word:
    if index < 0:
        raise ValueError("index must be non-negative")
    n = 0
    while index >= count_of_length(n):
        index -= count_of_length(n)
        n += 1
    out = []
    prev = None
    for pos in range(n):
        allowed = [c for c in LETTERS if prev is None or _INV[c] != prev]
        block = 3 ** (n - pos - 1)
        r, index = divmod(index, block)
        prev = allowed[r]
        out.append(prev)
    return "".join(out)
