"""Abstract ordered groups, used as base groups for the lex and wreath constructions."""

from __future__ import annotations

from biorder import freeword as fw
from biorder.magnus import MAGNUS, SignOracle


class OrderedGroup:
    """Minimal interface of a bi-ordered group with Archimedean comparison.

    ``arch_cmp`` treats the identity as smaller than every nontrivial element,
    which is the convenient convention for the wreath rules.
    """

    identity = None

    def multiply(self, x, y):
        raise NotImplementedError

    def invert(self, x):
        raise NotImplementedError

    def is_identity(self, x) -> bool:
        return x == self.identity

    def sign(self, x) -> int:
        raise NotImplementedError

    def arch_cmp(self, x, y) -> str:
        raise NotImplementedError

    def conjugate(self, x, y):
        """``y x y^-1``."""
        return self.multiply(self.multiply(y, x), self.invert(y))

    def abs(self, x):
        if self.is_identity(x) or self.sign(x) > 0:
            return x
        return self.invert(x)

    def power(self, x, n: int):
        if n < 0:
            x, n = self.invert(x), -n
        out = self.identity
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    def is_positive(self, x) -> bool:
        return not self.is_identity(x) and self.sign(x) > 0


def _cmp_with_identity(group, x, y):
    ex, ey = group.is_identity(x), group.is_identity(y)
    if ex and ey:
        return "~"
    if ex:
        return "<<"
    if ey:
        return ">>"
    return None


class F2Group(OrderedGroup):
    """F2 with the order of a :class:`SignOracle`."""

    identity = fw.IDENTITY

    def __init__(self, oracle: SignOracle = MAGNUS):
        self.oracle = oracle

    def multiply(self, x, y):
        return fw.multiply(x, y)

    def invert(self, x):
        return fw.invert(x)

    def sign(self, x):
        return self.oracle.sign(x)

    def arch_cmp(self, x, y):
        trivial = _cmp_with_identity(self, x, y)
        if trivial is not None:
            return trivial
        return self.oracle.arch_cmp(x, y)

    def fmt(self, x) -> str:
        return fw.fmt(x)
