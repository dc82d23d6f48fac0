"""Genus-indexed variable alphabet.

Four kinds of symbols live in the same ring:

* ``x[i,j]``  -- the coordinate functions on C^{3g}, i in {1,2,3}, j odd, 1 <= j <= 2g-1;
* ``l[2s]``   -- the curve parameters lambda_{2s}, 4 <= 2s <= 4g+2;
* ``w[a,b]``  -- auxiliary second log-derivatives, a, b odd, 3 <= a <= b <= 2g-1;
* ``f(n)``    -- the n-th derivative of the KdV field in the free differential ring.

Variables are plain named tuples so that monomials (sorted tuples of
``(VarId, exponent)``) hash and compare at C speed.
"""

from __future__ import annotations

from typing import NamedTuple

X, LAMBDA, W, FREE = 0, 1, 2, 3
KIND_NAMES = {X: "x", LAMBDA: "l", W: "w", FREE: "f"}


class VarId(NamedTuple):
    kind: int
    a: int
    b: int = 0

    @property
    def weight(self) -> int:
        if self.kind == X:
            return self.a + self.b
        if self.kind == LAMBDA:
            return self.a
        if self.kind == W:
            return self.a + self.b
        return self.a + 2

    def __str__(self) -> str:
        if self.kind == X:
            return f"x[{self.a},{self.b}]"
        if self.kind == LAMBDA:
            return f"l[{self.a}]"
        if self.kind == W:
            return f"w[{self.a},{self.b}]"
        return f"f({self.a})"

    __repr__ = __str__

    def in_genus(self, g: int | None) -> bool:
        """Whether the variable belongs to the genus-``g`` alphabet."""
        if self.kind == FREE:
            return self.a >= 0
        if g is None:
            return False
        if self.kind == X:
            return self.a in (1, 2, 3) and self.b % 2 == 1 and 1 <= self.b <= 2 * g - 1
        if self.kind == LAMBDA:
            return self.a % 2 == 0 and 4 <= self.a <= 4 * g + 2
        return (self.a % 2 == 1 and self.b % 2 == 1
                and 3 <= self.a <= self.b <= 2 * g - 1)


def _checked(v: VarId, g: int | None) -> VarId:
    if not v.in_genus(g):
        raise ValueError(f"variable {v} is outside the genus-{g} alphabet")
    return v


def xvar(i: int, j: int, g: int) -> VarId:
    return _checked(VarId(X, i, j), g)


def lamvar(index: int, g: int) -> VarId:
    """lambda_{index}; ``index`` is the even subscript 2s."""
    return _checked(VarId(LAMBDA, index), g)


def wvar(a: int, b: int, g: int) -> VarId:
    a, b = min(a, b), max(a, b)
    return _checked(VarId(W, a, b), g)


def fvar(n: int) -> VarId:
    return _checked(VarId(FREE, n), None)


def x_coordinates(g: int) -> list[VarId]:
    """The 3g coordinates on C^{3g}, column by column."""
    return [VarId(X, i, j) for j in range(1, 2 * g, 2) for i in (1, 2, 3)]


def lambda_variables(g: int) -> list[VarId]:
    return [VarId(LAMBDA, 2 * s) for s in range(2, 2 * g + 2)]


def w_variables(g: int) -> list[VarId]:
    odd = range(3, 2 * g, 2)
    return [VarId(W, a, b) for a in odd for b in odd if a <= b]


def free_variables(max_order: int) -> list[VarId]:
    return [VarId(FREE, n) for n in range(max_order + 1)]
