# src/verify/squares.py
from __future__ import annotations

import math
from typing import NamedTuple

from util.errors import NoRepresentation


class TwoSquares(NamedTuple):
    """p = x^2 + y^2 with x odd and both positive."""

    x: int
    y: int


def two_squares(p: int) -> TwoSquares:
    """Search x = 1, 3, 5, ... up to sqrt(p); raises NoRepresentation for p = 3 mod 4."""
    if p % 4 != 1:
        raise NoRepresentation(f"p={p} is not 1 mod 4, so it is not a sum of two squares")
    for x in range(1, math.isqrt(p) + 1, 2):
        rest = p - x * x
        y = math.isqrt(rest)
        if y > 0 and y * y == rest:
            return TwoSquares(x, y)
    raise NoRepresentation(f"no representation {p} = x^2 + y^2 found")
