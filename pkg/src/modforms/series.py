# src/modforms/series.py
"""Truncated q-series with exact integer coefficients.

Coefficients are numpy object arrays of Python ints, so convolution never
overflows however large the Hecke recursions push them.
"""
from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from util.errors import BadArgument

log = logging.getLogger(__name__)


class SeriesZ:
    """sum_{n <= order} c_n q^n."""

    def __init__(self, coeffs, order: int | None = None):
        arr = np.array([int(c) for c in coeffs], dtype=object)
        if order is None:
            order = len(arr) - 1
        if order < 0:
            raise BadArgument(f"series order {order} must be >= 0")
        if len(arr) > order + 1:
            arr = arr[: order + 1]
        elif len(arr) < order + 1:
            arr = np.concatenate([arr, np.zeros(order + 1 - len(arr), dtype=object)])
        self.coeffs = arr
        self.order = order

    @classmethod
    def one(cls, order: int) -> "SeriesZ":
        return cls([1], order)

    def coeff(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise BadArgument(f"q^{n} is beyond the series order {self.order}")
        return int(self.coeffs[n])

    def shift(self, k: int) -> "SeriesZ":
        """Multiply by q^k, keeping the order."""
        if k < 0:
            raise BadArgument(f"negative shift {k}")
        body = np.concatenate([np.zeros(k, dtype=object), self.coeffs])
        return SeriesZ(body, self.order)

    def to_list(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"SeriesZ(order={self.order}, coeffs={self.to_list()[:6]}...)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesZ):
            return NotImplemented
        return self.order == other.order and self.to_list() == other.to_list()

    def __add__(self, other: "SeriesZ | int") -> "SeriesZ":
        if isinstance(other, int):
            out = self.coeffs.copy()
            out[0] += other
            return SeriesZ(out, self.order)
        order = min(self.order, other.order)
        return SeriesZ(self.coeffs[: order + 1] + other.coeffs[: order + 1], order)

    __radd__ = __add__

    def __neg__(self) -> "SeriesZ":
        return SeriesZ(-self.coeffs, self.order)

    def __sub__(self, other: "SeriesZ | int") -> "SeriesZ":
        return self + (-other)

    def __mul__(self, other: "SeriesZ | int") -> "SeriesZ":
        if isinstance(other, int):
            return SeriesZ(self.coeffs * other, self.order)
        order = min(self.order, other.order)
        full = np.convolve(self.coeffs[: order + 1], other.coeffs[: order + 1])
        return SeriesZ(full[: order + 1], order)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "SeriesZ":
        if power < 0:
            raise BadArgument("only non-negative powers of a q-series")
        res = SeriesZ.one(self.order)
        base = self
        while power > 0:
            if power % 2 == 1:
                res = res * base
            base = base * base
            power //= 2
        return res


@lru_cache(maxsize=32)
def _euler_product(order: int) -> SeriesZ:
    # prod (1 - q^n) = sum_m (-1)^m q^(m(3m-1)/2), m over all integers
    coeffs = [0] * (order + 1)
    m = 0
    while m * (3 * m - 1) // 2 <= order:
        sign = -1 if m % 2 else 1
        for e in {m * (3 * m - 1) // 2, m * (3 * m + 1) // 2}:
            if e <= order:
                coeffs[e] += sign
        m += 1
    return SeriesZ(coeffs, order)


def eta_factor(step: int, power: int, order: int) -> SeriesZ:
    """prod_{n >= 1} (1 - q^(step n))^power to q^order."""
    if step < 1:
        raise BadArgument(f"step {step} must be >= 1")
    base = _euler_product(order // step).to_list()
    spread = [0] * (order + 1)
    for i, c in enumerate(base):
        spread[i * step] = c
    return SeriesZ(spread, order) ** power
