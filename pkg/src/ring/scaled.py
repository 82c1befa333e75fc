# src/ring/scaled.py
"""Scaled p-adic values u*p^v and exact rationals n/p^k.

A ScaledResidue carries its own guaranteed precision: the unit u is known
mod p^digits, so the value is known mod p^(v + digits). A zero result is
kept as a marker whose v is the absolute precision to which it is zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ring.residue import PrimeContext, balanced_mod, valuation
from util.errors import BadArgument, PrecisionExhausted


def _split(n: int, p: int) -> tuple[int, int]:
    v = valuation(n, p)
    return v, n // p**v


@dataclass(frozen=True)
class ScaledResidue:
    p: int
    v: int
    u: int
    digits: int

    # construction

    @classmethod
    def zero(cls, p: int, precision: int) -> "ScaledResidue":
        return cls(p=p, v=precision, u=0, digits=0)

    @classmethod
    def exact(cls, n: int, p: int, digits: int) -> "ScaledResidue":
        """An exact integer, with `digits` relative digits kept."""
        if n == 0:
            return cls.zero(p, digits)
        v, unit = _split(n, p)
        return cls(p=p, v=v, u=unit % p**digits, digits=digits)

    @classmethod
    def from_int(cls, ctx: PrimeContext, n: int) -> "ScaledResidue":
        return cls.exact(n, ctx.p, ctx.N)

    @classmethod
    def from_residue(cls, ctx: PrimeContext, r: int) -> "ScaledResidue":
        """A residue known mod p^N; its unit part keeps N - v digits."""
        r %= ctx.modulus
        if r == 0:
            return cls.zero(ctx.p, ctx.N)
        v, unit = _split(r, ctx.p)
        d = ctx.N - v
        return cls(p=ctx.p, v=v, u=unit % ctx.p**d, digits=d)

    @classmethod
    def from_ppower(cls, ctx: PrimeContext, r: "PPowerRational") -> "ScaledResidue":
        return cls.from_int(ctx, r.n).shift(-r.k)

    # inspection

    @property
    def is_zero(self) -> bool:
        return self.u == 0

    @property
    def absolute_precision(self) -> int:
        return self.v + self.digits

    def residue(self, digits: int) -> int:
        """The value mod p^digits; needs v >= 0 and enough known digits."""
        if self.v < 0 and not self.is_zero:
            raise BadArgument(f"value {self} is not a p-adic integer")
        if digits > self.absolute_precision:
            raise PrecisionExhausted(
                f"{self} is only known mod {self.p}^{self.absolute_precision}"
            )
        if self.is_zero:
            return 0
        m = self.p**digits
        return self.u * pow(self.p, self.v, m) % m

    def lift_integer(self, bound: int) -> int:
        """The unique integer in [-bound, bound] matching every known digit."""
        if self.is_zero:
            prec = self.v
            r = 0
        else:
            if self.v < 0:
                raise BadArgument(f"value {self} is not a p-adic integer")
            prec = self.absolute_precision
            r = self.u * self.p**self.v
        m = self.p**prec
        if 2 * bound >= m:
            raise PrecisionExhausted(
                f"bound {bound} needs more than {prec} digits of {self.p}"
            )
        n = balanced_mod(r, m)
        if abs(n) > bound:
            raise BadArgument(f"lift {n} exceeds bound {bound}")
        return n

    def lift_ppower(self, bound: int) -> "PPowerRational":
        """Lift to n/p^k, where |n| <= bound and k = max(0, -v)."""
        k = max(0, -self.v) if not self.is_zero else 0
        return PPowerRational(self.shift(k).lift_integer(bound), k, self.p)

    def congruent(self, other: "ScaledResidue | int", digits: int) -> bool:
        """True iff self - other vanishes mod p^digits."""
        diff = self - other
        if diff.is_zero:
            if diff.v < digits:
                raise PrecisionExhausted(
                    f"difference only known mod {self.p}^{diff.v}, asked {digits}"
                )
            return True
        return diff.v >= digits

    # arithmetic

    def shift(self, k: int) -> "ScaledResidue":
        """Multiply by p^k."""
        return ScaledResidue(self.p, self.v + k, self.u, self.digits)

    def _coerce(self, other: "ScaledResidue | int") -> "ScaledResidue":
        if isinstance(other, ScaledResidue):
            if other.p != self.p:
                raise BadArgument(f"mixing p={self.p} and p={other.p}")
            return other
        n = int(other)
        if n == 0:
            return ScaledResidue.zero(self.p, max(self.absolute_precision, 1))
        vn = valuation(n, self.p)
        d = max(self.digits, self.absolute_precision - vn, 1)
        return ScaledResidue.exact(n, self.p, d)

    def __neg__(self) -> "ScaledResidue":
        if self.is_zero:
            return self
        return ScaledResidue(self.p, self.v, (-self.u) % self.p**self.digits, self.digits)

    def __mul__(self, other: "ScaledResidue | int") -> "ScaledResidue":
        return scaled_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __add__(self, other: "ScaledResidue | int") -> "ScaledResidue":
        return scaled_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: "ScaledResidue | int") -> "ScaledResidue":
        return scaled_add(self, -self._coerce(other))

    def __rsub__(self, other: "ScaledResidue | int") -> "ScaledResidue":
        return scaled_add(self._coerce(other), -self)

    def inverse(self) -> "ScaledResidue":
        if self.is_zero:
            raise PrecisionExhausted(f"cannot invert {self}")
        m = self.p**self.digits
        return ScaledResidue(self.p, -self.v, pow(self.u, -1, m), self.digits)

    def __truediv__(self, other: "ScaledResidue | int") -> "ScaledResidue":
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int) -> "ScaledResidue":
        if e < 0:
            return self.inverse() ** (-e)
        if self.is_zero:
            return ScaledResidue.zero(self.p, self.v * e) if e else self._coerce(1)
        m = self.p**self.digits
        return ScaledResidue(self.p, self.v * e, pow(self.u, e, m), self.digits)

    def __str__(self) -> str:
        p = self.p
        if self.is_zero:
            return f"O({p}^{self.v})"
        u = balanced_mod(self.u, p**self.digits)
        return f"{u}*{p}^{self.v}+O({p}^{self.absolute_precision})"


def scaled_mul(a: ScaledResidue, b: ScaledResidue) -> ScaledResidue:
    if a.is_zero or b.is_zero:
        # zero marker absorbs: value vanishes to the sum of known valuations
        va = a.v
        vb = b.v
        return ScaledResidue.zero(a.p, va + vb)
    d = min(a.digits, b.digits)
    return ScaledResidue(a.p, a.v + b.v, a.u * b.u % a.p**d, d)


def scaled_add(a: ScaledResidue, b: ScaledResidue) -> ScaledResidue:
    """Align to the smaller valuation, add, and renormalise.

    The result keeps exactly the digits both operands guarantee, minus the
    digits lost to cancellation.
    """
    p = a.p
    prec = min(a.absolute_precision, b.absolute_precision)
    terms = [x for x in (a, b) if not x.is_zero]
    if not terms:
        return ScaledResidue.zero(p, prec)
    v0 = min(x.v for x in terms)
    if prec <= v0:
        return ScaledResidue.zero(p, prec)
    width = prec - v0
    m = p**width
    s = sum(x.u * p ** (x.v - v0) for x in terms) % m
    if s == 0:
        return ScaledResidue.zero(p, prec)
    k, unit = _split(s, p)
    d = width - k
    return ScaledResidue(p, v0 + k, unit % p**d, d)


@dataclass(frozen=True, eq=False)
class PPowerRational:
    """Exact rational n / p^k with k >= 0, kept reduced."""

    n: int
    k: int
    p: int

    def __post_init__(self) -> None:
        n, k = int(self.n), int(self.k)
        if k < 0:
            n, k = n * self.p ** (-k), 0
        if n == 0:
            k = 0
        while k > 0 and n % self.p == 0:
            n //= self.p
            k -= 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_fraction(cls, q: Fraction, p: int) -> "PPowerRational":
        den = q.denominator
        k = 0
        while den % p == 0:
            den //= p
            k += 1
        if den != 1:
            raise BadArgument(f"{q} has a denominator other than a power of {p}")
        return cls(q.numerator, k, p)

    def to_fraction(self) -> Fraction:
        return Fraction(self.n, self.p**self.k)

    @property
    def is_integer(self) -> bool:
        return self.k == 0

    def as_int(self) -> int:
        if self.k:
            raise BadArgument(f"{self} is not an integer")
        return self.n

    @property
    def valuation(self) -> int | None:
        if self.n == 0:
            return None
        return valuation(self.n, self.p) - self.k

    def shift(self, j: int) -> "PPowerRational":
        """Multiply by p^j."""
        if j >= 0:
            return PPowerRational(self.n * self.p**j, self.k, self.p)
        return PPowerRational(self.n, self.k - j, self.p)

    def _coerce(self, other: "PPowerRational | int") -> "PPowerRational":
        if isinstance(other, PPowerRational):
            if other.p != self.p:
                raise BadArgument(f"mixing p={self.p} and p={other.p}")
            return other
        return PPowerRational(int(other), 0, self.p)

    def __add__(self, other: "PPowerRational | int") -> "PPowerRational":
        o = self._coerce(other)
        k = max(self.k, o.k)
        n = self.n * self.p ** (k - self.k) + o.n * self.p ** (k - o.k)
        return PPowerRational(n, k, self.p)

    __radd__ = __add__

    def __neg__(self) -> "PPowerRational":
        return PPowerRational(-self.n, self.k, self.p)

    def __sub__(self, other: "PPowerRational | int") -> "PPowerRational":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "PPowerRational | int") -> "PPowerRational":
        return self._coerce(other) - self

    def __mul__(self, other: "PPowerRational | int") -> "PPowerRational":
        o = self._coerce(other)
        return PPowerRational(self.n * o.n, self.k + o.k, self.p)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PPowerRational":
        if e < 0:
            raise BadArgument("negative powers leave the ring Z[1/p]")
        return PPowerRational(self.n**e, self.k * e, self.p)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.k == 0 and self.n == other
        if isinstance(other, PPowerRational):
            return (self.n, self.k, self.p) == (other.n, other.k, other.p)
        if isinstance(other, Fraction):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __str__(self) -> str:
        if self.k == 0:
            return str(self.n)
        return f"{self.n}/{self.p**self.k}"

    def __repr__(self) -> str:
        return f"PPowerRational({self.n}/{self.p}^{self.k})"
