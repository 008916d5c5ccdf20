"""Certified interval arithmetic with exact rational endpoints.

Addition, subtraction and multiplication of intervals are exact (no
rounding at all); square roots are enclosed by outward rational rounding
at a requested bit precision.  Complex numbers are boxes (rectangles)
with interval real and imaginary parts.  This is the engine behind the
certified Eckardt concurrency test: a determinant evaluated in box
arithmetic that excludes zero is a proof of non-vanishing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError("empty interval")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> RatInterval:
        x = Fraction(x)
        return cls(x, x)

    def __add__(self, other: RatInterval) -> RatInterval:
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: RatInterval) -> RatInterval:
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> RatInterval:
        return RatInterval(-self.hi, -self.lo)

    def __mul__(self, other: RatInterval) -> RatInterval:
        products = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ]
        return RatInterval(min(products), max(products))

    def inverse(self) -> RatInterval:
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: RatInterval) -> RatInterval:
        return self * other.inverse()

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def intersect_nonnegative(self) -> RatInterval:
        if self.hi < 0:
            raise ValueError("interval is entirely negative")
        return RatInterval(max(self.lo, Fraction(0)), self.hi)


def sqrt_interval(x: RatInterval, bits: int) -> RatInterval:
    """Enclosure of sqrt on a non-negative interval, outward-rounded.

    Endpoints are dyadic approximations of the true square roots accurate
    to 2^-bits, computed with integer isqrt; no floating point.
    """
    x = x.intersect_nonnegative()
    return RatInterval(_sqrt_lower(x.lo, bits), _sqrt_upper(x.hi, bits))


def _sqrt_lower(q: Fraction, bits: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    # floor(sqrt(q * scale)) / 2^bits <= sqrt(q)
    n = q.numerator * scale
    return Fraction(isqrt(n // q.denominator), 1 << bits)


def _sqrt_upper(q: Fraction, bits: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = q.numerator * scale
    root = isqrt(-(-n // q.denominator))  # ceil divide, then floor sqrt
    if root * root < -(-n // q.denominator):
        root += 1
    return Fraction(root, 1 << bits)


@dataclass(frozen=True)
class Box:
    """A complex rectangle: re + i*im with interval parts."""

    re: RatInterval
    im: RatInterval

    @classmethod
    def point(cls, x) -> Box:
        return cls(RatInterval.point(x), RatInterval.point(0))

    @classmethod
    def from_parts(cls, re, im) -> Box:
        return cls(
            re if isinstance(re, RatInterval) else RatInterval.point(re),
            im if isinstance(im, RatInterval) else RatInterval.point(im),
        )

    def conjugate(self) -> Box:
        return Box(self.re, -self.im)

    def __add__(self, other: Box) -> Box:
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other: Box) -> Box:
        return Box(self.re - other.re, self.im - other.im)

    def __neg__(self) -> Box:
        return Box(-self.re, -self.im)

    def __mul__(self, other: Box) -> Box:
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def is_exact_zero(self) -> bool:
        return (
            self.re.is_point()
            and self.im.is_point()
            and self.re.lo == 0
            and self.im.lo == 0
        )


def box_det3(rows: list[list[Box]]) -> Box:
    """3x3 determinant in box arithmetic (Laplace expansion)."""
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross_product(p: tuple[Box, Box, Box], q: tuple[Box, Box, Box]) -> tuple[Box, Box, Box]:
    """Projective line through two points (or intersection of two lines)."""
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


__all__ = ["Box", "RatInterval", "box_det3", "cross_product", "sqrt_interval"]
