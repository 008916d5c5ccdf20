"""Exact rational interval arithmetic used by the concurrency certificate."""

from __future__ import annotations

from fractions import Fraction

import pytest

from cubicbrauer.intervals import Box, RatInterval, box_det3, cross_product, sqrt_interval


def test_interval_ops_exact():
    a = RatInterval(Fraction(1, 3), Fraction(1, 2))
    b = RatInterval(Fraction(-2), Fraction(3))
    assert (a + b).lo == Fraction(1, 3) - 2
    assert (a - b).hi == Fraction(1, 2) + 2
    p = a * b
    assert p.lo == min(-Fraction(2, 3), -1, Fraction(1), Fraction(3, 2))
    assert p.hi == Fraction(3, 2)
    assert b.contains_zero() and not a.contains_zero()


def test_interval_division():
    a = RatInterval(Fraction(1), Fraction(2))
    b = RatInterval(Fraction(2), Fraction(4))
    q = a / b
    assert q.lo == Fraction(1, 4) and q.hi == 1
    with pytest.raises(ZeroDivisionError):
        a / RatInterval(Fraction(-1), Fraction(1))


def test_sqrt_interval_encloses_truth():
    for value in (2, 3, Fraction(7, 5), Fraction(1, 9), 0):
        iv = sqrt_interval(RatInterval.point(value), bits=64)
        assert iv.lo * iv.lo <= Fraction(value) <= iv.hi * iv.hi
        assert iv.hi - iv.lo <= Fraction(1, 2**62)
    # perfect squares still get tight enclosures
    iv = sqrt_interval(RatInterval.point(4), bits=32)
    assert iv.lo <= 2 <= iv.hi


def test_sqrt_interval_rejects_negative():
    with pytest.raises(ValueError):
        sqrt_interval(RatInterval(Fraction(-2), Fraction(-1)), bits=16)


def test_box_multiplication():
    i = Box.from_parts(0, 1)  # the imaginary unit, exactly
    assert (i * i).re.lo == -1 and (i * i).im.is_point() and (i * i).im.lo == 0
    z = Box.from_parts(Fraction(1, 2), Fraction(-3, 2))
    w = z * z.conjugate()
    assert w.re.lo == Fraction(1, 4) + Fraction(9, 4)
    assert w.im.lo == 0 and w.im.hi == 0


def test_box_det3_exact_zero():
    rows = [
        [Box.point(1), Box.point(2), Box.point(3)],
        [Box.point(4), Box.point(5), Box.point(6)],
        [Box.point(7), Box.point(8), Box.point(9)],
    ]
    det = box_det3(rows)
    assert det.is_exact_zero()


def test_box_det3_nonzero():
    rows = [
        [Box.point(1), Box.point(0), Box.point(0)],
        [Box.point(0), Box.point(1), Box.point(0)],
        [Box.point(0), Box.point(0), Box.point(1)],
    ]
    assert not box_det3(rows).contains_zero()


def test_cross_product_incidence():
    p = (Box.point(1), Box.point(2), Box.point(3))
    q = (Box.point(1), Box.point(-1), Box.point(0))
    line = cross_product(p, q)
    # both points lie on the joining line
    for point in (p, q):
        acc = Box.point(0)
        for a, b in zip(line, point):
            acc = acc + a * b
        assert acc.is_exact_zero()
