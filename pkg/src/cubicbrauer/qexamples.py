"""Rational examples over Q: blowups of six points on a twisted cubic.

Given a separable cubic F with nonzero t^2 coefficient and a shift a != 0,
the six points [1 : r : r^3] over the roots of H(t) = F(t) F(t-a) are in
general position when (i) H has distinct roots, (ii) its degree-5
coefficient is nonzero, and (iii) no three roots sum to zero.  Blowing
them up gives a smooth cubic surface over Q whose boundary trio of lines
is permuted by the Galois group of F; provided the lines are not
concurrent, the transcendental Brauer group of the complement is the
invariant group of the twisted boundary module, so the whole pipeline
reduces to the cubic's Galois type.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Literal

from .arith import is_rational_square, squarefree_part
from .brauer import BoundaryDescriptor, transcendental_bound
from .errors import (
    EckardtIndeterminate,
    EckardtPoint,
    GeneralPositionFailed,
    NotSeparable,
    WrongDegree,
)
from .intervals import Box, RatInterval, box_det3, cross_product, sqrt_interval
from .intlinalg import FinAbGroup
from .ratpoly import (
    RationalPoly,
    discriminant,
    fraction_det,
    isolate_real_roots,
    rational_roots,
    refine_root,
    resultant,
)

DEFAULT_ECKARDT_BITS = 128
MAX_ECKARDT_BITS = 1024


@dataclass(frozen=True)
class GaloisType:
    """Galois type of a separable rational cubic, with quadratic class d."""

    variant: Literal["trivial", "c2", "c3", "s3"]
    d: int | None = None

    def __post_init__(self):
        needs_d = self.variant in ("c2", "s3")
        if needs_d and (self.d is None or self.d in (0, 1)):
            raise ValueError("c2/s3 types carry a nontrivial square class")
        if not needs_d and self.d is not None:
            raise ValueError("trivial/c3 types carry no square class")


def cubic_galois_type(f: RationalPoly) -> GaloisType:
    """Galois group of a degree-3 separable polynomial over Q."""
    if f.is_zero() or f.degree != 3:
        raise WrongDegree("expected a cubic polynomial")
    disc = discriminant(f)
    if disc == 0:
        raise NotSeparable("cubic has a repeated root")
    roots = rational_roots(f)
    if len(roots) == 3:
        return GaloisType("trivial")
    if len(roots) == 1:
        quadratic = f // RationalPoly((-roots[0], Fraction(1)))
        qdisc = discriminant(quadratic)
        return GaloisType("c2", squarefree_part(qdisc))
    # no rational root: irreducible cubic
    if is_rational_square(disc):
        return GaloisType("c3")
    return GaloisType("s3", squarefree_part(disc))


# -- general position --------------------------------------------------------


@dataclass(frozen=True)
class GeneralPositionReport:
    distinct_roots: bool
    degree5_nonzero: bool
    no_triple_sum_zero: bool
    resultant_f_fshift: Fraction
    degree5_coefficient: Fraction
    derivation_determinant: Fraction

    @property
    def ok(self) -> bool:
        return self.distinct_roots and self.degree5_nonzero and self.no_triple_sum_zero

    def failures(self) -> list[str]:
        out = []
        if not self.distinct_roots:
            out.append("repeated root among the six points")
        if not self.degree5_nonzero:
            out.append("degree-5 coefficient of F(t)F(t-a) vanishes")
        if not self.no_triple_sum_zero:
            out.append("three of the six roots sum to zero")
        return out


def _companion(monic: RationalPoly) -> list[list[Fraction]]:
    n = monic.degree
    cols = []
    for j in range(n - 1):
        cols.append([Fraction(1) if i == j + 1 else Fraction(0) for i in range(n)])
    cols.append([-monic.coeff(i) for i in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _triple_sum_determinant(h: RationalPoly) -> Fraction:
    """det of the derivation operator on the third exterior power.

    The companion matrix C of monic H acts on Q^6; the operator
    v_i^v_j^v_k -> Cv_i^v_j^v_k + v_i^Cv_j^v_k + v_i^v_j^Cv_k on the
    20-dimensional third exterior power has eigenvalues exactly the sums
    of three distinct roots of H, so its determinant vanishes iff some
    three roots sum to zero.
    """
    c = _companion(h.monic())
    triples = list(combinations(range(6), 3))
    index = {t: i for i, t in enumerate(triples)}
    size = len(triples)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for col, triple in enumerate(triples):
        for slot in range(3):
            for m in range(6):
                coeff = c[m][triple[slot]]
                if coeff == 0:
                    continue
                replaced = list(triple)
                replaced[slot] = m
                if len(set(replaced)) < 3:
                    continue
                sign = 1
                ordered = sorted(replaced)
                # parity of the permutation sorting a 3-tuple
                inversions = sum(
                    1
                    for x, y in combinations(range(3), 2)
                    if replaced[x] > replaced[y]
                )
                if inversions % 2:
                    sign = -1
                mat[index[tuple(ordered)]][col] += sign * coeff
    return fraction_det(mat)


def general_position(f: RationalPoly, a) -> GeneralPositionReport:
    """Evaluate the three general-position conditions for H = F(t)F(t-a)."""
    a = Fraction(a)
    if f.is_zero() or f.degree != 3:
        raise WrongDegree("expected a cubic polynomial")
    if a == 0:
        raise ValueError("the shift a must be nonzero")
    shifted = f.shift(a)  # F(t - a)
    h = f * shifted
    disc_f = discriminant(f)
    res = resultant(f, shifted)
    distinct = disc_f != 0 and res != 0
    degree5 = h.coeff(5)
    det = _triple_sum_determinant(h)
    return GeneralPositionReport(
        distinct_roots=distinct,
        degree5_nonzero=degree5 != 0,
        no_triple_sum_zero=det != 0,
        resultant_f_fshift=res,
        degree5_coefficient=degree5,
        derivation_determinant=det,
    )


# -- certified Eckardt concurrency check -------------------------------------


class EckardtVerdict(Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


def _refined_interval(
    f: RationalPoly, isolating: tuple[Fraction, Fraction], bits: int
) -> RatInterval:
    width = Fraction(1, 1 << bits)
    lo, hi = refine_root(f, isolating, width)
    return RatInterval(lo, hi)


def _cubic_root_boxes(f: RationalPoly, bits: int) -> list[Box]:
    """Certified enclosures of the three roots of a separable cubic."""
    boxes: list[Box] = []
    current = f.monic()
    for r in rational_roots(f):
        boxes.append(Box.point(r))
        current = current // RationalPoly((-r, Fraction(1)))
    if current.degree == 0:
        return boxes
    if current.degree == 2:
        b, c = current.coeff(1), current.coeff(0)
        disc = b * b - 4 * c
        if disc > 0:
            s = sqrt_interval(RatInterval.point(disc), bits)
            half = RatInterval.point(Fraction(1, 2))
            minus_b = RatInterval.point(-b)
            boxes.append(Box((minus_b + s) * half, RatInterval.point(0)))
            boxes.append(Box((minus_b - s) * half, RatInterval.point(0)))
        else:
            s = sqrt_interval(RatInterval.point(-disc), bits)
            half = RatInterval.point(Fraction(1, 2))
            re = RatInterval.point(-b / 2)
            boxes.append(Box(re, s * half))
            boxes.append(Box(re, -(s * half)))
        return boxes
    # irreducible cubic
    disc = discriminant(current)
    isolating = isolate_real_roots(current)
    if disc > 0:
        assert len(isolating) == 3
        for iv in isolating:
            boxes.append(Box(_refined_interval(current, iv, bits), RatInterval.point(0)))
        return boxes
    assert len(isolating) == 1
    rho = _refined_interval(current, isolating[0], bits)
    extra = bits
    while rho.contains_zero():
        # the real root is nonzero (no rational roots), so this terminates
        extra *= 2
        rho = _refined_interval(current, isolating[0], extra)
    c2 = current.coeff(2)
    c0 = current.coeff(0)
    x = (RatInterval.point(-c2) - rho) * RatInterval.point(Fraction(1, 2))
    norm = RatInterval.point(-c0) / rho  # |alpha|^2 = -c0 / rho
    y = sqrt_interval(norm - x * x, bits)
    boxes.append(Box(rho, RatInterval.point(0)))
    boxes.append(Box(x, y))
    boxes.append(Box(x, -y))
    return boxes


def _concurrency_determinant(f: RationalPoly, a: Fraction, bits: int) -> Box:
    roots = _cubic_root_boxes(f, bits)
    shift = Box.point(a)
    one = Box.point(1)
    lines = []
    for alpha in roots:
        beta = alpha + shift
        p = (one, alpha, alpha * alpha * alpha)
        q = (one, beta, beta * beta * beta)
        lines.append(cross_product(p, q))
    return box_det3(lines)


def eckardt_concurrent(
    f: RationalPoly,
    a,
    start_bits: int = DEFAULT_ECKARDT_BITS,
    max_bits: int = MAX_ECKARDT_BITS,
) -> EckardtVerdict:
    """Certified test whether the three boundary lines are concurrent.

    The lines join [1 : r : r^3] to [1 : r+a : (r+a)^3] over the roots r
    of F.  The 3x3 determinant of their coordinates is evaluated in exact
    interval boxes at doubling precision; Yes/No are only returned when
    the enclosure pins or excludes zero.
    """
    a = Fraction(a)
    report = general_position(f, a)
    if not report.ok:
        raise GeneralPositionFailed(report)
    bits = start_bits
    while True:
        det = _concurrency_determinant(f, a, bits)
        if not det.contains_zero():
            return EckardtVerdict.NO
        if det.is_exact_zero():
            return EckardtVerdict.YES
        if bits >= max_bits:
            return EckardtVerdict.INDETERMINATE
        bits = min(2 * bits, max_bits)


# -- the end-to-end example pipeline ------------------------------------------


def boundary_from_galois(galois: GaloisType) -> BoundaryDescriptor:
    if galois.variant in ("c2", "s3"):
        return BoundaryDescriptor("three_lines", galois.variant, d=galois.d)
    return BoundaryDescriptor("three_lines", galois.variant)


def example_brauer(
    f: RationalPoly,
    a,
    start_bits: int = DEFAULT_ECKARDT_BITS,
    max_bits: int = MAX_ECKARDT_BITS,
) -> FinAbGroup:
    """Br(U)/Br_1(U) for the blowup surface attached to (F, a).

    For this construction the Galois-invariant bound is attained, so the
    descriptor's transcendental bound is reported as an equality.
    """
    a = Fraction(a)
    report = general_position(f, a)
    if not report.ok:
        raise GeneralPositionFailed(report)
    verdict = eckardt_concurrent(f, a, start_bits=start_bits, max_bits=max_bits)
    if verdict is EckardtVerdict.YES:
        raise EckardtPoint("the three boundary lines are concurrent")
    if verdict is EckardtVerdict.INDETERMINATE:
        raise EckardtIndeterminate("precision cap reached without certification")
    return transcendental_bound(boundary_from_galois(cubic_galois_type(f)))


@dataclass(frozen=True)
class SearchOutcome:
    a: Fraction
    rejected: tuple[tuple[Fraction, str], ...]


def find_admissible_a(
    f: RationalPoly,
    bound: int = 20,
    start_bits: int = DEFAULT_ECKARDT_BITS,
    max_bits: int = MAX_ECKARDT_BITS,
) -> SearchOutcome:
    """Smallest integer a in 1..bound passing general position and Eckardt."""
    rejected: list[tuple[Fraction, str]] = []
    for candidate in range(1, bound + 1):
        a = Fraction(candidate)
        report = general_position(f, a)
        if not report.ok:
            rejected.append((a, "; ".join(report.failures())))
            continue
        verdict = eckardt_concurrent(f, a, start_bits=start_bits, max_bits=max_bits)
        if verdict is EckardtVerdict.NO:
            return SearchOutcome(a=a, rejected=tuple(rejected))
        rejected.append((a, f"eckardt check: {verdict.value}"))
    raise EckardtIndeterminate(f"no admissible a found up to {bound}")


# -- divisor principality -----------------------------------------------------


@dataclass(frozen=True)
class PrincipalityReport:
    d1: tuple[int, ...]
    d2: tuple[int, ...]
    d1_plus_d2: tuple[int, ...]

    @property
    def all_principal(self) -> bool:
        zero = (0,) * 7
        return self.d1 == zero and self.d2 == zero and self.d1_plus_d2 == zero


def principality_check() -> PrincipalityReport:
    """Verify that the divisor combinations D1, D2 vanish in Pic.

    Uses the literal class vectors [l1] = (3,1,0,0,1,0,0),
    [l2] = (3,0,1,0,0,1,0), [l3] = (3,0,0,1,0,0,1) in the basis
    (l, e1..e6), with D1 = [l1]-[l2]-[e1]-[e4]+[e2]+[e5] and
    D2 = [l2]-[l3]-[e2]-[e5]+[e3]+[e6].
    """
    l1 = (3, 1, 0, 0, 1, 0, 0)
    l2 = (3, 0, 1, 0, 0, 1, 0)
    l3 = (3, 0, 0, 1, 0, 0, 1)

    def unit(i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(7))

    def comb(*terms):
        out = [0] * 7
        for sign, vec in terms:
            for i, x in enumerate(vec):
                out[i] += sign * x
        return tuple(out)

    d1 = comb((1, l1), (-1, l2), (-1, unit(1)), (-1, unit(4)), (1, unit(2)), (1, unit(5)))
    d2 = comb((1, l2), (-1, l3), (-1, unit(2)), (-1, unit(5)), (1, unit(3)), (1, unit(6)))
    total = tuple(x + y for x, y in zip(d1, d2))
    return PrincipalityReport(d1=d1, d2=d2, d1_plus_d2=total)


__all__ = [
    "DEFAULT_ECKARDT_BITS",
    "EckardtVerdict",
    "GaloisType",
    "GeneralPositionReport",
    "MAX_ECKARDT_BITS",
    "PrincipalityReport",
    "SearchOutcome",
    "boundary_from_galois",
    "cubic_galois_type",
    "eckardt_concurrent",
    "example_brauer",
    "find_admissible_a",
    "general_position",
    "principality_check",
]
