"""The Picard lattice of a smooth cubic surface.

Coordinates are taken in the basis (l, e1, ..., e6) with intersection form
diag(1, -1, ..., -1), so divisor-class expressions like l - e1 - e2 are
literal coefficient vectors.  The hyperplane (anticanonical) class is
H = 3l - e1 - ... - e6; the 27 lines are the classes D with D.D = -1 and
D.H = 1; a tritangent trio is three lines with pairwise product 1 summing
to H, and there are 45 of them.  The symmetry group of all this data is
the Weyl group W(E6) of order 51840, realized here as permutations of the
27 lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

from .cohomology import LatticeGModule
from .errors import InconsistentPermutation, NotStabilized, TorsionFound
from .intlinalg import IntMatrix, snf
from .perms import Perm, PermGroup

RANK = 7
HYPERPLANE: tuple[int, ...] = (3, -1, -1, -1, -1, -1, -1)

DivClass = tuple[int, ...]


def intersection(u: Sequence[int], v: Sequence[int]) -> int:
    """Intersection pairing in the basis (l, e1..e6): diag(1, -1^6)."""
    return u[0] * v[0] - sum(a * b for a, b in zip(u[1:], v[1:]))


def _unit(i: int) -> DivClass:
    return tuple(1 if j == i else 0 for j in range(RANK))


def _combine(*terms: tuple[int, Sequence[int]]) -> DivClass:
    out = [0] * RANK
    for coeff, vec in terms:
        for i, x in enumerate(vec):
            out[i] += coeff * x
    return tuple(out)


@cache
def lines27() -> tuple[DivClass, ...]:
    """The 27 line classes, in the fixed order e_i, l-e_i-e_j, 2l-sum+e_j."""
    ell = _unit(0)
    all_exceptional = _combine(*((1, _unit(i)) for i in range(1, 7)))
    exceptional = [_unit(i) for i in range(1, 7)]
    chords = [
        _combine((1, ell), (-1, _unit(i)), (-1, _unit(j)))
        for i, j in combinations(range(1, 7), 2)
    ]
    conics = [
        _combine((2, ell), (-1, all_exceptional), (1, _unit(j))) for j in range(1, 7)
    ]
    lines = tuple(exceptional + chords + conics)
    assert len(lines) == 27
    assert all(intersection(d, d) == -1 and intersection(d, HYPERPLANE) == 1 for d in lines)
    return lines


@cache
def line_index() -> dict[DivClass, int]:
    return {d: i for i, d in enumerate(lines27())}


class TritangentTrio(NamedTuple):
    """Three line classes with pairwise product 1, summing to H."""

    classes: tuple[DivClass, DivClass, DivClass]

    @property
    def indices(self) -> tuple[int, int, int]:
        idx = line_index()
        return tuple(idx[c] for c in self.classes)  # type: ignore[return-value]

    def boundary_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.classes, rows=RANK)


@cache
def tritangent_trios() -> tuple[TritangentTrio, ...]:
    """All 45 tritangent trios, ordered by line indices."""
    lines = lines27()
    out = []
    for i, j, k in combinations(range(27), 3):
        a, b, c = lines[i], lines[j], lines[k]
        if (
            intersection(a, b) == 1
            and intersection(a, c) == 1
            and intersection(b, c) == 1
        ):
            total = tuple(x + y + z for x, y, z in zip(a, b, c))
            assert total == HYPERPLANE
            out.append(TritangentTrio((a, b, c)))
    assert len(out) == 45
    return tuple(out)


@cache
def reference_trio() -> TritangentTrio:
    """The trio {l-e1-e2, l-e3-e4, l-e5-e6} used for the table sweep."""
    idx = line_index()
    classes = (
        (1, -1, -1, 0, 0, 0, 0),
        (1, 0, 0, -1, -1, 0, 0),
        (1, 0, 0, 0, 0, -1, -1),
    )
    assert all(c in idx for c in classes)
    return TritangentTrio(classes)


def _cremona_matrix(i: int, j: int, k: int) -> IntMatrix:
    """Quadratic transformation based at {i, j, k}: l -> 2l - ei - ej - ek."""
    cols = {0: [2, 0, 0, 0, 0, 0, 0]}
    for a in (i, j, k):
        cols[0][a] = -1
    for a in (i, j, k):
        col = [1, 0, 0, 0, 0, 0, 0]
        for b in (i, j, k):
            if b != a:
                col[b] = -1
        cols[a] = col
    for a in range(1, 7):
        if a not in (i, j, k):
            cols[a] = [1 if b == a else 0 for b in range(RANK)]
    return IntMatrix.from_columns([cols[a] for a in range(RANK)], rows=RANK)


def _swap_matrix(i: int, j: int) -> IntMatrix:
    cols = []
    for a in range(RANK):
        b = j if a == i else i if a == j else a
        cols.append(_unit(b))
    return IntMatrix.from_columns(cols, rows=RANK)


@cache
def weyl_generator_matrices() -> tuple[IntMatrix, ...]:
    """Adjacent transpositions of e1..e6 plus the Cremona involution at {1,2,3}."""
    gens = [_swap_matrix(i, i + 1) for i in range(1, 6)]
    gens.append(_cremona_matrix(1, 2, 3))
    for m in gens:
        assert m.is_unimodular()
        assert m.apply(HYPERPLANE) == HYPERPLANE
    return tuple(gens)


def matrix_to_line_permutation(m: IntMatrix) -> Perm:
    """Permutation of the 27 lines induced by a lattice automorphism."""
    idx = line_index()
    images = []
    for d in lines27():
        image = m.apply(d)
        if image not in idx:
            raise InconsistentPermutation(f"{image} is not a line class")
        images.append(idx[image])
    if sorted(images) != list(range(27)):
        raise InconsistentPermutation("line images do not form a permutation")
    return tuple(images)


@cache
def weyl_group() -> PermGroup:
    """W(E6) as permutations of the 27 lines; point i is lines27()[i]."""
    return PermGroup(27, [matrix_to_line_permutation(m) for m in weyl_generator_matrices()])


@lru_cache(maxsize=None)
def pic_action(p: Perm) -> IntMatrix:
    """7x7 matrix acting on Pic that induces the given line permutation.

    Reconstructed from the images of e1..e6 and l = (l-e1-e2) + e1 + e2,
    then verified against all 27 line images.
    """
    lines = lines27()
    idx = line_index()
    cols: list[DivClass] = [None] * RANK  # type: ignore[list-item]
    for i in range(1, 7):
        cols[i] = lines[p[idx[_unit(i)]]]
    chord12 = tuple(a - b - c for a, b, c in zip(_unit(0), _unit(1), _unit(2)))
    ell_image = tuple(
        x + y + z
        for x, y, z in zip(lines[p[idx[chord12]]], cols[1], cols[2])
    )
    cols[0] = ell_image
    m = IntMatrix.from_columns(cols, rows=RANK)
    for i, d in enumerate(lines):
        if m.apply(d) != lines[p[i]]:
            raise InconsistentPermutation(
                "permutation does not extend to a lattice automorphism"
            )
    if not m.is_unimodular():
        raise InconsistentPermutation("reconstructed action is not unimodular")
    return m


def pic_module(group: PermGroup) -> LatticeGModule:
    """Pic(Xbar) = Z^7 as a module over a subgroup of the Weyl group."""
    return LatticeGModule(
        rank=RANK,
        group=group,
        matrices=tuple(pic_action(g) for g in group.generators),
    )


@dataclass(frozen=True)
class QuotientLattice:
    """Pic(Ubar) = Pic(Xbar) / <boundary trio> with the induced action."""

    trio: TritangentTrio
    projection: IntMatrix  # 4x7, Z^7 ->> Z^4
    section: IntMatrix  # 7x4, right inverse of the projection
    module: LatticeGModule

    def project_class(self, d: Sequence[int]) -> tuple[int, ...]:
        return self.projection.apply(d)


def quotient_by_trio(trio: TritangentTrio, group: PermGroup) -> QuotientLattice:
    """Rank-4 quotient of Pic by a trio, with the induced subgroup action.

    Raises TorsionFound if the Smith form of the boundary matrix has a
    non-unit invariant factor (it never does for a tritangent trio).
    """
    idx = line_index()
    a, b, c = trio.classes
    if not (
        a in idx
        and b in idx
        and c in idx
        and intersection(a, b) == intersection(a, c) == intersection(b, c) == 1
    ):
        raise ValueError("not a tritangent trio")
    boundary = trio.boundary_matrix()
    form = snf(boundary)
    if form.diagonal() != (1, 1, 1):
        raise TorsionFound(f"boundary quotient has torsion: diagonal {form.diagonal()}")
    u_inv = form.U.inverse_unimodular()
    projection = IntMatrix(form.U.data[3:])  # last 4 rows of U
    section = IntMatrix.from_columns([u_inv.column(j) for j in range(3, RANK)], rows=RANK)
    trio_set = set(trio.classes)
    induced = []
    for g in group.generators:
        m = pic_action(g)
        if {m.apply(c) for c in trio.classes} != trio_set:
            raise NotStabilized("group does not stabilize the trio")
        induced.append(projection @ m @ section)
    module = LatticeGModule(rank=4, group=group, matrices=tuple(induced))
    return QuotientLattice(trio=trio, projection=projection, section=section, module=module)


class TorsionReport(NamedTuple):
    divisor_class: DivClass
    snf_diagonal: tuple[int, ...]
    torsion_free: bool
    is_line: bool


def torsion_free_line_conic(include_ell_case: bool = False) -> list[TorsionReport]:
    """Torsion check for boundaries 'line + residual conic'.

    For each line class [L] (and optionally the non-line class l itself),
    the quotient of Z^7 by span{[L], [C]} with [C] = H - [L] is torsion-free
    iff the 7x2 boundary matrix has all unit invariant factors.
    """
    candidates: list[tuple[DivClass, bool]] = [(d, True) for d in lines27()]
    if include_ell_case:
        candidates.append((_unit(0), False))
    out = []
    for d, is_line in candidates:
        conic = tuple(h - x for h, x in zip(HYPERPLANE, d))
        diag = snf(IntMatrix.from_columns([d, conic], rows=RANK)).diagonal()
        out.append(
            TorsionReport(
                divisor_class=d,
                snf_diagonal=diag,
                torsion_free=all(x == 1 for x in diag),
                is_line=is_line,
            )
        )
    return out


__all__ = [
    "DivClass",
    "HYPERPLANE",
    "QuotientLattice",
    "RANK",
    "TorsionReport",
    "TritangentTrio",
    "intersection",
    "line_index",
    "lines27",
    "matrix_to_line_permutation",
    "pic_action",
    "pic_module",
    "quotient_by_trio",
    "reference_trio",
    "torsion_free_line_conic",
    "tritangent_trios",
    "weyl_generator_matrices",
    "weyl_group",
]
