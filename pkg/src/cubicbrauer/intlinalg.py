"""Exact integer linear algebra: Smith normal form, kernels, cokernels.

Everything is computed over Z with Python's arbitrary-precision integers;
no floating point enters this module.  Matrices are tiny (the largest
routine inputs are a few dozen rows), so the classical elimination with
minimal-absolute-value pivoting is entirely adequate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .arith import factorint


class IntMatrix:
    """Immutable dense integer matrix, stored as a tuple of row tuples."""

    __slots__ = ("data",)

    def __init__(self, data: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ValueError("ragged rows")
        object.__setattr__(self, "data", rows)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("IntMatrix is immutable")

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        cols = [tuple(c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("need explicit row count for an empty column list")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise ValueError("column length mismatch")
        return cls([[c[i] for c in cols] for i in range(rows)])

    @classmethod
    def empty(cls, rows: int) -> IntMatrix:
        """A rows x 0 matrix (no columns)."""
        return cls([[] for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self.data)) if self.data else IntMatrix([])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.data)) if other.data else []
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.data]
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self.data])

    def scaled(self, k: int) -> IntMatrix:
        return IntMatrix([[k * a for a in r] for r in self.data])

    def mod(self, n: int) -> IntMatrix:
        return IntMatrix([[a % n for a in r] for r in self.data])

    @staticmethod
    def hstack(*blocks: "IntMatrix") -> "IntMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("row count mismatch")
        return IntMatrix(
            [sum((list(b.data[i]) for b in blocks), []) for i in range(rows)]
        )

    @staticmethod
    def vstack(*blocks: "IntMatrix") -> "IntMatrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("column count mismatch")
        return IntMatrix([row for b in blocks for row in b.data])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self.is_square() and all(
            self.data[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def det(self) -> int:
        """Fraction-free Bareiss determinant."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and self.det() in (1, -1)

    def inverse_unimodular(self) -> IntMatrix:
        """Exact inverse of a unimodular matrix (via its Smith form)."""
        form = snf(self)
        if not form.S.is_identity():
            raise ValueError("matrix is not unimodular")
        return form.V @ form.U

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]})"


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V = S with U, V unimodular and S the Smith normal form of A."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(
            self.S.data[i][i] for i in range(min(self.S.rows, self.S.cols))
        )

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)

    def verify(self, a: IntMatrix) -> bool:
        return (
            self.U @ a @ self.V == self.S
            and self.U.is_unimodular()
            and self.V.is_unimodular()
        )


def snf(a: IntMatrix) -> SmithForm:
    """Smith normal form by elimination with minimal-|entry| pivoting.

    The returned diagonal is non-negative and forms a divisibility chain
    d1 | d2 | ... ; U and V collect the row and column operations.
    """
    m, n = a.rows, a.cols
    s = [list(r) for r in a.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        # minimal-absolute-value pivot in the trailing block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot != (t, t):
            if pivot[0] != t:
                swap_rows(t, pivot[0])
            if pivot[1] != t:
                swap_cols(t, pivot[1])
        while True:
            # clear the pivot column
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
            stray = next((i for i in range(t + 1, m) if s[i][t]), None)
            if stray is not None:
                swap_rows(t, stray)  # strictly smaller pivot
                continue
            # clear the pivot row
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
            stray = next((j for j in range(t + 1, n) if s[t][j]), None)
            if stray is not None:
                swap_cols(t, stray)
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                (
                    i
                    for i in range(t + 1, m)
                    if any(s[i][j] % s[t][t] for j in range(t + 1, n))
                ),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]

    return SmithForm(IntMatrix(u), IntMatrix(s), IntMatrix(v))


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel of A, as matrix columns.

    The basis spans a primitive (saturated) sublattice: it consists of
    columns of the unimodular V from the Smith form, so the quotient of
    Z^cols by the kernel is torsion-free.
    """
    if a.rows == 0:
        return IntMatrix.identity(a.cols)
    if a.cols == 0:
        return IntMatrix([[] for _ in range(0)])
    form = snf(a)
    r = form.rank()
    cols = [form.V.column(j) for j in range(r, a.cols)]
    return IntMatrix.from_columns(cols, rows=a.cols)


def mod_kernel(a: IntMatrix, n: int) -> list[tuple[int, ...]]:
    """Generators of { x mod n : A x = 0 (mod n) } in (Z/n)^cols.

    Computed exactly as the integer kernel of the augmented matrix
    [A | -n*I] projected to the first block of coordinates.
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if a.cols == 0:
        return []
    if a.rows == 0:
        return [
            tuple(1 if i == j else 0 for i in range(a.cols)) for j in range(a.cols)
        ]
    aug = IntMatrix.hstack(a, IntMatrix.identity(a.rows).scaled(-n))
    basis = kernel_basis(aug)
    out: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for j in range(basis.cols):
        vec = tuple(x % n for x in basis.column(j)[: a.cols])
        if any(vec) and vec not in seen:
            seen.add(vec)
            out.append(vec)
    return out


@dataclass(frozen=True)
class FinAbGroup:
    """Isomorphism type of a finitely generated abelian group.

    ``invariant_factors`` is the canonical divisibility chain (no unit
    factors); equality of values is isomorphism of groups.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        fac = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fac)
        if any(d <= 1 for d in fac):
            raise ValueError("invariant factors must exceed 1")
        if any(fac[i + 1] % fac[i] for i in range(len(fac) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls(0, ())

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> FinAbGroup:
        """Canonicalize an arbitrary direct sum of cyclic groups."""
        primary: dict[int, list[int]] = {}
        for d in orders:
            d = int(d)
            if d <= 0:
                raise ValueError("cyclic orders must be positive")
            if d == 1:
                continue
            for p, e in factorint(d).items():
                primary.setdefault(p, []).append(e)
        depth = max((len(v) for v in primary.values()), default=0)
        factors = []
        for k in range(depth):
            f = 1
            for p, exps in primary.items():
                exps_sorted = sorted(exps, reverse=True)
                if k < len(exps_sorted):
                    f *= p ** exps_sorted[k]
            factors.append(f)
        factors.reverse()  # ascending divisibility chain
        return cls(free_rank, tuple(factors))

    def direct_sum(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup.from_orders(
            list(self.invariant_factors) + list(other.invariant_factors),
            self.free_rank + other.free_rank,
        )

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise ValueError("infinite group")
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def exponent(self) -> int:
        if not self.is_finite():
            raise ValueError("infinite group")
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, obj: dict) -> FinAbGroup:
        return cls(int(obj["free_rank"]), tuple(int(x) for x in obj["factors"]))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "0"


def cokernel_structure(a: IntMatrix) -> FinAbGroup:
    """Isomorphism type of Z^rows / (column span of A)."""
    if a.cols == 0:
        return FinAbGroup(a.rows, ())
    diag = snf(a).diagonal()
    r = sum(1 for d in diag if d != 0)
    return FinAbGroup.from_orders([d for d in diag if d > 1], free_rank=a.rows - r)


def solve_columns(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Solve A @ X = B over Z for A of full column rank; None if unsolvable."""
    form = snf(a)
    diag = form.diagonal()
    if form.rank() != a.cols:
        raise ValueError("coefficient matrix must have full column rank")
    ub = form.U @ b
    z_rows = []
    for i in range(a.cols):
        d = diag[i]
        row = []
        for j in range(b.cols):
            q, r = divmod(ub.data[i][j], d)
            if r:
                return None
            row.append(q)
        z_rows.append(row)
    for i in range(a.cols, a.rows):
        if any(ub.data[i][j] for j in range(b.cols)):
            return None
    return form.V @ IntMatrix(z_rows)


def subgroup_structure_mod(generators: Sequence[Sequence[int]], n: int, rank: int) -> FinAbGroup:
    """Structure of the subgroup of (Z/n)^rank generated by the given vectors.

    Uses the Smith form of [G | n*I]: if its diagonal is d1 | ... | dr then
    the subgroup is  ⊕ Z/(n/di).
    """
    if rank == 0:
        return FinAbGroup.trivial()
    blocks = [IntMatrix.identity(rank).scaled(n)]
    if generators:
        blocks.insert(0, IntMatrix.from_columns([tuple(g) for g in generators], rows=rank))
    diag = snf(IntMatrix.hstack(*blocks)).diagonal()
    if len(diag) != rank or any(d == 0 or n % d for d in diag):
        raise AssertionError("lattice containing n*Z^rank must have full rank dividing n")
    return FinAbGroup.from_orders([n // d for d in diag])


__all__ = [
    "FinAbGroup",
    "IntMatrix",
    "SmithForm",
    "cokernel_structure",
    "kernel_basis",
    "mod_kernel",
    "snf",
    "solve_columns",
    "subgroup_structure_mod",
]
