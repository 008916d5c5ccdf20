"""Brauer-group classifiers for singular hyperplane sections.

Two computations live here.

* The geometric Brauer group of the complement, as a Galois-module
  descriptor determined by the boundary type: trivial, the full Tate twist
  Q/Z(-1), or the d-twisted system M_d/nM_d(-1) for a quadratic class d.
  Over Q its Galois invariants are assembled from p-primary parts; only
  p = 2 and p = 3 can contribute, and the prime-power levels stabilize.

* The algebraic tables: the possible pairs (Br_1(U)/Br(k), Br(X)/Br(k))
  for a boundary of three lines, obtained by sweeping all subgroups of the
  tritangent-trio stabilizer in W(E6) up to conjugacy and computing H^1 on
  Pic(Ubar) and Pic(Xbar).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache
from math import gcd
from typing import Literal

from .arith import legendre, prime_power, squarefree_part
from .cohomology import FiniteGModule, invariants_finite
from .cubiclattice import pic_module, quotient_by_trio, reference_trio, weyl_group
from .errors import BadModulus, StabilizationFailed
from .intlinalg import (
    FinAbGroup,
    IntMatrix,
    mod_kernel,
    snf,
    subgroup_structure_mod,
)
from .perms import orbit_count, setwise_stabilizer, subgroup_classes


# -- boundary descriptors --------------------------------------------------

LineConicKind = Literal["tangent", "two_rational", "quadratic"]
IrreducibleKind = Literal["cuspidal", "nodal_split", "nodal_nonsplit"]
ThreeLinesGalois = Literal["trivial", "c2", "c3", "s3"]

_NEEDS_D = {"quadratic", "nodal_nonsplit", "c2", "s3"}


@dataclass(frozen=True)
class BoundaryDescriptor:
    """Case data for a singular hyperplane section.

    kind is one of "line_conic", "irreducible", "three_lines"; sub names
    the case within the kind; d is the square class of the splitting
    quadratic field where one is involved (normalized to its squarefree
    representative); eckardt only applies to three concurrent lines.
    """

    kind: Literal["line_conic", "irreducible", "three_lines"]
    sub: str
    d: int | None = None
    eckardt: bool = False

    def __post_init__(self):
        allowed = {
            "line_conic": {"tangent", "two_rational", "quadratic"},
            "irreducible": {"cuspidal", "nodal_split", "nodal_nonsplit"},
            "three_lines": {"trivial", "c2", "c3", "s3"},
        }
        if self.kind not in allowed:
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.sub not in allowed[self.kind]:
            raise ValueError(f"unknown case {self.sub!r} for {self.kind}")
        if self.eckardt and self.kind != "three_lines":
            raise ValueError("eckardt applies only to three lines")
        if self.sub in _NEEDS_D:
            if self.d is None:
                raise ValueError(f"case {self.sub!r} requires a square class d")
            d = squarefree_part(self.d)
            if d in (0, 1):
                raise ValueError("d must define a nontrivial quadratic extension")
            object.__setattr__(self, "d", d)
        elif self.d is not None:
            raise ValueError(f"case {self.sub!r} takes no square class")

    # JSON wire format, consumed by the CLI
    def to_json(self) -> dict:
        if self.kind == "line_conic":
            inter = {"quadratic": self.d} if self.sub == "quadratic" else self.sub
            return {"type": "line_conic", "intersection": inter}
        if self.kind == "irreducible":
            kind = {"nodal_nonsplit": self.d} if self.sub == "nodal_nonsplit" else self.sub
            return {"type": "irreducible", "kind": kind}
        galois = {self.sub: self.d} if self.sub in ("c2", "s3") else self.sub
        return {"type": "three_lines", "galois": galois, "eckardt": self.eckardt}

    @classmethod
    def from_json(cls, obj: dict | str) -> BoundaryDescriptor:
        if isinstance(obj, str):
            obj = json.loads(obj)
        kind = obj.get("type")
        if kind == "line_conic":
            inter = obj["intersection"]
            if isinstance(inter, dict):
                return cls("line_conic", "quadratic", d=int(inter["quadratic"]))
            return cls("line_conic", inter)
        if kind == "irreducible":
            sub = obj["kind"]
            if isinstance(sub, dict):
                return cls("irreducible", "nodal_nonsplit", d=int(sub["nodal_nonsplit"]))
            return cls("irreducible", sub)
        if kind == "three_lines":
            galois = obj["galois"]
            eckardt = bool(obj.get("eckardt", False))
            if isinstance(galois, dict):
                ((sub, d),) = galois.items()
                return cls("three_lines", sub, d=int(d), eckardt=eckardt)
            return cls("three_lines", galois, eckardt=eckardt)
        raise ValueError(f"unknown boundary type {kind!r}")


@dataclass(frozen=True)
class GeometricBrauer:
    """Br(Ubar) as a Galois-module descriptor."""

    kind: Literal["zero", "full_twist", "d_twist"]
    d: int | None = None

    def to_json(self):
        return {"d_twist": self.d} if self.kind == "d_twist" else self.kind


def geometric_brauer(boundary: BoundaryDescriptor) -> GeometricBrauer:
    """Classify Br(Ubar) from the boundary type."""
    if boundary.kind == "three_lines" and boundary.eckardt:
        return GeometricBrauer("zero")
    sub = boundary.sub
    if sub in ("tangent", "cuspidal"):
        return GeometricBrauer("zero")
    if sub in ("two_rational", "nodal_split", "trivial", "c3"):
        return GeometricBrauer("full_twist")
    return GeometricBrauer("d_twist", boundary.d)


# -- twisted invariants over Q ---------------------------------------------


def sqrt_in_cyclotomic(d: int, n: int) -> bool:
    """Whether sqrt(d) lies in Q(zeta_n) for a prime power n.

    Quadratic subfields of prime-power cyclotomic fields: Q(i) inside
    Q(zeta_{2^i}) for i >= 2, and Q(sqrt(+-2)) for i >= 3; for odd p the
    unique one is Q(sqrt(p*)) with p* = (-1)^((p-1)/2) p.
    """
    d = squarefree_part(d)
    pp = prime_power(n)
    if pp is None:
        raise BadModulus(f"{n} is not a prime power")
    p, _ = pp
    if p == 2:
        return (d == -1 and n % 4 == 0) or (d in (2, -2) and n % 8 == 0)
    p_star = p if p % 4 == 1 else -p
    return d == p_star


def _fixes_sqrt_d(d: int, t: int, n: int) -> bool:
    """Whether the cyclotomic automorphism zeta -> zeta^t fixes sqrt(d).

    Only valid when sqrt(d) lies in Q(zeta_n); decided by congruence
    conditions on t (closed forms for the quadratic subfields).
    """
    p, _ = prime_power(n)
    if p == 2:
        if d == -1:
            return t % 4 == 1
        if d == 2:
            return t % 8 in (1, 7)
        if d == -2:
            return t % 8 in (1, 3)
        raise AssertionError("unreachable: sqrt(d) not in this field")
    return legendre(t, p) == 1


def _twist_module(d: int, n: int) -> FiniteGModule:
    """The rank-1 module Z/n with the Gal(Q(zeta_n, sqrt d)/Q)-action.

    g acts by m -> eps(g) * t^{-1} * m, where g^{-1}(zeta) = zeta^t and
    eps(g) = -1 exactly when g conjugates sqrt(d); every group element is
    listed as a generator.
    """
    pp = prime_power(n)
    if pp is None:
        raise BadModulus(f"{n} is not a prime power")
    d = squarefree_part(d)
    if d in (0, 1):
        raise ValueError("d must define a nontrivial quadratic extension")
    units = [t for t in range(1, n) if _coprime(t, n)]
    actions: list[int] = []
    if sqrt_in_cyclotomic(d, n):
        for t in units:
            eps = 1 if _fixes_sqrt_d(d, t, n) else -1
            actions.append(eps * pow(t, -1, n) % n)
    else:
        for t in units:
            for eps in (1, -1):
                actions.append(eps * pow(t, -1, n) % n)
    return FiniteGModule(
        modulus=n, rank=1, matrices=tuple(IntMatrix([[a]]) for a in actions)
    )


def twist_invariants(d: int, n: int) -> FinAbGroup:
    """Galois invariants of M_d/nM_d(-1) over Q, for a prime power n."""
    return invariants_finite(_twist_module(d, n))


def _coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


def qmodz_invariants(n: int) -> FinAbGroup:
    """Invariants of Z/n(-1) over Q: elements fixed by every t in (Z/n)*."""
    if n < 2:
        raise ValueError("n must be at least 2")
    fixed = [
        m
        for m in range(n)
        if all((t * m - m) % n == 0 for t in range(1, n) if _coprime(t, n))
    ]
    count = len(fixed)  # a subgroup of Z/n, hence cyclic
    return FinAbGroup.from_orders([count])


def _stabilized(values: tuple[FinAbGroup, FinAbGroup], label: str) -> FinAbGroup:
    lo, hi = values
    if lo != hi:
        raise StabilizationFailed(f"{label}: {lo} at n vs {hi} at n*p")
    return lo


def transcendental_bound(boundary: BoundaryDescriptor) -> FinAbGroup:
    """(Br Ubar)^{Gamma_Q}: the upper bound for Br(U)/Br_1(U) over Q.

    Assembled from the stabilized p-primary invariants at p = 2 and 3;
    primes >= 5 never contribute.
    """
    geometric = geometric_brauer(boundary)
    if geometric.kind == "zero":
        return FinAbGroup.trivial()
    if geometric.kind == "full_twist":
        part2 = _stabilized((qmodz_invariants(4), qmodz_invariants(8)), "Q/Z(-1) at 2")
        part3 = _stabilized((qmodz_invariants(3), qmodz_invariants(9)), "Q/Z(-1) at 3")
        return part2.direct_sum(part3)
    d = geometric.d
    part2 = _stabilized((twist_invariants(d, 4), twist_invariants(d, 8)), f"M_{d} at 2")
    part3 = _stabilized((twist_invariants(d, 3), twist_invariants(d, 9)), f"M_{d} at 3")
    return part2.direct_sum(part3)


def residue_kernel_check(n: int) -> FinAbGroup:
    """Kernel of (a,b,c) -> (c-b, a-c, b-a) on (Z/n)^3.

    Verifies that the kernel is cyclic of order n generated by (1,1,1)
    and returns its isomorphism type.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    boundary_map = IntMatrix([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])
    gens = mod_kernel(boundary_map, n)
    group = subgroup_structure_mod(gens, n, 3)
    if group != FinAbGroup.from_orders([n]):
        raise AssertionError(f"residue kernel at n={n} is {group}, expected Z/{n}")
    # membership of (1,1,1) in the generated subgroup
    blocks = [IntMatrix.identity(3).scaled(n)]
    if gens:
        blocks.insert(0, IntMatrix.from_columns(gens, rows=3))
    target = IntMatrix.from_columns([(1, 1, 1)], rows=3)
    if solve_columns_relaxed(IntMatrix.hstack(*blocks), target) is None:
        raise AssertionError("(1,1,1) does not generate the residue kernel")
    return group


def solve_columns_relaxed(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Integral solve A @ X = B allowing rank-deficient A; None if unsolvable."""
    form = snf(a)
    diag = form.diagonal()
    rank = form.rank()
    ub = form.U @ b
    rows = []
    for i in range(a.cols):
        row = []
        for j in range(b.cols):
            if i < rank:
                q, r = divmod(ub.data[i][j], diag[i])
                if r:
                    return None
                row.append(q)
            else:
                row.append(0)
        rows.append(row)
    for i in range(rank, a.rows):
        if any(ub.data[i][j] for j in range(b.cols)):
            return None
    return form.V @ IntMatrix(rows)


# -- the algebraic tables ---------------------------------------------------


@dataclass(frozen=True)
class TablePair:
    """A possibility for (Br_1(U)/Br(k), Br(X)/Br(k))."""

    br1: FinAbGroup
    brx: FinAbGroup

    def sort_key(self):
        return (
            self.br1.order(),
            self.br1.invariant_factors,
            self.brx.order(),
            self.brx.invariant_factors,
        )

    def to_json(self):
        return {"br1": self.br1.to_json(), "brx": self.brx.to_json()}


@dataclass(frozen=True)
class SweepEntry:
    subgroup_order: int
    orbits: int
    pair: TablePair


@cache
def _table_sweep() -> tuple[SweepEntry, ...]:
    """H^1 over every subgroup class of the trio stabilizer in W(E6)."""
    from .cohomology import h1_lattice

    trio = reference_trio()
    stabilizer = setwise_stabilizer(weyl_group(), set(trio.indices))
    entries = []
    for cls in subgroup_classes(stabilizer):
        sub = cls.group
        orbits = orbit_count(sub, set(trio.indices))
        brx = h1_lattice(pic_module(sub))
        br1 = h1_lattice(quotient_by_trio(trio, sub).module)
        entries.append(
            SweepEntry(subgroup_order=cls.order, orbits=orbits, pair=TablePair(br1, brx))
        )
    return tuple(entries)


def algebraic_tables(orbit_case: int) -> tuple[TablePair, ...]:
    """Distinct (Br_1, Br X) pairs for boundaries with the given orbit count.

    orbit_case 1: the three lines form a single Galois orbit; 2: a line and
    a conjugate pair; 3: three rational lines.
    """
    if orbit_case not in (1, 2, 3):
        raise ValueError("orbit case must be 1, 2 or 3")
    pairs = {e.pair for e in _table_sweep() if e.orbits == orbit_case}
    return tuple(sorted(pairs, key=TablePair.sort_key))


def table_sweep_entries() -> tuple[SweepEntry, ...]:
    return _table_sweep()


__all__ = [
    "BoundaryDescriptor",
    "GeometricBrauer",
    "SweepEntry",
    "TablePair",
    "algebraic_tables",
    "geometric_brauer",
    "qmodz_invariants",
    "residue_kernel_check",
    "sqrt_in_cyclotomic",
    "table_sweep_entries",
    "transcendental_bound",
    "twist_invariants",
]
