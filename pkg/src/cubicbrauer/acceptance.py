"""The acceptance suite: one check per acceptance criterion.

Each check returns a CheckResult; the pytest acceptance module asserts
them individually and the CLI --seed-check flag prints the matrix.  The
expected values frozen here are the published table entries; where the
computed truth provably differs (the case-2 table), the check fails
honestly and the discrepancy is documented in the repository notes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .brauer import (
    BoundaryDescriptor,
    TablePair,
    algebraic_tables,
    geometric_brauer,
    residue_kernel_check,
    transcendental_bound,
    twist_invariants,
)
from .cohomology import (
    LatticeGModule,
    h1_cyclic_oracle,
    h1_lattice,
    invariants_finite_enumerated,
)
from .cubiclattice import (
    HYPERPLANE,
    intersection,
    lines27,
    pic_module,
    quotient_by_trio,
    reference_trio,
    torsion_free_line_conic,
    tritangent_trios,
    weyl_group,
)
from .errors import CubicBrauerError
from .intlinalg import FinAbGroup, IntMatrix, snf
from .perms import PermGroup, perm_order, setwise_stabilizer
from .qexamples import example_brauer, find_admissible_a
from .ratpoly import RationalPoly


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _group(*factors: int) -> FinAbGroup:
    return FinAbGroup.from_orders(factors)


def _pair(br1: tuple[int, ...], brx: tuple[int, ...]) -> TablePair:
    return TablePair(_group(*br1), _group(*brx))


# The published tables of possibilities for (Br_1(U)/Br(k), Br(X)/Br(k)).
EXPECTED_TABLES: dict[int, frozenset[TablePair]] = {
    1: frozenset(
        [
            _pair((), ()),
            _pair((2,), ()),
            _pair((2,), (2,)),
            _pair((2, 2), ()),
            _pair((2, 2), (2,)),
            _pair((2, 2), (2, 2)),
            _pair((4,), (2,)),
            _pair((3,), (3,)),
            _pair((3, 3), (3, 3)),
        ]
    ),
    2: frozenset(
        [
            _pair((2,), ()),
            _pair((2, 2), ()),
            _pair((2, 2), (2,)),
            _pair((2, 2, 2), (2,)),
            _pair((2, 2, 2), (2, 2)),
            _pair((4,), (2,)),
            _pair((2, 4), (2, 2)),
        ]
    ),
    3: frozenset(
        [
            _pair((), ()),
            _pair((2,), ()),
            _pair((2,), (2,)),
            _pair((2, 2), ()),
            _pair((2, 2), (2,)),
            _pair((2, 2, 2), ()),
            _pair((2, 2, 2), (2,)),
            _pair((2, 2, 2, 2), (2, 2)),
            _pair((4,), (2,)),
            _pair((2, 4), (2,)),
        ]
    ),
}

# The (d, n) grid of criterion 4.
TWIST_GRID_D = (-1, -3, 2, -2, 5, -5)
TWIST_GRID_N = (2, 4, 8, 16, 3, 9, 27, 5, 25, 7, 49)


def expected_twist(d: int, n: int) -> FinAbGroup:
    """The Galois-invariant table over Q for prime powers n.

    Z/4 exactly for d = -1 at n = 2^i (i >= 2); Z/2 for every other
    2-power; Z/3 exactly for d = -3 at 3-powers; 0 at all other odd
    prime powers.  (Every cell is cross-checked against exhaustive
    enumeration in the acceptance run.)
    """
    if n % 2 == 0:
        if d == -1 and n % 4 == 0:
            return _group(4)
        return _group(2)
    if n % 3 == 0:
        return _group(3) if d == -3 else _group()
    return _group()


def check_lattice_combinatorics() -> CheckResult:
    t0 = time.time()
    problems = []
    lines = lines27()
    if len(lines) != 27:
        problems.append(f"{len(lines)} lines")
    if not all(
        intersection(d, d) == -1 and intersection(d, HYPERPLANE) == 1 for d in lines
    ):
        problems.append("line invariants fail")
    trios = tritangent_trios()
    if len(trios) != 45:
        problems.append(f"{len(trios)} trios")
    w = weyl_group()
    if w.order() != 51840:
        problems.append(f"|W| = {w.order()}")
    stab = setwise_stabilizer(w, set(reference_trio().indices))
    if stab.order() != 1152:
        problems.append(f"|stab| = {stab.order()}")
    detail = "27 lines, 45 trios, |W| = 51840, trio stabilizer 1152"
    return CheckResult(
        "1 lattice combinatorics",
        not problems,
        "; ".join(problems) or detail,
        time.time() - t0,
    )


def check_algebraic_tables() -> CheckResult:
    t0 = time.time()
    notes = []
    ok = True
    for case in (1, 2, 3):
        computed = set(algebraic_tables(case))
        expected = EXPECTED_TABLES[case]
        if computed == expected:
            notes.append(f"case {case}: {len(computed)} pairs match")
        else:
            ok = False
            extra = sorted(computed - expected, key=TablePair.sort_key)
            missing = sorted(expected - computed, key=TablePair.sort_key)
            notes.append(
                f"case {case}: computed {len(computed)} vs published {len(expected)}"
                + (f"; extra {[f'({p.br1}, {p.brx})' for p in extra]}" if extra else "")
                + (f"; missing {[f'({p.br1}, {p.brx})' for p in missing]}" if missing else "")
            )
    return CheckResult("2 algebraic tables", ok, "; ".join(notes), time.time() - t0)


def check_torsion_freeness() -> CheckResult:
    t0 = time.time()
    reports = torsion_free_line_conic()
    bad = [r for r in reports if not r.torsion_free]
    ok = len(reports) == 27 and not bad
    for trio in tritangent_trios():
        if snf(trio.boundary_matrix()).diagonal() != (1, 1, 1):
            ok = False
            bad.append(trio)
    detail = "27 line+conic and 45 trio quotients all torsion-free"
    return CheckResult(
        "3 torsion-freeness",
        ok,
        detail if ok else f"torsion found: {bad[:3]}",
        time.time() - t0,
    )


def check_twist_table() -> CheckResult:
    t0 = time.time()
    failures = []
    for d in TWIST_GRID_D:
        for n in TWIST_GRID_N:
            got = twist_invariants(d, n)
            want = expected_twist(d, n)
            if got != want:
                failures.append(f"(d={d}, n={n}): {got} != {want}")
    detail = f"all {len(TWIST_GRID_D) * len(TWIST_GRID_N)} grid cells match"
    return CheckResult(
        "4 twisted invariants",
        not failures,
        detail if not failures else "; ".join(failures[:5]),
        time.time() - t0,
    )


def check_examples_end_to_end() -> CheckResult:
    t0 = time.time()
    cases = [
        ("-2,-2,1,1", _group(2)),
        ("1,1,1,1", _group(4)),
        ("3,3,1,1", _group(2, 3)),
    ]
    notes = []
    ok = True
    for text, want in cases:
        poly = RationalPoly.parse(text)
        try:
            outcome = find_admissible_a(poly, 20)
            got = example_brauer(poly, outcome.a)
        except CubicBrauerError as exc:
            ok = False
            notes.append(f"{text}: {exc}")
            continue
        if got != want:
            ok = False
            notes.append(f"{text}: {got} != {want}")
        else:
            notes.append(f"{text}: a={outcome.a} -> {got}")
    return CheckResult("5 examples over Q", ok, "; ".join(notes), time.time() - t0)


def _cyclic_subgroup_generators(group: PermGroup) -> list:
    """One generator per distinct cyclic subgroup of the given group."""
    seen: set[frozenset] = set()
    gens = []
    for p in group.elements():
        sub = frozenset(_powers(p))
        if sub not in seen:
            seen.add(sub)
            gens.append(p)
    return gens


def _powers(p) -> list:
    out = [p]
    n = len(p)
    ident = tuple(range(n))
    current = p
    while current != ident:
        current = tuple(p[i] for i in current)
        out.append(current)
    return out


def check_oracle_equivalence() -> CheckResult:
    t0 = time.time()
    trio = reference_trio()
    stab = setwise_stabilizer(weyl_group(), set(trio.indices))
    mismatches = []
    count = 0
    for g in _cyclic_subgroup_generators(stab):
        cyclic = PermGroup(27, [g]) if perm_order(g) > 1 else PermGroup(27, [])
        modules = [pic_module(cyclic), quotient_by_trio(trio, cyclic).module]
        for module in modules:
            count += 1
            a = h1_lattice(module)
            b = h1_cyclic_oracle(module)
            if a != b:
                mismatches.append((g, module.rank, str(a), str(b)))
    detail = f"{count} cyclic-module cases agree"
    return CheckResult(
        "6 cyclic oracle equivalence",
        not mismatches,
        detail if not mismatches else f"{len(mismatches)} mismatches, e.g. {mismatches[0]}",
        time.time() - t0,
    )


def _random_matrix(rng: random.Random) -> IntMatrix:
    rows = rng.randint(1, 6)
    cols = rng.randint(1, 6)
    return IntMatrix(
        [[rng.randint(-50, 50) for _ in range(cols)] for _ in range(rows)]
    )


def _random_unimodular(rng: random.Random, n: int) -> IntMatrix:
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return IntMatrix(m)


def _regular_representation(table_group: list[tuple]) -> LatticeGModule:
    """Z[G] for a group given as a list of permutations closed under product."""
    elements = sorted(table_group)
    index = {p: i for i, p in enumerate(elements)}
    degree = len(elements)
    gens = [p for p in elements if p != tuple(range(len(p)))]
    perms = []
    mats = []
    for g in gens:
        images = [index[tuple(g[i] for i in h)] for h in elements]
        perms.append(tuple(images))
        mats.append(
            IntMatrix(
                [[1 if images[j] == i else 0 for j in range(degree)] for i in range(degree)]
            )
        )
    group = PermGroup(degree, perms)
    return LatticeGModule(rank=degree, group=group, matrices=tuple(mats))


def check_property_suites() -> CheckResult:
    t0 = time.time()
    problems = []
    rng = random.Random(20260809)
    for _ in range(1000):
        a = _random_matrix(rng)
        form = snf(a)
        if form.U @ a @ form.V != form.S:
            problems.append("U A V != S")
            break
        if form.U.det() not in (1, -1) or form.V.det() not in (1, -1):
            problems.append("transform not unimodular")
            break
        diag = form.diagonal()
        nonzero = [d for d in diag if d]
        if any(d < 0 for d in diag) or any(
            nonzero[i + 1] % nonzero[i] for i in range(len(nonzero) - 1)
        ):
            problems.append("diagonal not a chain")
            break
        if list(diag[: len(nonzero)]) != nonzero:
            problems.append("zero diagonal entry before a nonzero one")
            break

    # Shapiro vanishing for regular representations
    groups = {
        "C2": [[(0, 1)], 2],
        "C3": [[(1, 2, 0)], 3],
        "C4": [[(1, 2, 3, 0)], 4],
        "S3": [[(1, 0, 2), (1, 2, 0)], 3],
    }
    for name, (gens, degree) in groups.items():
        elements = set()
        queue = [tuple(range(degree))]
        elements.add(queue[0])
        while queue:
            x = queue.pop()
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in elements:
                    elements.add(y)
                    queue.append(y)
        module = _regular_representation(sorted(elements))
        if h1_lattice(module) != FinAbGroup.trivial():
            problems.append(f"H1({name}, Z[{name}]) != 0")

    for n in range(2, 31):
        if residue_kernel_check(n) != _group(n):
            problems.append(f"residue kernel at {n}")

    # basis-conjugation invariance of H^1
    trio = reference_trio()
    stab = setwise_stabilizer(weyl_group(), set(trio.indices))
    witness = next(g for g in stab.generators if perm_order(g) > 1)
    cyclic = PermGroup(27, [witness])
    module = quotient_by_trio(trio, cyclic).module
    reference_value = h1_lattice(module)
    for _ in range(100):
        t = _random_unimodular(rng, 4)
        t_inv = t.inverse_unimodular()
        conj = LatticeGModule(
            rank=4,
            group=module.group,
            matrices=tuple(t @ m @ t_inv for m in module.matrices),
        )
        if h1_lattice(conj) != reference_value:
            problems.append("conjugation changed H^1")
            break

    detail = "SNF x1000, Shapiro, residue kernels n<=30, 100 conjugations"
    return CheckResult(
        "7 property suites",
        not problems,
        detail if not problems else "; ".join(problems[:4]),
        time.time() - t0,
    )


def _published_bound(boundary: BoundaryDescriptor) -> FinAbGroup:
    """The published bound: 0, Z/2, Z/4 (d ~ -1) or Z/6 (d ~ -3)."""
    geometric = geometric_brauer(boundary)
    if geometric.kind == "zero":
        return _group()
    if geometric.kind == "full_twist":
        return _group(2)
    if geometric.d == -1:
        return _group(4)
    if geometric.d == -3:
        return _group(2, 3)
    return _group(2)


def check_classifier_consistency() -> CheckResult:
    t0 = time.time()
    catalog = [
        BoundaryDescriptor("line_conic", "tangent"),
        BoundaryDescriptor("line_conic", "two_rational"),
        BoundaryDescriptor("irreducible", "cuspidal"),
        BoundaryDescriptor("irreducible", "nodal_split"),
        BoundaryDescriptor("three_lines", "trivial"),
        BoundaryDescriptor("three_lines", "c3"),
        BoundaryDescriptor("three_lines", "trivial", eckardt=True),
        BoundaryDescriptor("three_lines", "c3", eckardt=True),
    ]
    for d in (-1, -3, 2, -2, 5, -5, 6, -6, 7, 10):
        catalog.append(BoundaryDescriptor("line_conic", "quadratic", d=d))
        catalog.append(BoundaryDescriptor("irreducible", "nodal_nonsplit", d=d))
        catalog.append(BoundaryDescriptor("three_lines", "c2", d=d))
        catalog.append(BoundaryDescriptor("three_lines", "s3", d=d))
        catalog.append(BoundaryDescriptor("three_lines", "s3", d=d, eckardt=True))
    failures = []
    realized = set()
    for boundary in catalog:
        got = transcendental_bound(boundary)
        want = _published_bound(boundary)
        if got != want:
            failures.append(f"{boundary}: {got} != {want}")
        if geometric_brauer(boundary).kind != "zero":
            realized.add(got.invariant_factors)
    # among subgroups of Z/6 only Z/2 and Z/6 ever occur (and Z/4 separately)
    if not realized <= {(2,), (4,), (6,)}:
        failures.append(f"unexpected invariant values {realized}")
    detail = f"{len(catalog)} descriptors: bound matches the published table"
    return CheckResult(
        "8 classifier consistency",
        not failures,
        detail if not failures else "; ".join(failures[:5]),
        time.time() - t0,
    )


def check_twist_enumeration_oracle() -> CheckResult:
    """Criterion-4 companion: every grid cell against exhaustive enumeration."""
    t0 = time.time()
    from .brauer import _twist_module

    failures = []
    for d in TWIST_GRID_D:
        for n in TWIST_GRID_N:
            module = _twist_module(d, n)
            if invariants_finite_enumerated(module) != twist_invariants(d, n):
                failures.append((d, n))
    return CheckResult(
        "4b twist enumeration oracle",
        not failures,
        "exact and enumerated invariants agree on the grid"
        if not failures
        else f"mismatch at {failures[:5]}",
        time.time() - t0,
    )


ALL_CHECKS: list[Callable[[], CheckResult]] = [
    check_lattice_combinatorics,
    check_algebraic_tables,
    check_torsion_freeness,
    check_twist_table,
    check_twist_enumeration_oracle,
    check_examples_end_to_end,
    check_oracle_equivalence,
    check_property_suites,
    check_classifier_consistency,
]


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]


__all__ = [
    "ALL_CHECKS",
    "CheckResult",
    "EXPECTED_TABLES",
    "TWIST_GRID_D",
    "TWIST_GRID_N",
    "expected_twist",
    "run_all",
]
