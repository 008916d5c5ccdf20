"""Finite permutation groups.

Permutations on {0, ..., n-1} are image tuples; (p * q)(x) = p(q(x)) is
realized by :func:`compose`.  :class:`PermGroup` keeps a verified
stabilizer chain (Schreier-Sims) for exact orders and membership, lists
elements for groups up to a configurable bound, and enumerates subgroups
of solvable groups up to conjugacy by the cyclic extension method.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .arith import primes_dividing
from .errors import NotSolvable, NotStabilized, TooLarge

Perm = tuple[int, ...]

ELEMENT_LISTING_BOUND = 10**5
SUBGROUP_ENUM_BOUND = 10**4
# Above this order the Cayley table is not materialized and products are
# computed on demand (memory guardrail; every group in this project is far
# below it).
CAYLEY_TABLE_BOUND = 5000


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """(p * q)(x) = p(q(x))."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_permutation(p: Perm) -> bool:
    n = len(p)
    return sorted(p) == list(range(n))


def cycle_lengths(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        out.append(length)
    return tuple(sorted(out))


def perm_order(p: Perm) -> int:
    return lcm(*cycle_lengths(p)) if p else 1


def perm_from_cycles(n: int, cycles: list[list[int]]) -> Perm:
    images = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return tuple(images)


def first_moved(p: Perm) -> int | None:
    for i, j in enumerate(p):
        if i != j:
            return i
    return None


@dataclass
class _Level:
    base: int
    gens: list[Perm]
    orbit: dict[int, Perm] = field(default_factory=dict)  # point -> rep with rep(base) = point


class PermGroup:
    """A finite permutation group given by generators.

    The stabilizer chain and element list are built lazily and cached;
    build them from a single thread (any query triggers construction),
    after which queries only read.
    """

    def __init__(self, degree: int, generators: list[Perm] | tuple[Perm, ...]):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        seen = set()
        ident = identity_perm(degree)
        for g in generators:
            g = tuple(g)
            if len(g) != degree or not is_permutation(g):
                raise ValueError(f"not a permutation of degree {degree}: {g}")
            if g != ident and g not in seen:
                seen.add(g)
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._chain: list[_Level] | None = None
        self._elements: tuple[Perm, ...] | None = None

    # -- stabilizer chain ------------------------------------------------

    def _sift(self, p: Perm, start: int) -> tuple[Perm, int]:
        """Strip p through the chain from `start`; (residue, stuck level)."""
        levels = self._chain
        ident = identity_perm(self.degree)
        lvl = start
        while p != ident and lvl < len(levels):
            rep = levels[lvl].orbit.get(p[levels[lvl].base])
            if rep is None:
                return p, lvl
            p = compose(inverse(rep), p)
            lvl += 1
        return p, lvl

    def _cumulative_gens(self, i: int) -> list[Perm]:
        """Strong generators of the i-th stabilizer: this level and deeper.

        A generator stored at level m fixes the bases of levels < m, so it
        belongs to every stabilizer above it in the chain.
        """
        return [g for level in self._chain[i:] for g in level.gens]

    def _recompute_orbit(self, i: int) -> None:
        level = self._chain[i]
        gens = self._cumulative_gens(i)
        base = level.base
        orbit = {base: identity_perm(self.degree)}
        queue = [base]
        while queue:
            pt = queue.pop(0)
            rep = orbit[pt]
            for g in gens:
                img = g[pt]
                if img not in orbit:
                    orbit[img] = compose(g, rep)
                    queue.append(img)
        level.orbit = orbit

    def _build_chain(self) -> list[_Level]:
        if self._chain is not None:
            return self._chain
        self._chain = []
        levels = self._chain
        ident = identity_perm(self.degree)
        if self.generators:
            base = first_moved(self.generators[0])
            levels.append(_Level(base, list(self.generators)))
        i = 0
        while 0 <= i < len(levels):
            self._recompute_orbit(i)
            level = levels[i]
            gens = self._cumulative_gens(i)
            clean = True
            for pt in sorted(level.orbit):
                rep = level.orbit[pt]
                for g in gens:
                    schreier = compose(inverse(level.orbit[g[pt]]), compose(g, rep))
                    if schreier == ident:
                        continue
                    residue, lvl = self._sift(schreier, i + 1)
                    if residue != ident:
                        if lvl == len(levels):
                            levels.append(_Level(first_moved(residue), []))
                        levels[lvl].gens.append(residue)
                        i = lvl
                        clean = False
                        break
                if not clean:
                    break
            if clean:
                i -= 1
        return levels

    def order(self) -> int:
        n = 1
        for level in self._build_chain():
            n *= len(level.orbit)
        return n

    def __contains__(self, p: Perm) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        self._build_chain()
        residue, _ = self._sift(p, 0)
        return residue == identity_perm(self.degree)

    def is_trivial(self) -> bool:
        return not self.generators

    # -- element listing --------------------------------------------------

    def elements(self, bound: int = ELEMENT_LISTING_BOUND) -> tuple[Perm, ...]:
        if self._elements is None:
            if self.order() > bound:
                raise TooLarge(f"group of order {self.order()} exceeds bound {bound}")
            ident = identity_perm(self.degree)
            seen = {ident}
            queue = [ident]
            while queue:
                x = queue.pop(0)
                for g in self.generators:
                    y = compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            self._elements = tuple(sorted(seen))
        return self._elements

    def exponent(self, bound: int = ELEMENT_LISTING_BOUND) -> int:
        return lcm(*(perm_order(p) for p in self.elements(bound)))


def group_order(g: PermGroup) -> int:
    return g.order()


def exponent(g: PermGroup, bound: int = ELEMENT_LISTING_BOUND) -> int:
    return g.exponent(bound)


def reduce_generators(degree: int, gens: list[Perm]) -> list[Perm]:
    """Drop generators already generated by the kept ones (order-preserving)."""
    kept: list[Perm] = []
    group = PermGroup(degree, [])
    for g in gens:
        if g not in group:
            kept.append(g)
            group = PermGroup(degree, kept)
    return kept


def setwise_stabilizer(g: PermGroup, points: set[int] | frozenset[int]) -> PermGroup:
    """The subgroup { x in G : x(S) = S }, by Schreier generators on the set orbit."""
    s0 = frozenset(points)
    if not s0 <= set(range(g.degree)):
        raise ValueError("points outside the domain")
    ident = identity_perm(g.degree)
    reps: dict[frozenset[int], Perm] = {s0: ident}
    queue = [s0]
    while queue:
        t = queue.pop(0)
        rep = reps[t]
        for gen in g.generators:
            t2 = frozenset(gen[x] for x in t)
            if t2 not in reps:
                reps[t2] = compose(gen, rep)
                queue.append(t2)
    schreier: list[Perm] = []
    seen = set()
    for t in sorted(reps, key=sorted):
        rep = reps[t]
        for gen in g.generators:
            t2 = frozenset(gen[x] for x in t)
            sg = compose(inverse(reps[t2]), compose(gen, rep))
            if sg != ident and sg not in seen:
                seen.add(sg)
                schreier.append(sg)
    stab = PermGroup(g.degree, reduce_generators(g.degree, schreier))
    if stab.order() * len(reps) != g.order():
        raise AssertionError("orbit-stabilizer mismatch in setwise_stabilizer")
    return stab


def orbit_count(g: PermGroup, points: set[int] | frozenset[int]) -> int:
    """Number of G-orbits on a setwise-stabilized point set."""
    pts = sorted(points)
    for gen in g.generators:
        if {gen[x] for x in pts} != set(pts):
            raise NotStabilized(f"generator {gen} does not stabilize {pts}")
    remaining = set(pts)
    count = 0
    while remaining:
        seed = remaining.pop()
        orbit = {seed}
        queue = [seed]
        while queue:
            x = queue.pop(0)
            for gen in g.generators:
                y = gen[x]
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        remaining -= orbit
        count += 1
    return count


# -- subgroup enumeration (cyclic extension method) -----------------------


class _TableGroup:
    """A small group materialized for index arithmetic.

    Elements are indexed into the sorted element list; products either go
    through a Cayley table or are composed on demand.
    """

    def __init__(self, group: PermGroup, bound: int):
        self.group = group
        self.elements: tuple[Perm, ...] = group.elements(bound=max(bound, ELEMENT_LISTING_BOUND))
        self.n = len(self.elements)
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.e = self.index[identity_perm(group.degree)]
        if self.n <= CAYLEY_TABLE_BOUND:
            table = []
            for p in self.elements:
                index = self.index
                table.append([index[compose(p, q)] for q in self.elements])
            self._table = table
            self.mul = lambda i, j: table[i][j]
        else:
            self._table = None
            self.mul = lambda i, j: self.index[compose(self.elements[i], self.elements[j])]
        self.inv = [self.index[inverse(p)] for p in self.elements]
        self.order_of = [perm_order(p) for p in self.elements]
        # intern cycle types for cheap conjugacy invariants
        type_ids: dict[tuple[int, ...], int] = {}
        self.cycle_type_id = []
        for p in self.elements:
            ct = cycle_lengths(p)
            self.cycle_type_id.append(type_ids.setdefault(ct, len(type_ids)))
        self.gen_idx = reduce_generators(group.degree, list(group.generators))
        self.gens = [self.index[g] for g in self.gen_idx]

    def conj(self, x: int, h: int) -> int:
        return self.mul(self.mul(x, h), self.inv[x])

    def power(self, x: int, k: int) -> int:
        out = self.e
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def closure(self, seeds: list[int]) -> frozenset[int]:
        known = {self.e}
        queue = [self.e]
        while queue:
            x = queue.pop(0)
            for s in seeds:
                y = self.mul(x, s)
                if y not in known:
                    known.add(y)
                    queue.append(y)
        return frozenset(known)

    def greedy_generators(self, subgroup: frozenset[int]) -> list[int]:
        gens: list[int] = []
        covered = frozenset({self.e})
        for i in sorted(subgroup, key=lambda i: (-self.order_of[i], i)):
            if i not in covered:
                gens.append(i)
                covered = self.closure(gens)
                if len(covered) == len(subgroup):
                    break
        return gens

    def normal_closure_in(self, seeds: list[int], ambient_gens: list[int]) -> frozenset[int]:
        current = self.closure(seeds)
        while True:
            extra = [
                self.conj(h, x)
                for x in current
                for h in ambient_gens
                if self.conj(h, x) not in current
            ]
            if not extra:
                return current
            current = self.closure(sorted(current | set(extra)))

    def is_solvable(self) -> bool:
        h_gens = list(self.gens)
        h_size = self.n
        while True:
            comms = sorted(
                {
                    self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))
                    for a in h_gens
                    for b in h_gens
                }
                - {self.e}
            )
            if not comms:
                return True
            derived = self.normal_closure_in(comms, h_gens)
            if len(derived) == h_size:
                return False
            h_gens = self.greedy_generators(derived)
            h_size = len(derived)

    def subgroup_conjugacy_orbit(self, sub: frozenset[int]) -> set[frozenset[int]]:
        orbit = {sub}
        queue = [sub]
        while queue:
            t = queue.pop(0)
            for g in self.gens:
                img = frozenset(self.conj(g, x) for x in t)
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        return orbit


@dataclass
class SubgroupClass:
    """One conjugacy class of subgroups, with enumeration metadata."""

    group: PermGroup
    order: int
    conjugates: int
    element_set: frozenset[Perm]


def subgroup_classes(
    g: PermGroup, bound: int = SUBGROUP_ENUM_BOUND
) -> list[SubgroupClass]:
    """All subgroups of a solvable group up to conjugacy (cyclic extension).

    Every nontrivial subgroup of a solvable group has a normal subgroup of
    prime index, so iterating prime extensions H = <U, x> with x in N_G(U),
    x^p in U, over discovered classes U is exhaustive.
    """
    n = g.order()
    if n > bound:
        raise TooLarge(f"group of order {n} exceeds subgroup enumeration bound {bound}")
    tg = _TableGroup(g, bound)
    if not tg.is_solvable():
        raise NotSolvable("subgroup enumeration implemented for solvable groups only")

    primes = primes_dividing(n) if n > 1 else []
    trivial = frozenset({tg.e})

    classes: list[dict] = []
    member_of: dict[frozenset[int], int] = {}

    def register(sub: frozenset[int]) -> None:
        orbit = tg.subgroup_conjugacy_orbit(sub)
        cid = len(classes)
        for s in orbit:
            member_of[s] = cid
        rep = min(orbit, key=sorted)
        classes.append({"rep": rep, "conjugates": len(orbit)})

    register(trivial)
    work = 0
    while work < len(classes):
        rep = classes[work]["rep"]
        work += 1
        rep_gens = tg.greedy_generators(rep)
        normalizer = [
            x
            for x in range(tg.n)
            if all(tg.conj(x, h) in rep for h in rep_gens)
        ]
        size = len(rep)
        for x in normalizer:
            if x in rep:
                continue
            for p in primes:
                if n % (size * p):
                    continue
                if tg.power(x, p) not in rep:
                    continue
                new = set(rep)
                coset = rep
                for _ in range(p - 1):
                    coset = {tg.mul(u, x) for u in coset}
                    new |= coset
                sub = frozenset(new)
                if len(sub) != size * p:
                    raise AssertionError("extension does not have prime index")
                if sub not in member_of:
                    register(sub)
                break  # x yields exactly one minimal prime extension

    out = []
    for cls in sorted(classes, key=lambda c: (len(c["rep"]), sorted(c["rep"]))):
        rep = cls["rep"]
        gens = [tg.elements[i] for i in tg.greedy_generators(rep)]
        out.append(
            SubgroupClass(
                group=PermGroup(g.degree, gens),
                order=len(rep),
                conjugates=cls["conjugates"],
                element_set=frozenset(tg.elements[i] for i in rep),
            )
        )
    return out


def subgroups_up_to_conjugacy(
    g: PermGroup, bound: int = SUBGROUP_ENUM_BOUND
) -> list[PermGroup]:
    return [cls.group for cls in subgroup_classes(g, bound)]


def all_subgroups_bruteforce(g: PermGroup, bound: int = 200) -> list[frozenset[Perm]]:
    """Every subgroup (not just class representatives), for validation.

    Grows subgroups one generator at a time; any subgroup is reached through
    a chain of subgroups of itself, so the fixpoint is complete.  Intended
    for groups of order at most a few dozen.
    """
    if g.order() > bound:
        raise TooLarge(f"brute-force subgroup listing capped at order {bound}")
    tg = _TableGroup(g, max(bound, SUBGROUP_ENUM_BOUND))
    found = {frozenset({tg.e})}
    queue = [frozenset({tg.e})]
    while queue:
        h = queue.pop(0)
        hgens = tg.greedy_generators(h)
        for x in range(tg.n):
            if x in h:
                continue
            bigger = tg.closure(hgens + [x])
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return [
        frozenset(tg.elements[i] for i in sub)
        for sub in sorted(found, key=lambda s: (len(s), sorted(s)))
    ]


__all__ = [
    "ELEMENT_LISTING_BOUND",
    "SUBGROUP_ENUM_BOUND",
    "Perm",
    "PermGroup",
    "SubgroupClass",
    "all_subgroups_bruteforce",
    "compose",
    "cycle_lengths",
    "exponent",
    "first_moved",
    "group_order",
    "identity_perm",
    "inverse",
    "orbit_count",
    "perm_from_cycles",
    "perm_order",
    "reduce_generators",
    "setwise_stabilizer",
    "subgroup_classes",
    "subgroups_up_to_conjugacy",
]
