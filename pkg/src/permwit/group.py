"""Finite permutation groups from generators.

Order and membership go through a deterministic Schreier-Sims stabilizer
chain (base points picked as the smallest moved point at each level, so
chains and everything derived from them are reproducible across runs).
Conjugacy classes and the normal-subgroup lattice are enumerated exactly
for groups within a configurable element budget.

A PermGroup is immutable after construction; the chain is built lazily
and cached.  Distinct groups may be processed in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from random import Random
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from permwit import kernels
from permwit.errors import BudgetExceeded, DegreeMismatch, NotASubgroup
from permwit.perm import Permutation


class _OrderLimitHit(Exception):
    """Internal: raised while building a chain whose order passed the limit."""


class StabilizerChain:
    """Base, strong generators and per-level transversals for one group.

    `base_prefix` forces the given 0-based points to head the base (used
    for pointwise stabilizers).  `order_limit` aborts construction with
    _OrderLimitHit as soon as the transversal-size product exceeds it;
    a chain that finishes under a limit is a complete, valid chain.
    """

    def __init__(self, degree: int, gen_tables: Sequence[bytes],
                 base_prefix: Sequence[int] = (), order_limit: Optional[int] = None):
        self.degree = degree
        self._ident = bytes(range(degree))
        self._limit = order_limit
        self.base: List[int] = []
        self.sgens: List[bytes] = []
        self.transversals: List[Dict[int, bytes]] = []
        for b in base_prefix:
            self._append_level(b)
        seen: Set[bytes] = set()
        for g in gen_tables:
            if g == self._ident or g in seen:
                continue
            seen.add(g)
            self._cover(g)
            self.sgens.append(g)
        self._recompute(0, len(self.base))
        self._complete()

    def _append_level(self, point: int) -> None:
        self.base.append(point)
        self.transversals.append({point: self._ident})

    def _cover(self, g: bytes) -> None:
        # ensure g moves some base point, appending a new level if not
        if any(g[b] != b for b in self.base):
            return
        self._append_level(min(x for x in range(self.degree) if g[x] != x))

    def _gens_at(self, i: int) -> List[bytes]:
        prefix = self.base[:i]
        return [g for g in self.sgens if all(g[b] == b for b in prefix)]

    def _recompute(self, lo: int, hi: int) -> None:
        for i in range(lo, hi):
            self._rebuild_transversal(i)
        if self._limit is not None and self.order() > self._limit:
            raise _OrderLimitHit

    def _rebuild_transversal(self, i: int) -> None:
        gens = self._gens_at(i)
        b = self.base[i]
        trans = {b: self._ident}
        queue = [b]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            ux = trans[x]
            for s in gens:
                y = s[x]
                if y not in trans:
                    trans[y] = kernels.compose(s, ux)
                    queue.append(y)
        self.transversals[i] = trans

    def _sift_from(self, start: int, table: bytes) -> Tuple[bytes, int]:
        for i in range(start, len(self.base)):
            rep = self.transversals[i].get(table[self.base[i]])
            if rep is None:
                return table, i
            table = kernels.compose(kernels.inverse(rep), table)
        return table, len(self.base)

    def sift(self, table: bytes) -> Tuple[bytes, int]:
        return self._sift_from(0, table)

    def _complete(self) -> None:
        # verify the Schreier condition bottom-up; a failing level yields a
        # new strong generator at the level where its residue stops sifting
        i = len(self.base) - 1
        while i >= 0:
            stop = self._check_level(i)
            if stop is None:
                i -= 1
            else:
                i = stop

    def _check_level(self, i: int) -> Optional[int]:
        trans = self.transversals[i]
        gens = self._gens_at(i)
        for x in sorted(trans):
            ux = trans[x]
            for s in gens:
                uy = trans[s[x]]
                sg = kernels.compose(kernels.inverse(uy), kernels.compose(s, ux))
                if sg == self._ident:
                    continue
                residue, j = self._sift_from(i + 1, sg)
                if residue == self._ident:
                    continue
                if j == len(self.base):
                    self._append_level(
                        min(x2 for x2 in range(self.degree) if residue[x2] != x2))
                self.sgens.append(residue)
                self._recompute(i + 1, j + 1)
                return j
        return None

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def contains(self, table: bytes) -> bool:
        residue, _ = self._sift_from(0, table)
        return residue == self._ident

    def stabilizer_gens(self, k: int) -> List[bytes]:
        """Strong generators fixing the first k base points pointwise."""
        return self._gens_at(k)

    def random_element(self, rng: Random) -> bytes:
        elem = self._ident
        for trans in self.transversals:
            rep = trans[rng.choice(sorted(trans))]
            elem = kernels.compose(elem, rep)
        return elem


class PermGroup:
    """A permutation group given by generators, with a lazy stabilizer chain."""

    __slots__ = ("_degree", "_generators", "_chain", "_elements")

    def __init__(self, generators: Iterable[Permutation], degree: Optional[int] = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group with no generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator degree {g.degree} does not match group degree {degree}")
        self._degree = degree
        self._generators = gens
        self._chain: Optional[StabilizerChain] = None
        self._elements: Optional[List[bytes]] = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls((), degree=degree)

    @classmethod
    def from_cycles(cls, degree: int, *cycle_strings: str) -> "PermGroup":
        return cls([Permutation.from_cycles(s, degree) for s in cycle_strings],
                   degree=degree)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self._generators

    def _gen_tables(self) -> List[bytes]:
        ident = bytes(range(self._degree))
        out: List[bytes] = []
        seen: Set[bytes] = set()
        for g in self._generators:
            t = g.table
            if t != ident and t not in seen:
                seen.add(t)
                out.append(t)
        return out

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self._degree, self._gen_tables())
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def order_exceeds(self, limit: int) -> bool:
        """True iff |G| > limit, aborting the chain build early when possible."""
        if self._chain is not None:
            return self.order() > limit
        try:
            chain = StabilizerChain(self._degree, self._gen_tables(), order_limit=limit)
        except _OrderLimitHit:
            return True
        self._chain = chain
        return False

    def contains(self, g: Permutation) -> bool:
        if g.degree != self._degree:
            raise DegreeMismatch(
                f"element degree {g.degree} does not match group degree {self._degree}")
        return self.chain.contains(g.table)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def orbits(self) -> List[Tuple[int, ...]]:
        """Partition of {1..degree} into orbits, each sorted, ordered by least point."""
        tables = self._gen_tables()
        remaining = set(range(self._degree))
        out: List[Tuple[int, ...]] = []
        while remaining:
            x = min(remaining)
            orb = kernels.orbit(x, tables) if tables else {x}
            remaining -= orb
            out.append(tuple(p + 1 for p in sorted(orb)))
        return out

    def orbit_of(self, point: int) -> frozenset:
        tables = self._gen_tables()
        if not 1 <= point <= self._degree:
            raise ValueError(f"point {point} out of range 1..{self._degree}")
        orb = kernels.orbit(point - 1, tables) if tables else {point - 1}
        return frozenset(p + 1 for p in orb)

    def is_transitive(self) -> bool:
        return len(self.orbit_of(1)) == self._degree

    def is_2_transitive(self) -> bool:
        """True iff the action on ordered pairs of distinct points is transitive."""
        n = self._degree
        if n < 2:
            raise ValueError("2-transitivity needs degree >= 2")
        tables = self._gen_tables()
        start = (0, 1)
        seen = {start}
        stack = [start]
        while stack:
            a, b = stack.pop()
            for g in tables:
                pair = (g[a], g[b])
                if pair not in seen:
                    seen.add(pair)
                    stack.append(pair)
        return len(seen) == n * (n - 1)

    def element_tables(self, budget: int = 10000) -> List[bytes]:
        if self._elements is None:
            if self.order_exceeds(budget):
                raise BudgetExceeded(
                    f"group order exceeds the enumeration budget of {budget}")
            elems = kernels.close_elements(self._degree, self._gen_tables(), budget)
            assert elems is not None and len(elems) == self.order()
            self._elements = elems
        if len(self._elements) > budget:
            raise BudgetExceeded(
                f"group order {len(self._elements)} exceeds the enumeration "
                f"budget of {budget}")
        return self._elements

    def elements(self, budget: int = 10000) -> List[Permutation]:
        return [Permutation._from_table(t) for t in self.element_tables(budget)]

    def element_set(self, budget: int = 10000) -> frozenset:
        return frozenset(self.element_tables(budget))

    def random_element(self, rng: Random) -> Permutation:
        return Permutation._from_table(self.chain.random_element(rng))

    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        """Subgroup fixing every listed point (1-based) individually."""
        prefix = []
        for p in points:
            if not 1 <= p <= self._degree:
                raise ValueError(f"point {p} out of range 1..{self._degree}")
            prefix.append(p - 1)
        chain = StabilizerChain(self._degree, self._gen_tables(), base_prefix=prefix)
        gens = [Permutation._from_table(t) for t in chain.stabilizer_gens(len(prefix))]
        return PermGroup(gens, degree=self._degree)

    def normal_closure(self, seeds: Iterable[Permutation]) -> "PermGroup":
        """Smallest normal subgroup of this group containing the seeds.

        Fixed-point iteration: conjugate the current generating set by the
        group's generators until nothing new appears.
        """
        ident = bytes(range(self._degree))
        current: List[bytes] = []
        for s in seeds:
            if not self.contains(s):
                raise NotASubgroup("seed lies outside the group")
            if s.table != ident and s.table not in current:
                current.append(s.table)
        if not current:
            return PermGroup.trivial(self._degree)
        gen_tables = self._gen_tables()
        chain = StabilizerChain(self._degree, current)
        changed = True
        while changed:
            changed = False
            for g in gen_tables:
                ginv = kernels.inverse(g)
                for h in list(current):
                    c = kernels.compose(g, kernels.compose(h, ginv))
                    if not chain.contains(c):
                        current.append(c)
                        chain = StabilizerChain(self._degree, current)
                        changed = True
        return PermGroup([Permutation._from_table(t) for t in current],
                         degree=self._degree)

    def conjugacy_classes(self, budget: int = 10000) -> List[Tuple[Permutation, int]]:
        """(representative, class size) pairs; reps are the lex-least class members."""
        tables = self.element_tables(budget)
        gen_tables = self._gen_tables()
        inv_tables = [kernels.inverse(g) for g in gen_tables]
        seen: Set[bytes] = set()
        out: List[Tuple[Permutation, int]] = []
        for t in sorted(tables):
            if t in seen:
                continue
            cls = kernels.conjugacy_orbit(t, gen_tables, inv_tables)
            seen |= cls
            out.append((Permutation._from_table(t), len(cls)))
        assert sum(size for _, size in out) == len(tables)
        return out

    def _same_group(self, other: "PermGroup") -> bool:
        if other.order() != self.order():
            return False
        return all(self.contains(g) for g in other.generators)

    def all_normal_subgroups(self, budget: int = 10000) -> "NormalSubgroupList":
        """Every normal subgroup, as the join-closure of class-rep normal closures."""
        classes = self.conjugacy_classes(budget)
        subs: List[PermGroup] = [PermGroup.trivial(self._degree)]

        def register(candidate: PermGroup) -> bool:
            for s in subs:
                if s._same_group(candidate):
                    return False
            subs.append(candidate)
            return True

        for rep, _ in classes:
            register(self.normal_closure([rep]))
        changed = True
        while changed:
            changed = False
            snapshot = list(subs)
            for i in range(len(snapshot)):
                for j in range(i + 1, len(snapshot)):
                    gens = list(snapshot[i].generators)
                    for g in snapshot[j].generators:
                        if g not in gens:
                            gens.append(g)
                    if register(PermGroup(gens, degree=self._degree)):
                        changed = True
        total = self.order()
        subs.sort(key=lambda s: (s.order(), tuple(sorted(g.table for g in s.generators))))
        entries = [NormalSubgroup(group=s, order=s.order(), index=total // s.order())
                   for s in subs]
        return NormalSubgroupList(parent=self, entries=entries)

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self._generators) or "()"
        return f"PermGroup(degree={self._degree}, <{gens}>)"


@dataclass
class NormalSubgroup:
    group: PermGroup
    order: int
    index: int

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self.group.generators


@dataclass
class NormalSubgroupList:
    parent: PermGroup
    entries: List[NormalSubgroup] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def orders(self) -> Tuple[int, ...]:
        return tuple(e.order for e in self.entries)


def is_normal(n_group: PermGroup, g_group: PermGroup) -> bool:
    """True iff n_group is a normal subgroup of g_group.

    Raises NotASubgroup when n_group is not even a subgroup.  Conjugating
    generators by generators suffices: for finite groups g N g^-1 <= N
    already forces equality.
    """
    if n_group.degree != g_group.degree:
        raise DegreeMismatch(
            f"degree mismatch: {n_group.degree} vs {g_group.degree}")
    for h in n_group.generators:
        if not g_group.contains(h):
            raise NotASubgroup("N is not a subgroup of G")
    for g in g_group.generators:
        for h in n_group.generators:
            if not n_group.contains(h.conjugate(g)):
                return False
    return True


def group_from_elements(tables: Iterable[bytes], degree: int) -> PermGroup:
    """A PermGroup with a small generating set recovering the given element list."""
    tables = sorted(set(tables))
    ident = bytes(range(degree))
    gens: List[bytes] = []
    chain: Optional[StabilizerChain] = None
    for t in tables:
        if t == ident:
            continue
        if chain is None or not chain.contains(t):
            gens.append(t)
            chain = StabilizerChain(degree, gens)
            if chain.order() == len(tables):
                break
    return PermGroup([Permutation._from_table(t) for t in gens], degree=degree)
