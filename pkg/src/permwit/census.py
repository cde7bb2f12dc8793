"""Census of transitive subgroups of S_q for small prime q, with machine
checks of the classical structure results the refutation pipeline rests on.

Every transitive group of prime degree q contains a q-cycle, so up to
conjugacy it contains the standard cycle C = <(1 2 ... q)>.  Two
overgroups of C that are conjugate in S_q are already conjugate by an
element normalizing C, and that normalizer is the affine group AGL(1,q).
The census therefore enumerates overgroups of C by iterated one-element
extensions (double-coset sweeps make each extension pass exact) and
dedupes up to AGL(1,q)-conjugacy.  Two independent dedupe routes are run
and must agree: a sweep over canonical class representatives, and a
complete element-set enumeration partitioned into classes afterwards.

Exact for q in {2, 3, 5, 7}.  For q in {11, 13} a seeded randomized
variant is available behind `deep=True`; it is experimental and makes no
completeness claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from permwit import kernels
from permwit.errors import BudgetExceeded, HypothesisError, PermwitError
from permwit.group import (
    NormalSubgroupList,
    PermGroup,
    group_from_elements,
)
from permwit.numthy import is_prime, primitive_root
from permwit.perm import Permutation, random_permutation
from permwit.quotient import is_cyclic, quotient
from permwit.witness import standard_cycle

EXACT_LIMIT = 7
EXPERIMENTAL = (11, 13)
NORMAL_BUDGET = 10000

Fingerprint = Tuple[bytes, ...]


def affine_group(q: int) -> PermGroup:
    """AGL(1,q) on points 1..q (point k is the field element k-1):
    generated by x -> x+1 and x -> g*x for g the smallest primitive root."""
    if not is_prime(q):
        raise HypothesisError(f"{q} is not prime")
    translation = standard_cycle(q)
    if q == 2:
        return PermGroup([translation])
    g = primitive_root(q)
    scaling = Permutation._from_table(bytes((g * r) % q for r in range(q)))
    return PermGroup([translation, scaling])


@dataclass
class CensusEntry:
    q: int
    group: PermGroup
    order: int
    normal_subgroups: Optional[NormalSubgroupList]
    is_simple: Optional[bool]
    is_2transitive: bool
    in_affine: bool
    normalizer_index: Optional[int]

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "generators": [g.cycle_string() for g in self.group.generators],
            "normal_subgroup_orders":
                list(self.normal_subgroups.orders())
                if self.normal_subgroups is not None else None,
            "is_simple": self.is_simple,
            "is_2transitive": self.is_2transitive,
            "in_affine": self.in_affine,
            "normalizer_index": self.normalizer_index,
        }


def _symmetric_elements(q: int) -> List[bytes]:
    gens = [standard_cycle(q).table]
    if q > 1:
        swap = list(range(q))
        swap[0], swap[1] = 1, 0
        gens.append(bytes(swap))
    import math
    elems = kernels.close_elements(q, gens, math.factorial(q))
    assert elems is not None
    return sorted(elems)


def _conjugate_set(tables: Sequence[bytes], u: bytes) -> Fingerprint:
    uinv = kernels.inverse(u)
    return tuple(sorted(
        kernels.compose(u, kernels.compose(t, uinv)) for t in tables))


class _ClassKeyCache:
    """Canonical AGL-conjugacy key of a subgroup: the lexicographically
    least sorted element tuple over its AGL conjugates."""

    def __init__(self, agl_elements: Sequence[bytes]):
        self.agl = list(agl_elements)
        self.cache: Dict[Fingerprint, Fingerprint] = {}

    def key(self, exact: Fingerprint) -> Fingerprint:
        got = self.cache.get(exact)
        if got is None:
            got = min(_conjugate_set(exact, u) for u in self.agl)
            self.cache[exact] = got
        return got


def _double_coset(gen_tables: Sequence[bytes], g: bytes) -> Set[bytes]:
    """A g A for the group A generated by gen_tables (BFS by left and right
    multiplication with generators and inverses)."""
    muls = []
    for t in gen_tables:
        muls.append(t)
        inv = kernels.inverse(t)
        if inv != t:
            muls.append(inv)
    seen = {g}
    stack = [g]
    while stack:
        x = stack.pop()
        for t in muls:
            for y in (kernels.compose(t, x), kernels.compose(x, t)):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen


def _extension_sweep(q: int, start: Fingerprint, sq_elements: Sequence[bytes],
                     register) -> None:
    """For the subgroup with element tuple `start`, close <A, g> for every
    g in S_q; `register(new_exact_tuple)` is called for each closure.
    Sweeps one double coset A g A per closure, which is exact because
    <A, g> = <A, a g b> for a, b in A."""
    a_set = set(start)
    gens = [p.table for p in group_from_elements(start, q).generators]
    covered = set(a_set)
    limit = len(sq_elements)
    for g in sq_elements:
        if g in covered:
            continue
        closure = kernels.close_elements(q, gens + [g], limit)
        assert closure is not None
        register(tuple(sorted(closure)))
        covered |= _double_coset(gens, g)


def _enumerate_class_reps(q: int, sq_elements: Sequence[bytes],
                          keys: _ClassKeyCache) -> Dict[Fingerprint, Fingerprint]:
    """Route A: sweep canonical class representatives only."""
    cycle_tuple = tuple(sorted(
        kernels.close_elements(q, [standard_cycle(q).table], q)))
    start = keys.key(cycle_tuple)
    found: Dict[Fingerprint, Fingerprint] = {start: start}
    work = [start]
    while work:
        rep = work.pop(0)

        def register(exact: Fingerprint) -> None:
            k = keys.key(exact)
            if k not in found:
                found[k] = k  # the canonical conjugate is itself the rep
                work.append(k)

        _extension_sweep(q, rep, sq_elements, register)
    return found


def _enumerate_all_overgroups(q: int, sq_elements: Sequence[bytes]) -> Set[Fingerprint]:
    """Route B: every overgroup of the standard cycle group, by exact
    element-set fingerprint."""
    cycle_tuple = tuple(sorted(
        kernels.close_elements(q, [standard_cycle(q).table], q)))
    found: Set[Fingerprint] = {cycle_tuple}
    work = [cycle_tuple]
    while work:
        sub = work.pop(0)

        def register(exact: Fingerprint) -> None:
            if exact not in found:
                found.add(exact)
                work.append(exact)

        _extension_sweep(q, sub, sq_elements, register)
    return found


def _partition_into_classes(overgroups: Set[Fingerprint], agl_elements: Sequence[bytes]
                            ) -> List[Fingerprint]:
    """Partition route B's collection into AGL-conjugacy classes and return
    each class's canonical (lex-least) member.  Every conjugate of a
    collected overgroup must itself have been collected."""
    remaining = set(overgroups)
    canon: List[Fingerprint] = []
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        stack = [seed]
        while stack:
            cur = stack.pop()
            for u in agl_elements:
                conj = _conjugate_set(cur, u)
                if conj not in overgroups:
                    raise PermwitError(
                        "census completeness cross-check failed: an AGL "
                        "conjugate of a collected overgroup is missing")
                if conj in remaining and conj not in orbit:
                    orbit.add(conj)
                    stack.append(conj)
        remaining -= orbit
        canon.append(min(orbit))
    return sorted(canon)


def _in_affine(group: PermGroup, agl: PermGroup, agl_elements: Sequence[bytes]) -> bool:
    """True iff some AGL-conjugate of the group lies inside AGL(1,q).

    Searching over AGL conjugators suffices: any conjugator into the
    affine group can be corrected by a Sylow argument to normalize the
    standard cycle group."""
    if agl.order() % group.order() != 0:
        return False
    gen_tables = [g.table for g in group.generators]
    chain = agl.chain
    for u in agl_elements:
        uinv = kernels.inverse(u)
        if all(chain.contains(kernels.compose(u, kernels.compose(t, uinv)))
               for t in gen_tables):
            return True
    return False


def _normalizer_tables(group: PermGroup, sq_elements: Sequence[bytes]) -> List[bytes]:
    gen_tables = [g.table for g in group.generators]
    chain = group.chain
    out = []
    for x in sq_elements:
        xinv = kernels.inverse(x)
        if all(chain.contains(kernels.compose(x, kernels.compose(t, xinv)))
               for t in gen_tables):
            out.append(x)
    return out


def census(q: int, deep: bool = False, deep_samples: int = 20000,
           seed: int = 0) -> List[CensusEntry]:
    """All transitive subgroups of S_q up to conjugacy, smallest order first.

    Exact (with the two dedupe routes cross-checked) for q <= 7.  For
    q in {11, 13}, `deep=True` runs the experimental randomized variant;
    anything else is out of budget.
    """
    if not is_prime(q):
        raise HypothesisError(f"{q} is not prime")
    if q > EXACT_LIMIT:
        if q in EXPERIMENTAL and deep:
            return _census_deep(q, deep_samples, seed)
        raise BudgetExceeded(
            f"census is exact only for q <= {EXACT_LIMIT}; q in {EXPERIMENTAL} "
            f"runs experimentally behind deep=True")

    sq_elements = _symmetric_elements(q)
    agl = affine_group(q)
    agl_elements = [p.table for p in agl.elements(budget=max(NORMAL_BUDGET, q * q))]
    keys = _ClassKeyCache(agl_elements)

    route_a = sorted(_enumerate_class_reps(q, sq_elements, keys))
    route_b_all = _enumerate_all_overgroups(q, sq_elements)
    route_b = _partition_into_classes(route_b_all, agl_elements)
    if route_a != route_b:
        raise PermwitError(
            f"census cross-check failed for q={q}: AGL-dedupe found "
            f"{len(route_a)} classes, element-fingerprint dedupe {len(route_b)}")

    cycle_table = standard_cycle(q).table
    entries = []
    for exact in route_a:
        group = group_from_elements(exact, q)
        order = group.order()
        if not group.is_transitive():
            raise PermwitError("census produced a non-transitive group")
        if order % q != 0:
            raise PermwitError("census entry order is not divisible by q")
        if cycle_table not in set(exact):
            raise PermwitError("census entry lost the standard q-cycle")
        normals = group.all_normal_subgroups(budget=NORMAL_BUDGET)
        simple = len(normals) == 2
        two_transitive = group.is_2_transitive() if q >= 2 else False
        in_aff = _in_affine(group, agl, agl_elements)
        if not (in_aff or two_transitive):
            raise PermwitError(
                f"dichotomy violated at q={q}: order-{order} entry is neither "
                f"affine nor doubly transitive")
        norm_index = None
        if simple:
            norm_index = len(_normalizer_tables(group, sq_elements)) // order
        entries.append(CensusEntry(
            q=q, group=group, order=order, normal_subgroups=normals,
            is_simple=simple, is_2transitive=two_transitive,
            in_affine=in_aff, normalizer_index=norm_index))
    entries.sort(key=lambda e: e.order)
    return entries


def _census_deep(q: int, samples: int, seed: int) -> List[CensusEntry]:
    """Experimental randomized census for q in {11, 13}: seeds the closure
    search with all affine extensions of the standard cycle plus random
    elements.  May miss classes; never enumerates element sets."""
    rng = Random(seed)
    cycle = standard_cycle(q)
    agl = affine_group(q)
    agl_elements = [p.table for p in agl.elements(budget=q * q)]
    candidates: List[PermGroup] = []

    def same_class(a: PermGroup, b: PermGroup) -> bool:
        if a.order() != b.order():
            return False
        for u in agl_elements:
            uperm = Permutation._from_table(u)
            if all(b.contains(g.conjugate(uperm)) for g in a.generators):
                return True
        return False

    def offer(group: PermGroup) -> None:
        if not group.is_transitive():
            return
        if any(same_class(group, c) for c in candidates):
            return
        candidates.append(group)

    for u in agl_elements:
        offer(PermGroup([cycle, Permutation._from_table(u)]))
    for _ in range(samples):
        offer(PermGroup([cycle, random_permutation(q, rng)]))

    entries = []
    for group in candidates:
        order = group.order()
        small = not group.order_exceeds(NORMAL_BUDGET)
        normals = group.all_normal_subgroups(NORMAL_BUDGET) if small else None
        entries.append(CensusEntry(
            q=q, group=group, order=order,
            normal_subgroups=normals,
            is_simple=(len(normals) == 2) if normals is not None else None,
            is_2transitive=group.is_2_transitive(),
            in_affine=_in_affine(group, agl, agl_elements),
            normalizer_index=None))
    entries.sort(key=lambda e: e.order)
    return entries


@dataclass
class WielandtReport:
    order: int
    applicable: bool
    normalizer_order: Optional[int] = None
    index: Optional[int] = None
    index_divides_q_minus_1: Optional[bool] = None
    quotient_cyclic: Optional[bool] = None

    @property
    def passed(self) -> bool:
        if not self.applicable:
            return True
        return bool(self.index_divides_q_minus_1 and self.quotient_cyclic)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "applicable": self.applicable,
            "normalizer_order": self.normalizer_order,
            "normalizer_index": self.index,
            "index_divides_q_minus_1": self.index_divides_q_minus_1,
            "quotient_cyclic": self.quotient_cyclic,
            "passed": self.passed,
        }


def verify_wielandt(entry: CensusEntry,
                    sq_elements: Optional[Sequence[bytes]] = None) -> WielandtReport:
    """For a simple transitive entry: the normalizer quotient in S_q is
    cyclic of order dividing q-1.  Non-simple entries are not applicable."""
    if not entry.is_simple:
        return WielandtReport(order=entry.order, applicable=False)
    if sq_elements is None:
        sq_elements = _symmetric_elements(entry.q)
    normalizer = group_from_elements(
        _normalizer_tables(entry.group, sq_elements), entry.q)
    n_order = normalizer.order()
    index = n_order // entry.order
    table = quotient(normalizer, entry.group, budget=max(index + 1, 2))
    return WielandtReport(
        order=entry.order,
        applicable=True,
        normalizer_order=n_order,
        index=index,
        index_divides_q_minus_1=(entry.q - 1) % index == 0,
        quotient_cyclic=is_cyclic(table),
    )


@dataclass
class BurnsideReport:
    order: int
    in_affine: bool
    doubly_transitive: bool
    simple_normal_order: Optional[int]

    @property
    def passed(self) -> bool:
        return self.in_affine or (
            self.doubly_transitive and self.simple_normal_order is not None)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "in_affine": self.in_affine,
            "doubly_transitive": self.doubly_transitive,
            "simple_normal_order": self.simple_normal_order,
            "passed": self.passed,
        }


def verify_burnside(entry: CensusEntry) -> BurnsideReport:
    """Dichotomy: the entry embeds in AGL(1,q), or it is doubly transitive
    with a nonabelian simple transitive normal subgroup."""
    witness_order = None
    if entry.normal_subgroups is not None:
        for sub in entry.normal_subgroups:
            if sub.order == 1:
                continue
            group = sub.group
            gens = group.generators
            abelian = all(g * h == h * g
                          for i, g in enumerate(gens) for h in gens[i + 1:])
            if abelian:
                continue
            if not group.is_transitive():
                continue
            if len(group.all_normal_subgroups(NORMAL_BUDGET)) != 2:
                continue
            witness_order = sub.order
            break
    return BurnsideReport(
        order=entry.order,
        in_affine=entry.in_affine,
        doubly_transitive=entry.is_2transitive,
        simple_normal_order=witness_order,
    )


@dataclass
class LemmaPqReport:
    q: int
    p: int
    pairs_checked: int
    violations: List[dict]
    strong_violations: List[dict]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.strong_violations

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "pairs_checked": self.pairs_checked,
            "violations": self.violations,
            "strong_violations": self.strong_violations,
            "passed": self.passed,
        }


def verify_lemma_pq(q: int, p: int,
                    entries: Optional[List[CensusEntry]] = None) -> LemmaPqReport:
    """Exhaustive divisibility sweep over the census: for every transitive A
    of degree q and every normal B of A, p | [A:B] forces q | [A:B]; the
    stronger form additionally forces B trivial.  Requires p < q primes
    with p not dividing q-1."""
    if not (is_prime(p) and is_prime(q)):
        raise HypothesisError(f"need primes, got p={p}, q={q}")
    if p >= q:
        raise HypothesisError(f"need p < q, got p={p}, q={q}")
    if (q - 1) % p == 0:
        raise HypothesisError(
            f"{p} divides {q}-1 = {q - 1}; the divisibility sweep does not apply")
    if entries is None:
        entries = census(q)
    pairs = 0
    violations = []
    strong = []
    for entry in entries:
        assert entry.normal_subgroups is not None
        for sub in entry.normal_subgroups:
            pairs += 1
            if sub.index % p != 0:
                continue
            record = {"A_order": entry.order, "B_order": sub.order,
                      "index": sub.index}
            if sub.index % q != 0:
                violations.append(record)
            if sub.order != 1:
                strong.append(record)
    return LemmaPqReport(q=q, p=p, pairs_checked=pairs,
                         violations=violations, strong_violations=strong)


@dataclass
class ContainReport:
    q: int
    groups_checked: int
    containment_failures: List[dict]
    centralizer_order: int

    @property
    def centralizer_ok(self) -> bool:
        return self.centralizer_order == self.q

    @property
    def passed(self) -> bool:
        return not self.containment_failures and self.centralizer_ok

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "groups_with_simple_transitive_normal": self.groups_checked,
            "containment_failures": self.containment_failures,
            "centralizer_of_cycle_order": self.centralizer_order,
            "centralizer_ok": self.centralizer_ok,
            "passed": self.passed,
        }


def verify_contain(q: int,
                   entries: Optional[List[CensusEntry]] = None) -> ContainReport:
    """Whenever a census entry G has a transitive simple normal subgroup H,
    every nontrivial normal subgroup of G must contain H.  Also checks
    directly that the centralizer of the standard q-cycle in S_q is the
    cycle's own group (order exactly q)."""
    if entries is None:
        entries = census(q)
    sq_elements = _symmetric_elements(q)
    checked = 0
    failures = []
    for entry in entries:
        assert entry.normal_subgroups is not None
        simple_transitive = [
            sub for sub in entry.normal_subgroups
            if sub.order > 1 and sub.group.is_transitive()
            and len(sub.group.all_normal_subgroups(NORMAL_BUDGET)) == 2
        ]
        if not simple_transitive:
            continue
        checked += 1
        for h_sub in simple_transitive:
            for n_sub in entry.normal_subgroups:
                if n_sub.order == 1:
                    continue
                if not all(n_sub.group.contains(g) for g in h_sub.generators):
                    failures.append({
                        "G_order": entry.order,
                        "H_order": h_sub.order,
                        "N_order": n_sub.order,
                    })
    cycle_table = standard_cycle(q).table
    centralizer = [
        x for x in sq_elements
        if kernels.compose(x, cycle_table) == kernels.compose(cycle_table, x)
    ]
    return ContainReport(q=q, groups_checked=checked,
                         containment_failures=failures,
                         centralizer_order=len(centralizer))


def applicable_primes(q: int) -> List[int]:
    """Primes p < q with p not dividing q-1 (the divisibility sweep's scope)."""
    return [p for p in range(2, q) if is_prime(p) and (q - 1) % p != 0]


def census_report(q: int, deep: bool = False, deep_samples: int = 20000,
                  seed: int = 0) -> dict:
    """JSON-ready full census report: entries, flags, and all verdicts."""
    entries = census(q, deep=deep, deep_samples=deep_samples, seed=seed)
    exact = q <= EXACT_LIMIT
    report: dict = {
        "q": q,
        "method": "exact" if exact else "randomized-experimental",
        "complete": exact,
        "entry_count": len(entries),
        "orders": [e.order for e in entries],
        "entries": [e.to_json_dict() for e in entries],
    }
    if exact:
        sq_elements = _symmetric_elements(q)
        wielandt = [verify_wielandt(e, sq_elements).to_json_dict() for e in entries]
        burnside = [verify_burnside(e).to_json_dict() for e in entries]
        contain = verify_contain(q, entries).to_json_dict()
        sweeps = {
            str(p): verify_lemma_pq(q, p, entries).to_json_dict()
            for p in applicable_primes(q)
        }
        report["wielandt"] = wielandt
        report["burnside"] = burnside
        report["containment"] = contain
        report["index_divisibility"] = sweeps
        report["passed"] = (
            all(w["passed"] for w in wielandt)
            and all(b["passed"] for b in burnside)
            and contain["passed"]
            and all(s["passed"] for s in sweeps.values())
        )
    return report
