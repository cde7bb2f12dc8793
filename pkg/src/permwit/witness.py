"""Construction and verification of witness triples (G, N1, N2).

A witness of degree n is a transitive G <= S_n with two normal subgroups
of equal prime index p: N1 transitive, N2 not, and G/N1 isomorphic to
G/N2.  One exists whenever some prime p divides both n and phi(n); the
construction conjugates the full n-cycle by a multiplication map of order
p on the residues mod n.

Verification never trusts the construction: orders, indices, orbits and
the quotient isomorphism are all recomputed from scratch, and the
non-transitivity of N2 gets a second, independent certificate (|N2| = n
together with a fixed point of a non-identity element).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from permwit.errors import DegreeMismatch, HypothesisError, PermwitError
from permwit.group import PermGroup, is_normal
from permwit.numthy import euler_phi, factorize, is_prime, unit_of_order
from permwit.perm import Permutation
from permwit.quotient import find_isomorphism, quotient


@dataclass
class Clause:
    ok: bool
    detail: str


@dataclass
class VerificationReport:
    clauses: Dict[str, Clause] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.clauses.values())

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "clauses": {
                key: {"ok": c.ok, "detail": c.detail}
                for key, c in sorted(self.clauses.items())
            },
        }


@dataclass
class Witness:
    n: int
    p: int
    i: int
    tau: Permutation
    sigma: Permutation
    G: PermGroup
    N1: PermGroup
    N2: PermGroup
    verified: bool = False

    def to_json_dict(self, report: Optional[VerificationReport] = None) -> dict:
        out = {
            "n": self.n,
            "p": self.p,
            "i": self.i,
            "tau": self.tau.cycle_string(),
            "sigma": self.sigma.cycle_string(),
            "G": [g.cycle_string() for g in self.G.generators],
            "N1": [g.cycle_string() for g in self.N1.generators],
            "N2": [g.cycle_string() for g in self.N2.generators],
            "verified": self.verified,
        }
        if report is not None:
            out["report"] = report.to_json_dict()
        return out


def standard_cycle(n: int) -> Permutation:
    """The n-cycle (1 2 ... n)."""
    return Permutation._from_table(bytes(list(range(1, n)) + [0]))


def build_sigma(n: int, i: int) -> Permutation:
    """The multiplication-by-i map on residues mod n, as a permutation.

    Point k stands for residue k-1, so the map sends point k to the point
    of residue i*(k-1) mod n.  It fixes point 1 and conjugates the
    standard n-cycle to its i-th power.
    """
    if math.gcd(i, n) != 1:
        raise HypothesisError(f"{i} is not a unit mod {n}")
    return Permutation._from_table(bytes((i * r) % n for r in range(n)))


def valid_primes(n: int) -> List[int]:
    """Primes p with p | n and p | phi(n), ascending."""
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    phi = euler_phi(n)
    return [p for p, _ in factorize(n).factors if phi % p == 0]


def smallest_valid_prime(n: int) -> Optional[int]:
    primes = valid_primes(n)
    return primes[0] if primes else None


def construct_witness(n: int, p: int) -> Witness:
    """Build and fully verify the degree-n witness for the prime p.

    Requires p | n and p | phi(n); the error message names whichever
    hypothesis fails.
    """
    if not is_prime(p):
        raise HypothesisError(f"{p} is not prime")
    if n < 2:
        raise HypothesisError(f"degree must be at least 2, got {n}")
    failures = []
    if n % p != 0:
        failures.append(f"{p} does not divide n={n}")
    if euler_phi(n) % p != 0:
        failures.append(f"{p} does not divide phi({n})={euler_phi(n)}")
    if failures:
        raise HypothesisError(
            "witness construction hypothesis fails: " + "; ".join(failures))
    i = unit_of_order(p, n)
    assert i is not None
    tau = standard_cycle(n)
    sigma = build_sigma(n, i)
    if tau.conjugate(sigma) != tau ** i:
        raise PermwitError("internal error: sigma does not conjugate tau to tau^i")
    g_group = PermGroup([tau, sigma])
    n1 = PermGroup([tau])
    n2 = PermGroup([sigma, tau ** p])
    w = Witness(n=n, p=p, i=i, tau=tau, sigma=sigma, G=g_group, N1=n1, N2=n2)
    report = verify_witness(w)
    if not report.passed:
        raise PermwitError(
            f"internal error: constructed witness failed verification: "
            f"{report.to_json_dict()}")
    w.verified = True
    return w


def verify_candidate(g_group: PermGroup, n1: PermGroup, n2: PermGroup,
                     expected_index: Optional[int] = None) -> VerificationReport:
    """Check the witness clauses (a)-(d) for an arbitrary proposed triple.

    (a) G transitive; (b) N1 normal, transitive, of the expected index;
    (c) N2 normal, not transitive, of the expected index; (d) the two
    quotients are isomorphic.  When `expected_index` is None both indices
    only have to agree with each other.
    """
    if n1.degree != g_group.degree or n2.degree != g_group.degree:
        raise DegreeMismatch("inconsistent degrees among groups")
    report = VerificationReport()
    report.clauses["a"] = Clause(
        g_group.is_transitive(),
        f"G transitive on {g_group.degree} points")

    order_g = g_group.order()

    def subgroup_clause(sub: PermGroup, name: str, want_transitive: bool) -> Clause:
        try:
            normal = is_normal(sub, g_group)
        except PermwitError as exc:
            return Clause(False, f"{name}: {exc}")
        if not normal:
            return Clause(False, f"{name} is not normal in G")
        transitive = sub.is_transitive()
        if transitive != want_transitive:
            return Clause(False, f"{name} is {'' if transitive else 'not '}transitive, "
                                 f"expected the opposite")
        index = order_g // sub.order()
        if expected_index is not None and index != expected_index:
            return Clause(False, f"[G:{name}] = {index}, expected {expected_index}")
        return Clause(True, f"{name} normal, "
                            f"{'transitive' if transitive else 'not transitive'}, "
                            f"index {index}")

    report.clauses["b"] = subgroup_clause(n1, "N1", want_transitive=True)
    report.clauses["c"] = subgroup_clause(n2, "N2", want_transitive=False)

    if expected_index is None:
        idx1 = order_g // n1.order()
        idx2 = order_g // n2.order()
        if idx1 != idx2 and report.clauses["b"].ok and report.clauses["c"].ok:
            report.clauses["b"] = Clause(
                False, f"indices differ: [G:N1]={idx1}, [G:N2]={idx2}")

    if report.clauses["b"].ok and report.clauses["c"].ok:
        t1 = quotient(g_group, n1)
        t2 = quotient(g_group, n2)
        mapping = find_isomorphism(t1, t2)
        report.clauses["d"] = Clause(
            mapping is not None,
            f"G/N1 and G/N2 of order {t1.order} "
            f"{'isomorphic' if mapping is not None else 'NOT isomorphic'}")
    else:
        report.clauses["d"] = Clause(False, "not evaluated: clause (b) or (c) failed")
    return report


def verify_witness(w: Witness) -> VerificationReport:
    """Clauses (a)-(d) plus the constructed-witness certificate (e).

    Clause (e) re-proves non-transitivity independently of the orbit
    computation: |N2| = n and some non-identity element of N2 (sigma)
    fixes a point, so N2 cannot act transitively on n points.
    """
    report = verify_candidate(w.G, w.N1, w.N2, expected_index=w.p)
    order_n2 = w.N2.order()
    if order_n2 != w.n:
        report.clauses["e"] = Clause(False, f"|N2| = {order_n2}, expected n = {w.n}")
        return report
    if w.sigma.is_identity():
        report.clauses["e"] = Clause(False, "sigma is the identity")
        return report
    if not w.N2.contains(w.sigma):
        report.clauses["e"] = Clause(False, "sigma is not an element of N2")
        return report
    fixed = w.sigma.fixed_points()
    report.clauses["e"] = Clause(
        bool(fixed),
        f"|N2| = n = {w.n} and sigma fixes point(s) {fixed[:3]}"
        if fixed else "sigma has no fixed point")
    return report
