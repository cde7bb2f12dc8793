import pytest

from permwit.errors import DegreeMismatch, HypothesisError
from permwit.group import PermGroup
from permwit.numthy import euler_phi, is_prime
from permwit.perm import Permutation, parse_cycles
from permwit.witness import (
    Witness,
    build_sigma,
    construct_witness,
    smallest_valid_prime,
    standard_cycle,
    valid_primes,
    verify_candidate,
    verify_witness,
)


class TestBuildSigma:
    def test_degree_six_unit_five(self):
        assert build_sigma(6, 5) == parse_cycles("(2 6)(3 5)", 6)

    def test_unit_one_gives_identity(self):
        for n in (2, 5, 12):
            assert build_sigma(n, 1).is_identity()

    def test_degree_nine_unit_four(self):
        assert build_sigma(9, 4) == parse_cycles("(2 5 8)(3 9 6)", 9)

    def test_fixes_point_one_and_conjugates_cycle(self):
        import math
        for n in range(2, 40):
            for i in range(1, n):
                if math.gcd(i, n) != 1:
                    continue
                sigma = build_sigma(n, i)
                assert sigma(1) == 1
                assert standard_cycle(n).conjugate(sigma) == standard_cycle(n) ** i

    def test_non_unit_rejected(self):
        with pytest.raises(HypothesisError):
            build_sigma(6, 3)


class TestConstructWitness:
    def test_degree_six(self):
        w = construct_witness(6, 2)
        assert (w.G.order(), w.N1.order(), w.N2.order()) == (12, 6, 6)
        assert w.N2.orbits() == [(1, 3, 5), (2, 4, 6)]
        assert w.verified

    def test_degree_nine(self):
        w = construct_witness(9, 3)
        assert w.G.order() == 27
        assert w.N1.order() == w.N2.order() == 9
        assert w.N2.orbits() == [(1, 4, 7), (2, 5, 8), (3, 6, 9)]

    def test_degree_twentyone(self):
        w = construct_witness(21, 3)
        assert verify_witness(w).passed
        assert [len(o) for o in w.N2.orbits()] == [7, 7, 7]

    def test_degree_fifteen_rejected(self):
        with pytest.raises(HypothesisError, match=r"phi\(15\)"):
            construct_witness(15, 3)

    def test_error_names_failing_hypothesis(self):
        with pytest.raises(HypothesisError, match="does not divide n=10"):
            construct_witness(10, 3)
        with pytest.raises(HypothesisError, match="not prime"):
            construct_witness(12, 4)

    def test_degree_35_has_no_witness_for_either_prime(self):
        for p in (5, 7):
            with pytest.raises(HypothesisError):
                construct_witness(35, p)


class TestVerifyWitness:
    def test_all_clauses_pass_when_constructed(self):
        report = verify_witness(construct_witness(6, 2))
        assert report.passed
        assert set(report.clauses) == set("abcde")

    def test_replacing_n2_by_n1_fails_clause_c(self):
        w = construct_witness(6, 2)
        fake = Witness(n=w.n, p=w.p, i=w.i, tau=w.tau, sigma=w.sigma,
                       G=w.G, N1=w.N1, N2=w.N1)
        report = verify_witness(fake)
        assert not report.passed
        assert not report.clauses["c"].ok
        assert report.clauses["a"].ok and report.clauses["b"].ok

    def test_independent_nontransitivity_certificate(self):
        w = construct_witness(21, 3)
        report = verify_witness(w)
        assert report.clauses["e"].ok
        assert w.N2.order() == 21
        assert not w.sigma.is_identity()
        assert w.sigma.fixed_points()[0] == 1

    def test_inconsistent_degrees_error(self):
        w = construct_witness(6, 2)
        with pytest.raises(DegreeMismatch):
            verify_candidate(w.G, w.N1, PermGroup.trivial(5))


class TestVerifyCandidate:
    def test_arbitrary_triple_without_expected_index(self):
        w = construct_witness(10, 2)
        report = verify_candidate(w.G, w.N1, w.N2)
        assert report.passed

    def test_quotients_isomorphic_clause(self):
        w = construct_witness(8, 2)
        report = verify_candidate(w.G, w.N1, w.N2, expected_index=2)
        assert report.clauses["d"].ok


class TestHypothesisSweep:
    def test_every_valid_pair_up_to_forty(self):
        pairs = [(n, p) for n in range(2, 41) for p in valid_primes(n)]
        assert (6, 2) in pairs and (9, 3) in pairs and (21, 3) in pairs
        assert all(n % p == 0 and euler_phi(n) % p == 0 for n, p in pairs)
        for n, p in pairs:
            w = construct_witness(n, p)
            report = verify_witness(w)
            assert report.passed, (n, p, report.to_json_dict())
            # index and size invariants
            assert w.G.order() == n * p
            assert w.N1.order() == w.N2.order() == n
            assert not w.sigma.is_identity()
            sizes = {len(o) for o in w.N2.orbits()}
            assert len(sizes) == 1
            (size,) = sizes
            assert n % size == 0 and size < n

    def test_smallest_valid_prime(self):
        assert smallest_valid_prime(6) == 2
        assert smallest_valid_prime(9) == 3
        assert smallest_valid_prime(21) == 3
        assert smallest_valid_prime(15) is None
        assert smallest_valid_prime(7) is None


class TestSerialization:
    def test_json_fields(self):
        w = construct_witness(9, 3)
        d = w.to_json_dict(verify_witness(w))
        assert d["n"] == 9 and d["p"] == 3 and d["i"] == 4
        assert d["tau"] == "(1 2 3 4 5 6 7 8 9)"
        assert d["sigma"] == "(2 5 8)(3 9 6)"
        assert d["N2"] == ["(2 5 8)(3 9 6)", "(1 4 7)(2 5 8)(3 6 9)"]
        assert d["report"]["passed"] is True
