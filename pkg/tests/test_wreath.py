from random import Random

import pytest

from permwit.errors import BlockStructureError, HypothesisError
from permwit.group import PermGroup, is_normal
from permwit.perm import Permutation, parse_cycles, random_permutation
from permwit.witness import construct_witness
from permwit.wreath import (
    BlockSystem,
    Embedding,
    WreathElement,
    block_restriction,
    blocks_from_orbits,
    check_index2,
    decompose_index,
    embed,
    project_base,
    project_top,
    wreath_multiply,
)

from samplers import random_block_diagonal_pair


def random_wreath(p, q, rng):
    return WreathElement(
        top=random_permutation(p, rng),
        base=tuple(random_permutation(q, rng) for _ in range(p)))


class TestWreathElement:
    def test_identity(self):
        w = WreathElement.identity(3, 5)
        assert w.as_permutation().is_identity()
        for _ in range(3):
            rng = Random(1)
            v = random_wreath(3, 5, rng)
            assert wreath_multiply(w, v).as_permutation() == v.as_permutation()

    def test_action_is_bijective(self):
        rng = Random(2)
        for _ in range(100):
            p, q = rng.choice([(2, 3), (3, 5), (2, 7)])
            w = random_wreath(p, q, rng)
            images = {w.apply(i, j) for i in range(1, p + 1)
                      for j in range(1, q + 1)}
            assert len(images) == p * q

    def test_top_transposition_squared(self):
        w = WreathElement(top=parse_cycles("(1 2)", 2),
                          base=(Permutation.identity(4),) * 2)
        assert wreath_multiply(w, w).as_permutation().is_identity()

    def test_shape_mismatch(self):
        rng = Random(3)
        with pytest.raises(BlockStructureError):
            wreath_multiply(random_wreath(2, 3, rng), random_wreath(3, 2, rng))

    def test_base_length_must_match_top(self):
        with pytest.raises(BlockStructureError):
            WreathElement(top=Permutation.identity(3),
                          base=(Permutation.identity(2),) * 2)

    def test_round_trip_through_permutation(self):
        rng = Random(4)
        for _ in range(50):
            w = random_wreath(3, 5, rng)
            again = WreathElement.from_permutation(w.as_permutation(), 3, 5)
            assert again.top == w.top and again.base == w.base

    def test_from_permutation_rejects_block_crossers(self):
        with pytest.raises(BlockStructureError):
            WreathElement.from_permutation(parse_cycles("(1 4)", 6), 2, 3)
        with pytest.raises(BlockStructureError):
            WreathElement.from_permutation(parse_cycles("(1 2 3 4 5)", 6), 2, 3)

    def test_text_form(self):
        w = WreathElement(top=parse_cycles("(1 2)", 2),
                          base=(parse_cycles("(1 2 3)", 3),
                                Permutation.identity(3)))
        assert w.text() == "top=(1 2); base=[(1 2 3), ()]"


class TestMultiplication:
    def test_matches_pair_action_pointwise(self):
        rng = Random(5)
        for _ in range(200):
            p, q = rng.choice([(2, 3), (3, 5), (2, 5)])
            a, b = random_wreath(p, q, rng), random_wreath(p, q, rng)
            c = wreath_multiply(a, b)
            for i in range(1, p + 1):
                for j in range(1, q + 1):
                    assert c.apply(i, j) == a.apply(*b.apply(i, j))

    def test_associative(self):
        rng = Random(6)
        for _ in range(100):
            a, b, c = (random_wreath(3, 4, rng) for _ in range(3))
            left = wreath_multiply(wreath_multiply(a, b), c)
            right = wreath_multiply(a, wreath_multiply(b, c))
            assert left.as_permutation() == right.as_permutation()

    def test_explicit_component_rule(self):
        rng = Random(7)
        a, b = random_wreath(3, 5, rng), random_wreath(3, 5, rng)
        c = wreath_multiply(a, b)
        assert c.top == a.top * b.top
        for i in range(1, 4):
            assert c.base[i - 1] == a.base[b.top(i) - 1] * b.base[i - 1]


class TestProjections:
    def test_top_is_homomorphism_everywhere(self):
        rng = Random(8)
        for _ in range(100):
            a, b = random_wreath(2, 3, rng), random_wreath(2, 3, rng)
            assert project_top(wreath_multiply(a, b)) == \
                project_top(a) * project_top(b)

    def test_base_identity(self):
        w = WreathElement.identity(3, 4)
        assert project_base(w, 2).is_identity()
        with pytest.raises(ValueError):
            project_base(w, 4)

    def test_base_multiplicative_on_top_kernel(self):
        rng = Random(9)
        for _ in range(100):
            a, b = (WreathElement(
                top=Permutation.identity(2),
                base=(random_permutation(3, rng), random_permutation(3, rng)))
                for _ in range(2))
            ab = wreath_multiply(a, b)
            for i in (1, 2):
                assert project_base(ab, i) == \
                    project_base(a, i) * project_base(b, i)

    def test_base_not_multiplicative_in_general(self):
        # exhibit a pair outside the top kernel breaking multiplicativity
        rng = Random(10)
        found = False
        for _ in range(200):
            a, b = random_wreath(2, 3, rng), random_wreath(2, 3, rng)
            ab = wreath_multiply(a, b)
            if any(project_base(ab, i) != project_base(a, i) * project_base(b, i)
                   for i in (1, 2)):
                found = True
                break
        assert found


class TestBlockSystems:
    def test_degree_21_witness_blocks(self):
        w = construct_witness(21, 3)
        blocks = blocks_from_orbits(w.N2)
        assert blocks.count == 3 and blocks.size == 7

    def test_degree_6_witness_blocks(self):
        w = construct_witness(6, 2)
        blocks = blocks_from_orbits(w.N2)
        assert blocks.blocks == ((1, 3, 5), (2, 4, 6))

    def test_transitive_group_rejected(self):
        with pytest.raises(HypothesisError, match="transitive"):
            blocks_from_orbits(PermGroup.from_cycles(6, "(1 2 3 4 5 6)"))

    def test_unequal_orbits_rejected(self):
        with pytest.raises(HypothesisError, match="not all equal"):
            blocks_from_orbits(PermGroup.from_cycles(5, "(1 2 3)"))

    def test_relabeling_standardizes_blocks(self):
        w = construct_witness(6, 2)
        blocks = blocks_from_orbits(w.N2)
        rho = blocks.relabeling()
        for idx, block in enumerate(blocks.blocks):
            assert sorted(rho(x) for x in block) == \
                list(range(3 * idx + 1, 3 * idx + 4))


class TestEmbedding:
    def embed_witness(self, n, p):
        w = construct_witness(n, p)
        return w, embed(w.G, w.N1, w.N2)

    def test_degree_21_conditions(self):
        w, emb = self.embed_witness(21, 3)
        assert (emb.p, emb.q) == (3, 7)
        assert emb.conditions.all_hold
        for img in emb.n2_images:
            assert project_top(img).is_identity()
        assert emb.conditions.n2_projections_transitive == (True, True, True)

    def test_degree_6_n1_transitive_on_pairs(self):
        w, emb = self.embed_witness(6, 2)
        assert emb.conditions.n1_transitive_on_pairs

    def test_unequal_orders_rejected(self):
        w = construct_witness(21, 3)
        # <tau^3> is normal with three orbits of size 7, but has order 7 != 21
        small = PermGroup([w.tau ** 3], degree=21)
        with pytest.raises(HypothesisError, match="differ"):
            embed(w.G, w.N1, small)

    def test_composite_block_count_rejected(self):
        w = construct_witness(8, 2)  # blocks of size 4: not prime
        with pytest.raises(HypothesisError, match="prime"):
            embed(w.G, w.N1, w.N2)

    def test_embedding_is_homomorphism_on_random_words(self):
        rng = Random(11)
        for n, p in ((6, 2), (21, 3)):
            w, emb = self.embed_witness(n, p)
            for _ in range(200):
                g = w.G.random_element(rng)
                h = w.G.random_element(rng)
                lhs = emb.apply(g * h).as_permutation()
                rhs = (emb.apply(g).as_permutation()
                       * emb.apply(h).as_permutation())
                assert lhs == rhs

    def test_embedding_is_injective(self):
        for n, p in ((6, 2), (21, 3)):
            w, emb = self.embed_witness(n, p)
            image = PermGroup(
                [img.as_permutation() for _, img in emb.image_map],
                degree=n)
            assert image.order() == w.G.order()


class TestIndexDecomposition:
    def test_b_equals_a(self):
        a = PermGroup.from_cycles(6, "(1 2 3)", "(4 5 6)")
        d = decompose_index(a, a, 3)
        assert all(f.index == 1 for f in d.factors)
        assert d.total_index == 1

    def test_c3_squared_over_diagonal(self):
        a = PermGroup.from_cycles(6, "(1 2 3)", "(4 5 6)")
        b = PermGroup.from_cycles(6, "(1 2 3)(4 5 6)")
        d = decompose_index(a, b, 3)
        assert sorted(f.index for f in d.factors) == [1, 3]
        assert d.product == d.total_index == 3

    def test_s3_squared_over_a3_squared(self):
        a = PermGroup.from_cycles(6, "(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)")
        b = PermGroup.from_cycles(6, "(1 2 3)", "(4 5 6)")
        d = decompose_index(a, b, 3)
        assert d.product == d.total_index == 4
        assert [f.index for f in d.factors] == [2, 2]

    def test_block_crossing_a_rejected(self):
        a = PermGroup.from_cycles(6, "(1 4)(2 5)(3 6)")
        with pytest.raises(BlockStructureError):
            decompose_index(a, PermGroup.trivial(6), 3)

    def test_non_normal_b_rejected(self):
        a5sq = PermGroup.from_cycles(10, "(1 2 3)", "(3 4 5)",
                                     "(6 7 8)", "(8 9 10)")
        diagonal = PermGroup.from_cycles(10, "(1 2 3)(6 7 8)", "(3 4 5)(8 9 10)")
        with pytest.raises(HypothesisError, match="not normal"):
            decompose_index(a5sq, diagonal, 5)

    def test_factors_are_normal_in_projections(self):
        rng = Random(12)
        for _ in range(50):
            a, b, q = random_block_diagonal_pair(rng)
            d = decompose_index(a, b, q)
            assert d.product == d.total_index
            for factor in d.factors:
                proj = PermGroup(
                    [block_restriction(g, factor.block, q)
                     for g in a.generators], degree=q)
                sub = PermGroup(list(factor.subgroup_generators) or [],
                                degree=q)
                assert is_normal(sub, proj)

    def test_product_identity_on_random_pairs(self):
        seed = 7411
        print(f"index-decomposition property seed: {seed}")
        rng = Random(seed)
        for _ in range(200):
            a, b, q = random_block_diagonal_pair(rng)
            d = decompose_index(a, b, q)
            assert d.product == d.total_index == a.order() // b.order()


class TestIndex2:
    def test_vacuous_when_p_does_not_divide(self):
        a = PermGroup.from_cycles(10, "(1 2 3 4 5)(6 7 8 9 10)")
        r = check_index2(a, PermGroup.trivial(10), 3, 5)
        assert r.index == 5 and r.vacuous and r.passed

    def test_a5_squared_over_one_factor(self):
        a = PermGroup.from_cycles(10, "(1 2 3)", "(3 4 5)", "(6 7 8)", "(8 9 10)")
        b = PermGroup.from_cycles(10, "(1 2 3)", "(3 4 5)")
        r = check_index2(a, b, 3, 5)
        assert r.index == 60 and r.p_divides and r.q_divides and r.passed

    def test_hypothesis_p_divides_q_minus_1_rejected(self):
        a = PermGroup.from_cycles(10, "(1 2 3 4 5)(6 7 8 9 10)")
        with pytest.raises(HypothesisError):
            check_index2(a, PermGroup.trivial(10), 2, 5)

    def test_intransitive_projection_rejected(self):
        a = PermGroup.from_cycles(10, "(1 2 3)", "(6 7 8 9 10)")
        with pytest.raises(HypothesisError, match="not transitive"):
            check_index2(a, PermGroup.trivial(10), 3, 5)

    def test_no_violation_on_random_normal_pairs(self):
        # q = 5, p = 3 over two or three blocks; every normal pair must pass
        seed = 5309
        print(f"index2 random sweep seed: {seed}")
        rng = Random(seed)
        checked = 0
        while checked < 300:
            a, b, q = random_block_diagonal_pair(rng, max_blocks=3,
                                                 max_block_size=5)
            if q != 5:
                continue
            nblocks = a.degree // q
            if not all(
                    PermGroup([block_restriction(g, i, q) for g in a.generators],
                              degree=q).is_transitive()
                    for i in range(1, nblocks + 1)):
                continue
            r = check_index2(a, b, 3, 5)
            assert r.passed, (a.generators, b.generators)
            checked += 1
