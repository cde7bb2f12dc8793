"""Wreath-structured permutations of a p x q grid, block systems, and the
embedding of a witness group into the wreath group.

A WreathElement is a top permutation of the p blocks plus one degree-q
permutation per block, acting on pairs by (i, j) -> (top(i), base[i](j));
note the base component is indexed by the *source* block.  Pairs are
identified with points of {1..pq} through (i, j) -> (i-1)q + j.

The index decomposition peels blocks from the last to the first, giving
per-block normal subgroups whose indices multiply to the total index.
Only the product is canonical; the per-block factors depend on the
peeling order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from permwit.errors import (
    BlockStructureError,
    DegreeMismatch,
    HypothesisError,
    PermwitError,
)
from permwit.group import PermGroup, is_normal
from permwit.numthy import is_prime
from permwit.perm import Permutation


@dataclass(frozen=True)
class WreathElement:
    top: Permutation
    base: Tuple[Permutation, ...]

    def __post_init__(self):
        if len(self.base) != self.top.degree:
            raise BlockStructureError(
                f"need one base permutation per block: top degree "
                f"{self.top.degree}, got {len(self.base)} base entries")
        q = self.base[0].degree
        if any(b.degree != q for b in self.base):
            raise BlockStructureError("base permutations must share a degree")

    @property
    def p(self) -> int:
        return self.top.degree

    @property
    def q(self) -> int:
        return self.base[0].degree

    @classmethod
    def identity(cls, p: int, q: int) -> "WreathElement":
        return cls(top=Permutation.identity(p),
                   base=tuple(Permutation.identity(q) for _ in range(p)))

    def apply(self, i: int, j: int) -> Tuple[int, int]:
        """Image of the pair (i, j), both 1-based."""
        return self.top(i), self.base[i - 1](j)

    def as_permutation(self) -> Permutation:
        """The same action on {1..pq} via (i, j) -> (i-1)q + j."""
        p, q = self.p, self.q
        table = bytearray(p * q)
        for i0 in range(p):
            ti = self.top.table[i0]
            bi = self.base[i0].table
            for j0 in range(q):
                table[i0 * q + j0] = ti * q + bi[j0]
        return Permutation._from_table(bytes(table))

    @classmethod
    def from_permutation(cls, g: Permutation, p: int, q: int) -> "WreathElement":
        """Decompose a degree-pq permutation that maps each standard block
        {(i-1)q+1 .. iq} onto a standard block; error otherwise."""
        if g.degree != p * q:
            raise DegreeMismatch(f"degree {g.degree} is not {p}*{q}")
        t = g.table
        top_table = bytearray(p)
        base_tables = []
        for i0 in range(p):
            ti = t[i0 * q] // q
            block = bytearray(q)
            for j0 in range(q):
                image = t[i0 * q + j0]
                if image // q != ti:
                    raise BlockStructureError(
                        f"block {i0 + 1} is not mapped onto a single block")
                block[j0] = image % q
            top_table[i0] = ti
            base_tables.append(bytes(block))
        top = Permutation(_one_based(top_table))
        return cls(top=top,
                   base=tuple(Permutation(_one_based(b)) for b in base_tables))

    def text(self) -> str:
        base = ", ".join(b.cycle_string() for b in self.base)
        return f"top={self.top.cycle_string()}; base=[{base}]"

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return wreath_multiply(self, other)

    def __repr__(self) -> str:
        return f"WreathElement({self.text()})"


def _one_based(table) -> List[int]:
    return [v + 1 for v in table]


def wreath_multiply(a: WreathElement, b: WreathElement) -> WreathElement:
    """Product whose pair action is action(a) composed after action(b).

    Under the package's left-action convention this comes out as
    top = a.top * b.top and base[i] = a.base[b.top(i)] * b.base[i].
    """
    if (a.p, a.q) != (b.p, b.q):
        raise BlockStructureError(
            f"shape mismatch: ({a.p},{a.q}) vs ({b.p},{b.q})")
    top = a.top * b.top
    base = tuple(a.base[b.top.table[i0]] * b.base[i0] for i0 in range(a.p))
    return WreathElement(top=top, base=base)


@dataclass(frozen=True)
class BlockSystem:
    degree: int
    blocks: Tuple[Tuple[int, ...], ...]  # disjoint sorted point tuples, by least point

    @property
    def count(self) -> int:
        return len(self.blocks)

    @property
    def size(self) -> int:
        return len(self.blocks[0])

    def relabeling(self) -> Permutation:
        """Permutation sending original points to the standard layout, where
        block i becomes {(i-1)q+1 .. iq} (elements kept in ascending order)."""
        table = bytearray(self.degree)
        pos = 0
        for block in self.blocks:
            for point in block:
                table[point - 1] = pos
                pos += 1
        return Permutation._from_table(bytes(table))

    def to_json_dict(self) -> dict:
        return {"degree": self.degree, "blocks": [list(b) for b in self.blocks]}


def blocks_from_orbits(n2: PermGroup) -> BlockSystem:
    """The orbit partition of a non-transitive group with equal orbit sizes.

    This is the block system any overgroup permutes; orbit sizes must all
    agree and there must be at least two orbits.
    """
    orbits = n2.orbits()
    sizes = {len(o) for o in orbits}
    if len(sizes) != 1:
        raise HypothesisError(
            f"block decomposition hypothesis fails: orbit sizes {sorted(sizes)} "
            f"are not all equal")
    if len(orbits) < 2:
        raise HypothesisError(
            "block decomposition hypothesis fails: the group is transitive "
            "(a single orbit is not a proper block system)")
    return BlockSystem(degree=n2.degree, blocks=tuple(orbits))


@dataclass
class EmbeddingConditions:
    n1_transitive_on_pairs: bool
    n2_in_top_kernel: bool
    n2_projections_transitive: Tuple[bool, ...]

    @property
    def all_hold(self) -> bool:
        return (self.n1_transitive_on_pairs and self.n2_in_top_kernel
                and all(self.n2_projections_transitive))


@dataclass
class Embedding:
    source: PermGroup
    block_system: BlockSystem
    p: int
    q: int
    relabel: Permutation
    image_map: Tuple[Tuple[Permutation, WreathElement], ...]
    n1_images: Tuple[WreathElement, ...]
    n2_images: Tuple[WreathElement, ...]
    conditions: EmbeddingConditions

    def apply(self, g: Permutation) -> WreathElement:
        """Image of an arbitrary element of the source group."""
        return WreathElement.from_permutation(
            g.conjugate(self.relabel), self.p, self.q)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "block_system": self.block_system.to_json_dict(),
            "relabeling": self.relabel.cycle_string(),
            "generator_images": [
                {"generator": g.cycle_string(), "image": w.text()}
                for g, w in self.image_map
            ],
            "conditions": {
                "n1_transitive_on_pairs": self.conditions.n1_transitive_on_pairs,
                "n2_in_top_kernel": self.conditions.n2_in_top_kernel,
                "n2_projections_transitive":
                    list(self.conditions.n2_projections_transitive),
            },
        }


def embed(g_group: PermGroup, n1: PermGroup, n2: PermGroup) -> Embedding:
    """Relabel along N2's orbits and map the witness triple into the wreath
    group of p blocks of size q.

    Requires degree pq with p < q prime, N1 transitive normal, N2 normal
    non-transitive with |N1| = |N2|.  Verifies that every generator image
    permutes the blocks, that the N1 image is transitive on the grid, that
    the N2 image has trivial top components, and that each block
    projection of the N2 image is transitive on its block.
    """
    if n1.degree != g_group.degree or n2.degree != g_group.degree:
        raise DegreeMismatch("inconsistent degrees among groups")
    blocks = blocks_from_orbits(n2)
    p = blocks.count
    q = blocks.size
    if not (is_prime(p) and is_prime(q) and p < q):
        raise HypothesisError(
            f"embedding needs p < q prime; N2 gives p={p} blocks of size q={q}")
    if not is_normal(n1, g_group):
        raise HypothesisError("N1 is not a transitive normal subgroup of G")
    if not n1.is_transitive():
        raise HypothesisError("N1 is not transitive")
    if not is_normal(n2, g_group):
        raise HypothesisError("N2 is not a normal subgroup of G")
    if n1.order() != n2.order():
        raise HypothesisError(
            f"|N1| = {n1.order()} and |N2| = {n2.order()} differ")

    relabel = blocks.relabeling()

    def image_of(g: Permutation, who: str) -> WreathElement:
        relabeled = g.conjugate(relabel)
        try:
            return WreathElement.from_permutation(relabeled, p, q)
        except BlockStructureError as exc:
            raise BlockStructureError(
                f"{who} generator {g.cycle_string()} does not preserve the "
                f"block system: {exc}") from exc

    image_map = tuple((g, image_of(g, "G")) for g in g_group.generators)
    n1_images = tuple(image_of(g, "N1") for g in n1.generators)
    n2_images = tuple(image_of(g, "N2") for g in n2.generators)

    relabeled_n1 = PermGroup([g.conjugate(relabel) for g in n1.generators],
                             degree=p * q)
    cond_i = relabeled_n1.is_transitive()
    cond_ii = all(w.top.is_identity() for w in n2_images)
    proj_transitive = []
    for i0 in range(p):
        projections = [w.base[i0] for w in n2_images]
        block_group = PermGroup(projections, degree=q)
        proj_transitive.append(block_group.is_transitive())
    conditions = EmbeddingConditions(
        n1_transitive_on_pairs=cond_i,
        n2_in_top_kernel=cond_ii,
        n2_projections_transitive=tuple(proj_transitive),
    )
    if not cond_i:
        raise HypothesisError(
            "embedding condition (i) fails: the N1 image is not transitive "
            "on the grid")
    if not cond_ii:
        raise HypothesisError(
            "embedding condition (ii) fails: the N2 image has a nontrivial "
            "top component")
    if not all(proj_transitive):
        bad = [i + 1 for i, ok in enumerate(proj_transitive) if not ok]
        raise HypothesisError(
            f"embedding condition (iii) fails: N2 projection(s) {bad} are "
            f"not transitive on their blocks")
    return Embedding(source=g_group, block_system=blocks, p=p, q=q,
                     relabel=relabel, image_map=image_map,
                     n1_images=n1_images, n2_images=n2_images,
                     conditions=conditions)


def project_top(w: WreathElement) -> Permutation:
    """The block permutation; a homomorphism on the whole wreath group."""
    return w.top


def project_base(w: WreathElement, i: int) -> Permutation:
    """The i-th base component (1-based).

    Only multiplicative when both factors have trivial top components;
    on the full wreath group it is not a homomorphism.
    """
    if not 1 <= i <= w.p:
        raise ValueError(f"block index {i} out of range 1..{w.p}")
    return w.base[i - 1]


def _block_points(i: int, q: int) -> List[int]:
    """1-based points of standard block i."""
    return list(range((i - 1) * q + 1, i * q + 1))


def block_restriction(g: Permutation, i: int, q: int) -> Permutation:
    """Restriction of a block-fixing degree-pq permutation to block i."""
    t = g.table
    lo = (i - 1) * q
    block = bytearray(q)
    for j0 in range(q):
        image = t[lo + j0]
        if not lo <= image < lo + q:
            raise BlockStructureError(
                f"permutation moves point {lo + j0 + 1} out of block {i}")
        block[j0] = image - lo
    return Permutation._from_table(bytes(block))


def _check_block_diagonal(group: PermGroup, q: int) -> int:
    if group.degree % q != 0:
        raise BlockStructureError(
            f"degree {group.degree} is not a multiple of the block size {q}")
    nblocks = group.degree // q
    for g in group.generators:
        for i in range(1, nblocks + 1):
            block_restriction(g, i, q)  # raises if g crosses blocks
    return nblocks


def _projection_group(group: PermGroup, i: int, q: int) -> PermGroup:
    return PermGroup([block_restriction(g, i, q) for g in group.generators],
                     degree=q)


@dataclass
class IndexFactor:
    block: int
    subgroup_generators: Tuple[Permutation, ...]  # generators of M_i <= proj_i(A)
    index: int  # [proj_i(A) : M_i]


@dataclass
class IndexDecomposition:
    factors: Tuple[IndexFactor, ...]
    total_index: int

    @property
    def product(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.index
        return out


def decompose_index(a_group: PermGroup, b_group: PermGroup, q: int) -> IndexDecomposition:
    """Split [A:B] into per-block indices for block-diagonal A and normal B.

    A must fix every size-q block setwise; B must be normal in A.  The
    last block is peeled first: its factor is [proj(A) : proj(B)], then
    the recursion continues on the pointwise stabilizers of that block.
    The factor product always equals [A:B].
    """
    nblocks = _check_block_diagonal(a_group, q)
    _check_block_diagonal(b_group, q)
    if not is_normal(b_group, a_group):
        raise HypothesisError("B is not normal in A")
    total = a_group.order() // b_group.order()

    factors: List[IndexFactor] = []
    cur_a, cur_b = a_group, b_group
    for i in range(nblocks, 1, -1):
        proj_a = _projection_group(cur_a, i, q)
        proj_b = _projection_group(cur_b, i, q)
        factors.append(IndexFactor(
            block=i,
            subgroup_generators=proj_b.generators,
            index=proj_a.order() // proj_b.order()))
        points = _block_points(i, q)
        cur_a = cur_a.pointwise_stabilizer(points)
        cur_b = cur_b.pointwise_stabilizer(points)
    proj_a = _projection_group(cur_a, 1, q)
    proj_b = _projection_group(cur_b, 1, q)
    factors.append(IndexFactor(
        block=1,
        subgroup_generators=proj_b.generators,
        index=proj_a.order() // proj_b.order()))

    decomposition = IndexDecomposition(factors=tuple(factors), total_index=total)
    if decomposition.product != total:
        raise PermwitError(
            f"index decomposition product {decomposition.product} does not "
            f"match [A:B] = {total}")
    return decomposition


@dataclass
class Index2Report:
    p: int
    q: int
    index: int
    p_divides: bool
    q_divides: bool
    decomposition: IndexDecomposition

    @property
    def vacuous(self) -> bool:
        return not self.p_divides

    @property
    def passed(self) -> bool:
        return (not self.p_divides) or self.q_divides

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "index": self.index,
            "p_divides_index": self.p_divides,
            "q_divides_index": self.q_divides,
            "vacuous": self.vacuous,
            "passed": self.passed,
            "block_indices": [f.index for f in self.decomposition.factors],
        }


def check_index2(a_group: PermGroup, b_group: PermGroup, p: int, q: int) -> Index2Report:
    """For block-diagonal A with transitive block projections and normal B:
    whenever p divides [A:B], q must divide it too (p < q primes, p not
    dividing q-1)."""
    if not (is_prime(p) and is_prime(q) and p < q):
        raise HypothesisError(f"need primes p < q, got p={p}, q={q}")
    if (q - 1) % p == 0:
        raise HypothesisError(f"{p} divides {q}-1; the divisibility claim "
                              f"does not apply")
    nblocks = _check_block_diagonal(a_group, q)
    for i in range(1, nblocks + 1):
        if not _projection_group(a_group, i, q).is_transitive():
            raise HypothesisError(
                f"projection of A to block {i} is not transitive")
    decomposition = decompose_index(a_group, b_group, q)
    index = decomposition.total_index
    return Index2Report(
        p=p, q=q, index=index,
        p_divides=index % p == 0,
        q_divides=index % q == 0,
        decomposition=decomposition)
