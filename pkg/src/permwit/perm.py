"""Permutations of {1..n} with an explicit degree.

Points are 1-based in every public interface; the internal image table is
a 0-based `bytes` object (which caps the degree at 256 — far beyond the
desk-scale degrees this package targets).  The composition convention is
the left action fixed once for the whole package:

    (a * b)(x) = a(b(x))

Values are immutable and hashable, safe to share between threads.
"""

from __future__ import annotations

import math
from random import Random
from typing import Iterable, List, Sequence, Set, Tuple

from permwit import kernels
from permwit.errors import CycleParseError, DegreeMismatch

MAX_DEGREE = 256


class Permutation:
    """A bijection of {1..n}, stored as an image table."""

    __slots__ = ("_table",)

    def __init__(self, images: Iterable[int]):
        """Build from the 1-based image table: images[k-1] is the image of point k."""
        seq = list(images)
        n = len(seq)
        if not 1 <= n <= MAX_DEGREE:
            raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {n}")
        table = bytearray(n)
        seen = [False] * n
        for k, v in enumerate(seq):
            if not 1 <= v <= n:
                raise ValueError(f"image {v} of point {k + 1} out of range 1..{n}")
            if seen[v - 1]:
                raise ValueError(f"image table is not a bijection: {v} repeats")
            seen[v - 1] = True
            table[k] = v - 1
        self._table = bytes(table)

    @classmethod
    def _from_table(cls, table: bytes) -> "Permutation":
        """Wrap a trusted 0-based image table without validation."""
        p = object.__new__(cls)
        p._table = table
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
        return cls._from_table(bytes(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self._table)

    @property
    def table(self) -> bytes:
        """The raw 0-based image table (kernel representation)."""
        return self._table

    @property
    def images(self) -> Tuple[int, ...]:
        """The 1-based image table."""
        return tuple(v + 1 for v in self._table)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} out of range 1..{self.degree}")
        return self._table[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        return Permutation._from_table(kernels.compose(self._table, other._table))

    def inverse(self) -> "Permutation":
        return Permutation._from_table(kernels.inverse(self._table))

    __invert__ = inverse

    def __pow__(self, e: int) -> "Permutation":
        base = self._table if e >= 0 else kernels.inverse(self._table)
        e = abs(e)
        result = bytes(range(self.degree))
        while e:
            if e & 1:
                result = kernels.compose(base, result)
            base = kernels.compose(base, base)
            e >>= 1
        return Permutation._from_table(result)

    def conjugate(self, h: "Permutation") -> "Permutation":
        """Conjugate of self by h: returns h * self * h^-1."""
        if h.degree != self.degree:
            raise DegreeMismatch(f"degree mismatch: {self.degree} vs {h.degree}")
        t = kernels.compose(h._table, kernels.compose(self._table, kernels.inverse(h._table)))
        return Permutation._from_table(t)

    def is_identity(self) -> bool:
        return self._table == bytes(range(self.degree))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles as 1-based tuples, least point first, sorted by least point."""
        table = self._table
        seen = [False] * len(table)
        out = []
        for start in range(len(table)):
            if seen[start] or table[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            x = table[start]
            while x != start:
                seen[x] = True
                cycle.append(x)
                x = table[x]
            out.append(tuple(p + 1 for p in cycle))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)

    def cycle_type(self) -> Tuple[int, ...]:
        """Multiset of cycle lengths, fixed points included, ascending."""
        lengths = [len(c) for c in self.cycles()]
        lengths.extend([1] * (self.degree - sum(lengths)))
        return tuple(sorted(lengths))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(k + 1 for k, v in enumerate(self._table) if v == k)

    def moved_points(self) -> Tuple[int, ...]:
        return tuple(k + 1 for k, v in enumerate(self._table) if v != k)

    def extended_to(self, degree: int) -> "Permutation":
        """Pad with fixed points up to a larger degree."""
        if degree < self.degree:
            raise ValueError(f"cannot shrink degree {self.degree} to {degree}")
        if degree > MAX_DEGREE:
            raise ValueError(f"degree must be at most {MAX_DEGREE}")
        return Permutation._from_table(self._table + bytes(range(self.degree, degree)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._table == other._table

    def __hash__(self) -> int:
        return hash(self._table)

    def __lt__(self, other: "Permutation") -> bool:
        return (self.degree, self._table) < (other.degree, other._table)

    def __str__(self) -> str:
        return self.cycle_string()

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({self.cycle_string()!r}, degree={self.degree})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Left-action product: compose(a, b)(x) = a(b(x))."""
    return a * b


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """h * g * h^-1."""
    return g.conjugate(h)


def power(g: Permutation, e: int) -> Permutation:
    """g composed with itself e times; negative e uses the inverse."""
    return g ** e


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation like "(1 2 3)(4 5)"; "()" is the identity.

    Whitespace-insensitive.  Raises CycleParseError (with the offending
    position) on repeated points, out-of-range labels, or malformed
    parentheses.
    """
    if not 1 <= degree <= MAX_DEGREE:
        raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
    table = list(range(degree))
    seen_points: Set[int] = set()
    i = 0
    n = len(text)
    saw_cycle = False
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        if text[i] != "(":
            raise CycleParseError(f"expected '(' but found {text[i]!r}", i)
        i += 1
        cycle: List[int] = []
        while True:
            while i < n and text[i].isspace():
                i += 1
            if i >= n:
                raise CycleParseError("unclosed cycle", i)
            if text[i] == ")":
                i += 1
                break
            if not text[i].isdigit():
                raise CycleParseError(
                    f"expected point label or ')' but found {text[i]!r}", i
                )
            start = i
            while i < n and text[i].isdigit():
                i += 1
            label = int(text[start:i])
            if not 1 <= label <= degree:
                raise CycleParseError(
                    f"point {label} out of range 1..{degree}", start
                )
            if label in seen_points:
                raise CycleParseError(f"repeated point {label}", start)
            seen_points.add(label)
            cycle.append(label)
        saw_cycle = True
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            table[a - 1] = b - 1
    if not saw_cycle:
        raise CycleParseError("empty input; the identity is written '()'", 0)
    return Permutation._from_table(bytes(table))


def print_cycles(g: Permutation) -> str:
    """Canonical cycle notation; inverse of parse_cycles at the same degree."""
    return g.cycle_string()


def orbit(point: int, gens: Sequence[Permutation]) -> frozenset:
    """Smallest set of points containing `point` and closed under all gens."""
    gens = list(gens)
    degree = gens[0].degree if gens else None
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch("orbit generators must share a degree")
    if degree is not None and not 1 <= point <= degree:
        raise ValueError(f"point {point} out of range 1..{degree}")
    if point < 1:
        raise ValueError(f"point {point} out of range")
    if not gens:
        return frozenset({point})
    reached = kernels.orbit(point - 1, [g.table for g in gens])
    return frozenset(x + 1 for x in reached)


def random_permutation(degree: int, rng: Random) -> Permutation:
    """Uniform random permutation drawn from the supplied RNG."""
    values = list(range(degree))
    rng.shuffle(values)
    return Permutation._from_table(bytes(values))
