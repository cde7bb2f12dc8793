"""Pure-Python kernels for the hot inner loops.

Permutations are raw image tables: `bytes` of length `degree`, where
table[x] is the 0-based image of 0-based point x.  Composition uses
`bytes.translate`, which runs at C speed; the translation table must be
256 bytes long, so generator tables are padded once per closure loop.

The compiled lane (`permwit._kernels_c`) implements the same functions
with identical iteration order, so both lanes produce byte-identical
results.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Set

_PAD = bytes(256)


def _padded(table: bytes) -> bytes:
    return table + _PAD[len(table):]


def compose(a: bytes, b: bytes) -> bytes:
    """Table of the left-action product: result[x] = a[b[x]]."""
    if len(a) != len(b):
        raise ValueError("degree mismatch")
    return b.translate(_padded(a))


def inverse(a: bytes) -> bytes:
    out = bytearray(len(a))
    for x, y in enumerate(a):
        out[y] = x
    return bytes(out)


def orbit(start: int, gens: Sequence[bytes]) -> Set[int]:
    """Closure of a single 0-based point under the generator tables."""
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def close_elements(degree: int, gens: Iterable[bytes], limit: int) -> Optional[List[bytes]]:
    """All elements of the group generated by `gens`, in BFS order.

    Starts from the identity and left-multiplies by generators in order.
    Returns None as soon as more than `limit` elements appear.
    """
    padded = [_padded(g) for g in gens]
    ident = bytes(range(degree))
    seen = {ident}
    order = [ident]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for g in padded:
            y = x.translate(g)
            if y not in seen:
                if len(order) >= limit:
                    return None
                seen.add(y)
                order.append(y)
    return order


def conjugacy_orbit(x: bytes, gens: Sequence[bytes], invs: Sequence[bytes]) -> Set[bytes]:
    """Closure of x under conjugation by the given generator/inverse pairs."""
    padded = [(_padded(g), inv) for g, inv in zip(gens, invs)]
    seen = {x}
    stack = [x]
    while stack:
        e = stack.pop()
        for g, inv in padded:
            y = inv.translate(_padded(e.translate(g)))
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen
