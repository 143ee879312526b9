"""Z2 linear algebra on Python ints used as bitsets.

Bit i of an int is the coefficient of the i-th basis vector.  Pivots are
highest set bits, so reduction is a loop of XORs.
"""

from __future__ import annotations

from typing import Iterable


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of Z2^N."""

    __slots__ = ("rows", "tags")

    def __init__(self):
        self.rows: dict[int, int] = {}
        self.tags: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        rows = self.rows
        while v:
            top = v.bit_length() - 1
            r = rows.get(top)
            if r is None:
                return v
            v ^= r
        return 0

    def reduce_tracked(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Reduce v and return (remainder, tag), where tag XORs the tags of the rows used."""
        rows, tags = self.rows, self.tags
        while v:
            top = v.bit_length() - 1
            r = rows.get(top)
            if r is None:
                break
            v ^= r
            tag ^= tags[top]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert v; returns False if it was already in the span."""
        v, tag = self.reduce_tracked(v, tag)
        if not v:
            return False
        top = v.bit_length() - 1
        self.rows[top] = v
        self.tags[top] = tag
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[int]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def in_span(v: int, vectors: Iterable[int]) -> bool:
    basis = EchelonBasis()
    for w in vectors:
        basis.add(w)
    return basis.contains(v)


def bits(v: int) -> list[int]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def popcount(v: int) -> int:
    return bin(v).count("1")
