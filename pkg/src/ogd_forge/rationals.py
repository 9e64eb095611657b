"""Exact rational scalars and sparse vectors.

Every quantity in this package (weights, training-vector entries, labels,
decay factors) is an exact rational.  The hinge update branches on whether
a margin is strictly below or strictly above 1, and compiled training
sequences are engineered never to land on the boundary; floating point
could land there spuriously, so all arithmetic uses `fractions.Fraction`,
which keeps values in canonical form (positive denominator, reduced).

Serialized form is a decimal-free "p/q" string: "-13/4", "3".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """A sparse index does not fit the dense vector it is paired with."""


def rat(numerator: int | str | Fraction, denominator: int | None = None) -> Fraction:
    """Build a Rational from ints, a Fraction, or a "p/q" string."""
    if denominator is not None:
        return Fraction(numerator, denominator)
    if isinstance(numerator, str):
        return parse_rat(numerator)
    return Fraction(numerator)


def parse_rat(text: str) -> Fraction:
    """Parse the wire format: an optionally signed integer or "p/q"."""
    s = text.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def format_rat(value: Fraction) -> str:
    """Format for the wire: "p/q", or just "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def bit_length(value: Fraction) -> int:
    """Bits needed for numerator plus denominator; the precision measure."""
    return abs(value.numerator).bit_length() + value.denominator.bit_length()


class SparseVec:
    """Sparse rational vector: a map from coordinate index to non-zero value.

    Zero entries are dropped on construction so equality and sparsity counts
    are canonical.  Instances are immutable by convention; nothing mutates
    `entries` after construction.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        store: dict[int, Fraction] = {}
        for idx, val in items:
            if idx < 0:
                raise DimensionError(f"negative coordinate index {idx}")
            val = Fraction(val)
            if val != 0:
                store[int(idx)] = val
        self.entries = store

    def dot(self, w: Sequence[Fraction]) -> Fraction:
        """Exact inner product against a dense weight vector."""
        total = ZERO
        n = len(w)
        for idx, val in self.entries.items():
            if idx >= n:
                raise DimensionError(f"coordinate {idx} out of range for dimension {n}")
            total += val * w[idx]
        return total

    def get(self, idx: int) -> Fraction:
        return self.entries.get(idx, ZERO)

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return self.entries.items()

    def indices(self) -> Iterable[int]:
        return self.entries.keys()

    def scaled(self, factor: Fraction) -> "SparseVec":
        return SparseVec({i: v * factor for i, v in self.entries.items()})

    def max_index(self) -> int:
        return max(self.entries, default=-1)

    def nnz(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparseVec):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}: {format_rat(v)}" for i, v in sorted(self.entries.items()))
        return f"SparseVec({{{inner}}})"

    def to_json(self) -> dict[str, str]:
        return {str(i): format_rat(v) for i, v in sorted(self.entries.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "SparseVec":
        return cls({int(k): parse_rat(v) for k, v in obj.items()})


def dot(x: SparseVec, w: Sequence[Fraction]) -> Fraction:
    """Module-level alias for SparseVec.dot, for callers holding both parts."""
    return x.dot(w)
