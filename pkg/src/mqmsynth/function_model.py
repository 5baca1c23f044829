"""Reversible functions as permutations of minterm indices.

A reversible function on n lines is a bijection on [0, 2^n). Line x_1 is
the most-significant bit of a minterm index, x_n the least-significant,
so the index written in binary reads x_1 x_2 ... x_n left to right.

Synthesis is driven by per-line difference vectors: the sorted minterm
indices where an input line disagrees with the corresponding output line.
"""
from __future__ import annotations

from dataclasses import dataclass

MAX_LINES = 20  # dense permutation storage: 2^20 entries is the cap


class NotBijective(ValueError):
    """Output words do not form a bijection."""


class BadLength(ValueError):
    """Truth table row count is not 2^n."""


def bit_of(x: int, line: int, n: int) -> int:
    """Value of line `line` (1-based, x_1 = MSB) in minterm index x."""
    return (x >> (n - line)) & 1


def line_mask(line: int, n: int) -> int:
    return 1 << (n - line)


def segments(n: int) -> tuple[tuple[int, ...], ...]:
    """Variable positions paired (x_1 x_2)(x_3 x_4)...; odd n leaves a
    rightmost singleton. Returned left to right; segment k counts from
    the right, so segments(n)[-k] is segment k."""
    segs = []
    line = 1
    while line <= n:
        if line + 1 <= n:
            segs.append((line, line + 1))
            line += 2
        else:
            segs.append((line,))
            line += 1
    return tuple(segs)


def segment_index(line: int, n: int) -> int:
    """Right-to-left number of the segment containing `line`."""
    segs = segments(n)
    for pos, seg in enumerate(segs):
        if line in seg:
            return len(segs) - pos
    raise IndexError(f"line {line} out of range for n={n}")


@dataclass(frozen=True)
class ReversibleFunction:
    """A bijection on n-bit minterms, stored densely as perm[x] = F(x)."""

    n: int
    perm: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LINES:
            raise ValueError(f"n must be in [1, {MAX_LINES}], got {self.n}")
        size = 1 << self.n
        if len(self.perm) != size:
            raise BadLength(f"expected {size} entries, got {len(self.perm)}")
        seen = 0
        for w in self.perm:
            if not 0 <= w < size:
                raise NotBijective(f"output {w} out of range")
            bit = 1 << w
            if seen & bit:
                raise NotBijective(f"duplicate output {w:0{self.n}b}")
            seen |= bit

    def __call__(self, x: int) -> int:
        return self.perm[x]

    @property
    def size(self) -> int:
        return 1 << self.n


def identity(n: int) -> ReversibleFunction:
    return ReversibleFunction(n, tuple(range(1 << n)))


def from_truth_table(rows, n: int) -> ReversibleFunction:
    """Build F from output words listed in input order (row x = F(x))."""
    return ReversibleFunction(n, tuple(rows))


def from_permutation(perm, n: int) -> ReversibleFunction:
    return ReversibleFunction(n, tuple(perm))


@dataclass(frozen=True)
class DifferenceVector:
    """Sorted minterms where line `main` differs between input and output."""

    main: int
    members: tuple[int, ...]
    n: int

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)


def difference_vector(f: ReversibleFunction, line: int) -> DifferenceVector:
    """Members x with bit_line(x) != bit_line(F(x)). Always even-sized."""
    if not 1 <= line <= f.n:
        raise IndexError(f"line {line} out of range for n={f.n}")
    mask = line_mask(line, f.n)
    members = tuple(x for x in range(f.size) if (x ^ f.perm[x]) & mask)
    return DifferenceVector(line, members, f.n)


def all_difference_vectors(f: ReversibleFunction) -> list[DifferenceVector]:
    return [difference_vector(f, i) for i in range(1, f.n + 1)]


def is_identity(f: ReversibleFunction) -> bool:
    return all(f.perm[x] == x for x in range(f.size))


def apply_gate_inputs(f: ReversibleFunction, gate) -> ReversibleFunction:
    """Relabel input rows by `gate`: F'(x) = F(gate(x)).

    This is the right-hand multiplication used during synthesis; the
    recorded gates, replayed left to right on a minterm, rebuild F.
    """
    from .gate_model import eval_gate  # cycle: gate_model needs this module's types

    new_perm = tuple(f.perm[eval_gate(gate, x, f.n)] for x in range(f.size))
    return ReversibleFunction(f.n, new_perm)
