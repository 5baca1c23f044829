"""Implicant cubes: length-n literal strings over {0, 1, X}.

A cube is stored as a pair of bit masks (care, value): care has a 1 where
the cube fixes a literal, value holds the fixed bits. Bit positions use
the minterm convention (line 1 = MSB). X positions are don't-cares; a
cube covers 2^(#X) minterms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .function_model import line_mask, segment_index, segments


@dataclass(frozen=True)
class Cube:
    """Identity is (n, care, value); the score is bookkeeping only."""

    n: int
    care: int
    value: int
    score: int = field(default=0, compare=False)

    def __post_init__(self):
        full = (1 << self.n) - 1
        if self.care & ~full:
            raise ValueError("care mask wider than n")
        if self.value & ~self.care:
            raise ValueError("value bits outside care mask")

    # -- construction -------------------------------------------------

    @classmethod
    def from_literals(cls, lits: str, score: int = 0) -> "Cube":
        n = len(lits)
        care = value = 0
        for ch in lits:
            care <<= 1
            value <<= 1
            if ch in "01":
                care |= 1
                value |= int(ch)
            elif ch != "X":
                raise ValueError(f"bad literal {ch!r}")
        return cls(n, care, value, score)

    @classmethod
    def from_minterm(cls, x: int, n: int, score: int = 0) -> "Cube":
        return cls(n, (1 << n) - 1, x, score)

    @classmethod
    def pair_of(cls, x: int, main: int, n: int, score: int = 0) -> "Cube":
        """The 2-cell cube {x, x with `main` flipped}: X at the main line."""
        m = line_mask(main, n)
        return cls(n, ((1 << n) - 1) ^ m, x & ~m, score)

    # -- queries ------------------------------------------------------

    @cached_property
    def literals(self) -> str:
        out = []
        for line in range(1, self.n + 1):
            m = line_mask(line, self.n)
            if not self.care & m:
                out.append("X")
            else:
                out.append("1" if self.value & m else "0")
        return "".join(out)

    @cached_property
    def num_x(self) -> int:
        return self.n - bin(self.care).count("1")

    @property
    def size(self) -> int:
        return 1 << self.num_x

    @property
    def num_literals(self) -> int:
        return self.n - self.num_x

    def covers(self, x: int) -> bool:
        return (x & self.care) == self.value

    def cells(self):
        """All covered minterms, ascending."""
        free = [line_mask(i, self.n) for i in range(1, self.n + 1)
                if not self.care & line_mask(i, self.n)]
        base = self.value
        for k in range(1 << len(free)):
            x = base
            for j, m in enumerate(free):
                if (k >> j) & 1:
                    x |= m
            yield x

    def cell_mask(self) -> int:
        """Covered minterms as a 2^n-bit mask (small n only)."""
        mask = 0
        for x in self.cells():
            mask |= 1 << x
        return mask

    def literal_at(self, line: int) -> str:
        m = line_mask(line, self.n)
        if not self.care & m:
            return "X"
        return "1" if self.value & m else "0"

    def direction(self) -> frozenset[int]:
        """Segment numbers (right-to-left) holding at least one X."""
        return frozenset(
            segment_index(line, self.n)
            for line in range(1, self.n + 1)
            if not self.care & line_mask(line, self.n)
        )

    def control_literals(self, exclude: int | None = None):
        """(line, polarity) pairs for the fixed positions, optionally
        skipping one line (the main variable)."""
        out = []
        for line in range(1, self.n + 1):
            if line == exclude:
                continue
            m = line_mask(line, self.n)
            if self.care & m:
                out.append((line, bool(self.value & m)))
        return out

    def with_score(self, score: int) -> "Cube":
        return Cube(self.n, self.care, self.value, score)

    def restrict(self, line: int, bit: int) -> "Cube":
        m = line_mask(line, self.n)
        return Cube(self.n, self.care | m, (self.value & ~m) | (m if bit else 0),
                    self.score)

    def drop(self, line: int) -> "Cube":
        m = line_mask(line, self.n)
        return Cube(self.n, self.care & ~m, self.value & ~m, self.score)

    def __str__(self) -> str:
        segs = segments(self.n)
        lits = self.literals
        return ",".join("".join(lits[line - 1] for line in seg) for seg in segs)


def mergeable(a: Cube, b: Cube) -> bool:
    """Hamming distance one: same X pattern, values differ in one bit."""
    if a.care != b.care:
        return False
    diff = a.value ^ b.value
    return diff != 0 and diff & (diff - 1) == 0


def merge(a: Cube, b: Cube) -> Cube:
    """Combine two adjacent cubes; the differing bit becomes X. The score
    of the result is the sum of the parents' scores."""
    if not mergeable(a, b):
        raise ValueError(f"cubes {a.literals} and {b.literals} not adjacent")
    diff = a.value ^ b.value
    return Cube(a.n, a.care ^ diff, a.value & ~diff, a.score + b.score)


def merge_pass(cubes: list[Cube]) -> tuple[list[Cube], set[Cube]]:
    """One round of pairwise merging. Returns (new cubes, consumed cubes).

    Every Hamming-1 pair is merged; both parents are marked consumed.
    Duplicate results are collapsed (scores taken from the first parents
    that produced them).
    """
    new: dict[tuple[int, int], Cube] = {}
    consumed: set[Cube] = set()
    by_care: dict[int, list[Cube]] = {}
    for c in cubes:
        by_care.setdefault(c.care, []).append(c)
    for group in by_care.values():
        for a, b in combinations(group, 2):
            diff = a.value ^ b.value
            if diff and diff & (diff - 1) == 0:
                m = merge(a, b)
                key = (m.care, m.value)
                if key not in new:
                    new[key] = m
                consumed.add(a)
                consumed.add(b)
    return list(new.values()), consumed


def maximal_cubes(cubes: list[Cube]) -> list[Cube]:
    """Repeat merge passes to fixpoint; return all never-consumed cubes."""
    seen: dict[tuple[int, int], Cube] = {(c.care, c.value): c for c in cubes}
    level = list(seen.values())
    primes: list[Cube] = []
    while level:
        new, consumed = merge_pass(level)
        primes.extend(c for c in level if c not in consumed)
        fresh = []
        for c in new:
            key = (c.care, c.value)
            if key not in seen:
                seen[key] = c
                fresh.append(c)
        level = fresh
    # distinct (care, value); keep first occurrence
    out: dict[tuple[int, int], Cube] = {}
    for c in primes:
        out.setdefault((c.care, c.value), c)
    return list(out.values())


def xor_eval(cubes_list: list[Cube], x: int) -> int:
    """Parity of the number of cubes covering minterm x."""
    return sum(1 for c in cubes_list if c.covers(x)) & 1
