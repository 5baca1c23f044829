"""Suffix-pattern decomposition of a difference vector.

Members sharing an identical suffix pattern (bits x_Mid..x_n) are grouped
by the prefixes under which the pattern repeats. The vector's indicator
then factors as an XOR of prefix-function x suffix-function products,
each minimized over its own variable subset. When exactly two patterns
exist and both factors complement each other, the product collapses to a
single XOR of the two factor functions.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cover import cover_cost, esop_cover
from .cubes import Cube
from .function_model import DifferenceVector
from .gate_model import Gate


@dataclass(frozen=True)
class PatternSplit:
    n: int
    mid: int  # suffix spans lines mid..n, prefix lines 1..mid-1
    subfunctions: tuple[frozenset[int], ...]  # suffix sets H_k
    groups: tuple[frozenset[int], ...]        # prefix sets Group_k

    @property
    def prefix_bits(self) -> int:
        return self.mid - 1

    @property
    def suffix_bits(self) -> int:
        return self.n - self.mid + 1

    def members(self) -> frozenset[int]:
        out = set()
        for grp, sub in zip(self.groups, self.subfunctions):
            for g in grp:
                for h in sub:
                    out.add((g << self.suffix_bits) | h)
        return frozenset(out)


def find_patterns(vector: DifferenceVector, mid: int) -> PatternSplit:
    """Bucket members by suffix set; prefixes with identical suffix sets
    form one group. Reconstruction of the member set is exact."""
    if not 1 < mid <= vector.n:
        raise ValueError(f"mid must be in (1, {vector.n}], got {mid}")
    suffix_bits = vector.n - mid + 1
    by_prefix: dict[int, set[int]] = {}
    for x in vector.members:
        by_prefix.setdefault(x >> suffix_bits, set()).add(x & ((1 << suffix_bits) - 1))
    by_pattern: dict[frozenset[int], set[int]] = {}
    for prefix, suffixes in by_prefix.items():
        by_pattern.setdefault(frozenset(suffixes), set()).add(prefix)
    patterns = sorted(by_pattern.items(), key=lambda kv: min(kv[1]))
    return PatternSplit(
        vector.n, mid,
        tuple(h for h, _ in patterns),
        tuple(frozenset(g) for _, g in patterns),
    )


def complement_shortcut(split: PatternSplit):
    """For a two-pattern split with H1 = not(H2) and Group1 = not(Group2),
    return (suffix_set, prefix_set) whose XOR equals the full expression:
    subfunction_H2 XOR Group_1. Returns None when inapplicable."""
    if len(split.subfunctions) != 2:
        return None
    h1, h2 = split.subfunctions
    g1, g2 = split.groups
    suffix_space = frozenset(range(1 << split.suffix_bits))
    prefix_space = frozenset(range(1 << split.prefix_bits))
    if h1 != suffix_space - h2 or g1 != prefix_space - g2:
        return None
    return h2, g1


def _lift_suffix(values, mid: int, n: int) -> set[int]:
    return set(values)  # suffix bits already sit at the low end


def _lift_prefix(values, mid: int, n: int) -> set[int]:
    shift = n - mid + 1
    return {v << shift for v in values}


def _factor_cover(values: frozenset[int], lines: list[int], main: int,
                  n: int, space_bits: int, lift) -> list[Cube] | None:
    """ESOP of one factor over its own lines; None if it depends on the
    main line (such cubes cannot control a gate targeting main)."""
    use_lines = [l for l in lines if l != main]
    if main in lines:
        # main must be ignorable: both halves of every main-pair present
        pos = lines.index(main)
        bit = 1 << (len(lines) - 1 - pos)
        if any((v ^ bit) not in values for v in values):
            return None
    if not values:
        return []
    return esop_cover(lift(values), set(), n, lines=use_lines)


def _and_cubes(a: Cube, b: Cube) -> Cube:
    # disjoint supports by construction (prefix vs suffix lines)
    return Cube(a.n, a.care | b.care, a.value | b.value)


def synthesize_decomposed(vector: DifferenceVector, mid: int | None = None,
                          main: int | None = None) -> list[Gate] | None:
    """Gates clearing `vector` through the pattern decomposition, or None
    when no valid decomposition exists (caller falls back to the direct
    evaluation). All gates target the main line with main-free controls,
    so they apply exactly the vector's indicator."""
    if main is None:
        main = vector.main
    n = vector.n
    if not vector.members:
        return []
    mids = [mid] if mid else _mid_candidates(vector)
    best: tuple[int, list[Cube]] | None = None
    for m in mids:
        split = find_patterns(vector, m)
        if len(split.subfunctions) > 4 and mid is None:
            continue  # no repeating structure worth factoring
        cubes = _split_cubes(split, main)
        if cubes is None:
            continue
        cost = cover_cost(cubes, exclude_line=main)
        if best is None or cost < best[0]:
            best = (cost, cubes)
    if best is None:
        return None
    return [Gate(main, frozenset(c.control_literals(exclude=main)))
            for c in best[1]]


def _mid_candidates(vector: DifferenceVector) -> list[int]:
    n = vector.n
    if n < 3:
        return []
    first = max(2, (n + 1) // 2)
    rest = [m for m in range(2, n + 1) if m != first]
    scored = []
    for m in [first] + rest:
        split = find_patterns(vector, m)
        weight = len(split.subfunctions) * sum(
            len(h) + len(g) for h, g in zip(split.subfunctions, split.groups))
        scored.append((weight, m))
    scored.sort()
    return [m for _, m in scored[:3]]


def _split_cubes(split: PatternSplit, main: int) -> list[Cube] | None:
    n = split.n
    mid = split.mid
    suffix_lines = list(range(mid, n + 1))
    prefix_lines = list(range(1, mid))

    shortcut = complement_shortcut(split)
    if shortcut is not None:
        h2, g1 = shortcut
        ch = _factor_cover(h2, suffix_lines, main, n, split.suffix_bits,
                           lambda v: _lift_suffix(v, mid, n))
        cg = _factor_cover(g1, prefix_lines, main, n, split.prefix_bits,
                           lambda v: _lift_prefix(v, mid, n))
        if ch is None or cg is None:
            return None
        return ch + cg

    cubes: list[Cube] = []
    for h_k, g_k in zip(split.subfunctions, split.groups):
        ch = _factor_cover(h_k, suffix_lines, main, n, split.suffix_bits,
                           lambda v: _lift_suffix(v, mid, n))
        cg = _factor_cover(g_k, prefix_lines, main, n, split.prefix_bits,
                           lambda v: _lift_prefix(v, mid, n))
        if ch is None or cg is None:
            return None
        for a in cg:
            for b in ch:
                cubes.append(_and_cubes(a, b))
    return cubes
