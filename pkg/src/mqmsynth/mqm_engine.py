"""Scoring, prime implicant generation, and gate emission for one vector.

The evaluation of a difference vector starts by pairing each member with
its complement in the main-variable direction. Pairs whose two cells are
both members score -1 and can be cleared outright; pairs with a false
partner score 0 and act as free shared cells (special pairs). Covers are
built over the pair space, rewritten by templates or the ESOP search,
and emitted as gates targeting the main line.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cover import NoOddCover, control_cost, cover_cost, cube_cost, select_cover
from .cubes import Cube, maximal_cubes, xor_eval
from .function_model import DifferenceVector, line_mask
from .gate_model import Gate

__all__ = [
    "ScoredMinterm", "SpecialPrimeImplicant", "ControlExpression",
    "score_minterms", "prime_implicants", "select_cover", "detect_spis",
    "emit_gates", "NoOddCover", "NoFreeLine", "control_cost", "cover_cost",
    "cube_cost", "pair_cubes",
]


class NoFreeLine(ValueError):
    """A factored emission needs an intermediate line and none qualifies."""


@dataclass(frozen=True)
class ScoredMinterm:
    index: int
    score: int  # 0 or -1


SpecialPrimeImplicant = Cube  # an all-score-0 cube; kept as a plain Cube


def score_minterms(vector: DifferenceVector) -> list[ScoredMinterm]:
    """Score each member: -1 when its main-direction complement is also a
    member (only the smaller index of such a pair is kept), else 0."""
    members = vector.member_set()
    mask = line_mask(vector.main, vector.n)
    out = []
    for x in vector.members:
        partner = x ^ mask
        if partner in members:
            if x < partner:
                out.append(ScoredMinterm(x, -1))
        else:
            out.append(ScoredMinterm(x, 0))
    return out


def pair_cubes(vector: DifferenceVector) -> tuple[list[Cube], list[Cube]]:
    """Initial pair-space cubes: (score -1 cubes, score 0 cubes). Each is
    the 2-cell block spanning the main direction."""
    neg, zero = [], []
    for sm in score_minterms(vector):
        cube = Cube.pair_of(sm.index, vector.main, vector.n, score=sm.score)
        (neg if sm.score < 0 else zero).append(cube)
    return neg, zero


def prime_implicants(members, n: int) -> list[Cube]:
    """All maximal cubes covering only the given minterms (classic QM)."""
    base = [Cube.from_minterm(x, n) for x in sorted(set(members))]
    if not base:
        return []
    out = maximal_cubes(base)
    out.sort(key=lambda c: (-c.size, c.literals))
    return out


def detect_spis(vector: DifferenceVector) -> list[Cube]:
    """Maximal cubes built from score-0 pairs only."""
    _neg, zero = pair_cubes(vector)
    if not zero:
        return []
    out = maximal_cubes(zero)
    out.sort(key=lambda c: (-c.size, c.literals))
    return out


@dataclass(frozen=True)
class ControlExpression:
    """XOR-list of product-term cubes feeding one target line."""

    main: int
    terms: tuple[Cube, ...]
    n: int

    def xor_indicator(self, x: int) -> int:
        return xor_eval(list(self.terms), x)

    def cost(self) -> int:
        return cover_cost(list(self.terms), exclude_line=self.main)


def _term_literals(term: Cube, main: int):
    return frozenset(term.control_literals())


def _has_main_literal(term: Cube, main: int) -> bool:
    return term.care & line_mask(main, term.n) != 0


def emit_gates(expr: ControlExpression) -> list[Gate]:
    """Realize a control expression on its main line.

    With a common factor across all terms, the residues are accumulated
    onto the line of a singleton residue and a single factored gate is
    conjugated by the accumulation (uncomputed afterwards). Otherwise one
    gate per cube. Terms carrying a literal of the main line itself are
    only realizable through the factored form; NoFreeLine is raised when
    no accumulator line qualifies.
    """
    terms = list(expr.terms)
    if not terms:
        raise ValueError("empty control expression")
    main = expr.main
    terms = _simplify_terms(terms, main)

    plain = _emit_plain(terms, main)
    factored = _emit_factored(terms, main) if len(terms) >= 2 else None

    if plain is None and factored is None:
        raise NoFreeLine(
            "expression has main-line terms and no factored realization")
    if plain is None:
        return factored
    if factored is None:
        return plain
    return factored if _gates_cost(factored) < _gates_cost(plain) else plain


def _gates_cost(gates: list[Gate]) -> int:
    return sum(control_cost(g.num_controls) for g in gates)


def _simplify_terms(terms: list[Cube], main: int) -> list[Cube]:
    """Template rewrites that keep the XOR function identical (all
    participants replaced at once) and lower the emitted cost."""
    from .templates import match_templates

    if len(terms) > 12:
        return terms
    terms = list(terms)
    for _ in range(6):
        applied = False
        for m in match_templates(terms, []):
            if not all(p in terms for p in m.participants):
                continue
            old = cover_cost(list(m.participants), exclude_line=main)
            new = cover_cost(list(m.enlarged), exclude_line=main)
            if new >= old:
                continue
            for p in m.participants:
                terms.remove(p)
            terms.extend(m.enlarged)
            applied = True
            break
        if not applied:
            break
    return terms


def _emit_plain(terms: list[Cube], main: int) -> list[Gate] | None:
    if any(_has_main_literal(t, main) for t in terms):
        return None
    ordered = sorted(terms, key=lambda t: (t.num_literals, t.literals))
    return [Gate(main, frozenset(t.control_literals(exclude=main)))
            for t in ordered]


def _emit_factored(terms: list[Cube], main: int) -> list[Gate] | None:
    lit_sets = [_term_literals(t, main) for t in terms]
    common = frozenset.intersection(*lit_sets)
    common = frozenset((line, pol) for line, pol in common if line != main)
    if not common:
        return None
    residues = [ls - common for ls in lit_sets]
    # accumulator: a singleton residue whose line no other residue touches;
    # residues may read the main line (conjugation handles it, Example-1 style)
    for k, res in enumerate(residues):
        if len(res) != 1:
            continue
        (t_line, t_pol), = res
        if t_line == main:
            continue
        if any(any(line == t_line for line, _ in other)
               for j, other in enumerate(residues) if j != k):
            continue
        pre = []
        flip_pol = False
        for j, other in enumerate(residues):
            if j == k:
                continue
            if not other:
                flip_pol = not flip_pol  # term equal to the factor: XOR with 1
                continue
            pre.append(Gate(t_line, frozenset(other)))
        gates = list(pre)
        pol = (not t_pol) if flip_pol else t_pol
        gates.append(Gate(main, common | {(t_line, pol)}))
        gates.extend(reversed(pre))
        return gates
    return None
