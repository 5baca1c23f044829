"""Top-level synthesis: clear every difference vector, record the gates.

Gates are applied to the input side of the working function (row
relabeling). Once the function reaches the identity, the recorded gate
list, replayed left to right on basis states, reproduces the original
function exactly; `verify` re-checks this for every result.

Each evaluation round clears the complementary member pairs of the
current vector through the cheapest of several covers (template rewrite,
pair-space ESOP, whole-space ESOP, pattern decomposition). Lone members
are re-paired by swapping gates; a full-control transposition walk is
the unconditional fallback, so progress never stalls.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cover import control_cost, cover_cost, esop_cover
from .cubes import Cube, maximal_cubes
from .function_model import (DifferenceVector, ReversibleFunction,
                             difference_vector, line_mask)
from .gate_model import Circuit, Gate, verify
from .mqm_engine import ControlExpression, NoFreeLine, emit_gates, pair_cubes
from .pattern_decomposition import synthesize_decomposed
from .templates import match_templates


class LimitExceeded(RuntimeError):
    """Gate or iteration budget exhausted (indicates an engine bug)."""


class NotSwappable(ValueError):
    """The two cubes have no segment with a complementary literal pair."""


@dataclass(frozen=True)
class SynthesisConfig:
    vector_order: str = "asc"      # "asc" (pseudocode) or "desc" (worked example)
    lookahead: int = 1             # swap option lookahead depth
    gate_budget: int | None = None  # default 4^n
    templates: bool = True
    decompose: str = "auto"        # auto | on | off
    mid: int | None = None         # forced split position
    postprocess: bool = True
    verify_result: bool = True     # simulate the result when feasible
    seed: int | None = None        # unused; the algorithm is deterministic


DEFAULT_CONFIG = SynthesisConfig()


def fallback_eliminate(m: int, main: int, n: int) -> Gate:
    """Full-control gate on every non-main line at m's bits, targeting
    main: clears m together with its main-complement partner when that
    partner is also a member."""
    controls = []
    for line in range(1, n + 1):
        if line == main:
            continue
        controls.append((line, bool(m & line_mask(line, n))))
    return Gate(main, frozenset(controls))


def swap_options(a: Cube, b: Cube) -> list[Gate]:
    """The four repositioning CNOTs for two implicants whose literals in
    one segment are pairwise complementary. Raises NotSwappable."""
    from .function_model import segments

    n = a.n
    for seg in segments(n):
        if len(seg) != 2:
            continue
        l1, l2 = seg
        pa = a.literal_at(l1) + a.literal_at(l2)
        pb = b.literal_at(l1) + b.literal_at(l2)
        if "X" in pa or "X" in pb:
            continue
        if pa[0] == pb[0] or pa[1] == pb[1]:
            continue
        return [
            Gate(l2, frozenset({(l1, True)})),
            Gate(l2, frozenset({(l1, False)})),
            Gate(l1, frozenset({(l2, True)})),
            Gate(l1, frozenset({(l2, False)})),
        ]
    raise NotSwappable(f"{a.literals} / {b.literals}")


def swap_phase(a: Cube, b: Cube, f: ReversibleFunction | None = None,
               main: int | None = None) -> list[Gate]:
    """Pick the repositioning CNOT for two far-apart implicants. With a
    function given, the four options are simulated one step ahead and
    the one leaving the fewest members overall wins; ties fall back to
    option order. Raises NotSwappable when no segment qualifies."""
    options = swap_options(a, b)
    if f is None:
        return [options[0]]
    best = None
    for idx, g in enumerate(options):
        if main is not None and g.target == main:
            continue
        from .function_model import all_difference_vectors, apply_gate_inputs

        after = apply_gate_inputs(f, g)
        total = sum(len(v) for v in all_difference_vectors(after))
        removable = 0
        if main is not None:
            members = set(difference_vector(after, main).members)
            mask = line_mask(main, f.n)
            removable = sum(1 for x in members if (x ^ mask) in members)
        key = (-removable, total, idx)
        if best is None or key < best[0]:
            best = (key, g)
    if best is None:
        raise NotSwappable("every option targets the main line")
    return [best[1]]


def update_vectors(f: ReversibleFunction, gates) -> tuple[ReversibleFunction, list[DifferenceVector]]:
    """Relabel inputs by the gates and recompute the nonempty vectors,
    sorted ascending by member count (ties by line index)."""
    from .function_model import all_difference_vectors, apply_gate_inputs

    for g in gates:
        f = apply_gate_inputs(f, g)
    vecs = [v for v in all_difference_vectors(f) if v.members]
    vecs.sort(key=lambda v: (len(v.members), v.main))
    return f, vecs


# ---------------------------------------------------------------------------
# working state
# ---------------------------------------------------------------------------

class _State:
    def __init__(self, f: ReversibleFunction, config: SynthesisConfig):
        self.n = f.n
        self.size = f.size
        self.perm = list(f.perm)
        self.log: list[Gate] = []
        self.config = config
        self.budget = config.gate_budget or 4 ** f.n

    def apply(self, g: Gate, *, count: bool = True) -> None:
        if count and len(self.log) >= self.budget:
            raise LimitExceeded(f"gate budget {self.budget} exhausted")
        care, want, flip = g.masks(self.n)
        p = self.perm
        self.perm = [p[x ^ flip] if (x & care) == want else p[x]
                     for x in range(self.size)]
        self.log.append(g)

    def revert(self, k: int) -> None:
        """Undo the last k logged gates (self-inverse) and scrub the log."""
        gates = self.log[-k:]
        for g in reversed(gates):
            self.apply(g, count=False)
        del self.log[-2 * k:]

    def members(self, main: int) -> list[int]:
        mask = line_mask(main, self.n)
        p = self.perm
        return [x for x in range(self.size) if (x ^ p[x]) & mask]

    def member_count(self, main: int) -> int:
        mask = line_mask(main, self.n)
        p = self.perm
        return sum(1 for x in range(self.size) if (x ^ p[x]) & mask)

    def total_members(self) -> int:
        p = self.perm
        return sum(bin(x ^ p[x]).count("1") for x in range(self.size))

    def vector(self, main: int) -> DifferenceVector:
        return DifferenceVector(main, tuple(self.members(main)), self.n)

    def is_identity(self) -> bool:
        return all(self.perm[x] == x for x in range(self.size))


# ---------------------------------------------------------------------------
# plans for clearing the complementary pairs of one vector
# ---------------------------------------------------------------------------

def _score_split(members: list[int], main: int, n: int) -> tuple[list[int], list[int]]:
    mset = set(members)
    mask = line_mask(main, n)
    d_reps, s_all = [], []
    for x in members:
        if (x ^ mask) in mset:
            if x < (x ^ mask):
                d_reps.append(x)
        else:
            s_all.append(x)
    return d_reps, s_all


def _gates_cost(gates: list[Gate]) -> int:
    return sum(control_cost(g.num_controls) for g in gates)


def _pair_esop_plan(main: int, n: int, d_reps, s_all) -> list[Gate] | None:
    lines = [l for l in range(1, n + 1) if l != main]
    cubes = esop_cover(set(d_reps), set(s_all), n, lines=lines)
    if not cubes:
        return None
    try:
        return emit_gates(ControlExpression(main, tuple(cubes), n))
    except NoFreeLine:
        return None


def _template_plan(main: int, n: int, vector: DifferenceVector,
                   d_reps, s_all) -> list[Gate] | None:
    neg, zero = pair_cubes(vector)
    if not neg or len(neg) + len(zero) > 48:
        return None
    candidates = maximal_cubes(neg + zero)
    candidates.extend(c for c in neg if c not in candidates)
    cover = _gf2_cover(candidates, d_reps)
    if cover is None or len(cover) > 12:
        return None
    spis = [c for c in maximal_cubes(zero)] if zero else []
    spis = sorted(spis, key=lambda c: (-c.size, c.literals))[:10]
    s_cells = set()
    for x in s_all:
        s_cells.add(x)
        s_cells.add(x ^ line_mask(main, n))
    cover = _rewrite_with_templates(cover, spis, s_cells, main)
    try:
        return emit_gates(ControlExpression(main, tuple(cover), n))
    except NoFreeLine:
        return None


def _full_space_plan(main: int, n: int, members) -> list[Gate] | None:
    if n > 5 or len(members) > 24:
        return None
    cubes = esop_cover(set(members), set(), n)
    if not cubes:
        return None
    try:
        return emit_gates(ControlExpression(main, tuple(cubes), n))
    except NoFreeLine:
        return None


def _decomposition_plan(state: _State, main: int, vector: DifferenceVector) -> list[Gate] | None:
    cfg = state.config
    if cfg.decompose == "off" or state.n < 3:
        return None
    forced = state.n > 10 or len(vector.members) > 256
    if cfg.decompose == "auto" and not forced and len(vector.members) < 8:
        return None
    return synthesize_decomposed(vector, mid=cfg.mid, main=main)


def _gf2_cover(candidates: list[Cube], target_cells) -> list[Cube] | None:
    """Subset of candidates covering each target cell an odd number of
    times; cells outside the targets are unconstrained here (the caller
    guarantees candidates never touch specified-false cells)."""
    targets = sorted(set(target_cells))
    if not targets:
        return []
    ix = {x: i for i, x in enumerate(targets)}
    want = (1 << len(targets)) - 1
    ordered = sorted(candidates, key=lambda c: (c.score, -c.size, c.literals))
    basis: list[tuple[int, int]] = []
    for j, c in enumerate(ordered):
        vec = 0
        for x in targets:
            if c.covers(x):
                vec |= 1 << ix[x]
        combo = 1 << j
        for bvec, bcombo in basis:
            if vec & (bvec & -bvec):
                vec ^= bvec
                combo ^= bcombo
        if vec:
            basis.append((vec, combo))
    resid, chosen = want, 0
    for bvec, bcombo in basis:
        if resid & (bvec & -bvec):
            resid ^= bvec
            chosen ^= bcombo
    if resid:
        return None
    return [ordered[j] for j in range(len(ordered)) if (chosen >> j) & 1]


def _xor_cells(cubes) -> set[int]:
    out: set[int] = set()
    for c in cubes:
        out ^= set(c.cells())
    return out


def _rewrite_with_templates(cover: list[Cube], spis: list[Cube],
                            free_cells: set[int], main: int) -> list[Cube]:
    cover = list(cover)
    for _ in range(8):
        matches = match_templates(cover, spis)
        applied = False
        for m in matches:
            inside = [c for c in m.participants if c in cover]
            if not inside:
                continue
            new_cost = cover_cost(list(m.enlarged), exclude_line=main)
            old_cost = cover_cost(inside, exclude_line=main)
            if new_cost >= old_cost:
                continue
            delta = _xor_cells(inside) ^ _xor_cells(m.enlarged)
            if not delta <= free_cells:
                continue
            for c in inside:
                cover.remove(c)
            cover.extend(m.enlarged)
            applied = True
            break
        if not applied:
            break
    return cover


# ---------------------------------------------------------------------------
# swapping and unconditional fallbacks
# ---------------------------------------------------------------------------

def _choose_swap(state: _State, main: int, members: list[int]):
    """Best repositioning CNOT per the one-step lookahead, or None."""
    from .mqm_engine import prime_implicants

    n = state.n
    pis = prime_implicants(members, n)
    options: list[tuple[int, Gate]] = []
    seen: set[Gate] = set()
    pairs_used = 0
    for i in range(len(pis)):
        for j in range(i + 1, len(pis)):
            try:
                opts = swap_options(pis[i], pis[j])
            except NotSwappable:
                continue
            pairs_used += 1
            for idx, g in enumerate(opts):
                if g not in seen:
                    seen.add(g)
                    options.append((idx, g))
            if pairs_used >= 3:
                break
        if pairs_used >= 3:
            break
    if not options:
        return None

    main_mask = line_mask(main, n)
    best = None
    for idx, g in enumerate([g for _, g in options]):
        target = g.target
        if target == main:
            continue
        twin = state.member_count(target) == 0
        if twin and any(line == main for line, _ in g.controls):
            continue  # exact restoration impossible; skip this option
        if state.config.lookahead < 1:
            return g, twin
        scratch = _scratch_apply(state, g)
        d_after = _count_pairs(scratch, main, n)
        total = _total_members_of(scratch, n)
        gap = _pair_gap(scratch, main, n, main_mask)
        key = (-d_after, total, gap, idx)
        if best is None or key < best[0]:
            best = (key, g, twin)
    if best is None:
        return None
    return best[1], best[2]


def _scratch_apply(state: _State, g: Gate) -> list[int]:
    care, want, flip = g.masks(state.n)
    p = state.perm
    return [p[x ^ flip] if (x & care) == want else p[x]
            for x in range(state.size)]


def _count_pairs(perm: list[int], main: int, n: int) -> int:
    mask = line_mask(main, n)
    members = {x for x in range(len(perm)) if (x ^ perm[x]) & mask}
    return sum(1 for x in members if (x ^ mask) in members) // 2


def _total_members_of(perm: list[int], n: int) -> int:
    return sum(bin(x ^ perm[x]).count("1") for x in range(len(perm)))


def _pair_gap(perm: list[int], main: int, n: int, main_mask: int) -> int:
    members = [x for x in range(len(perm)) if (x ^ perm[x]) & main_mask]
    side0 = [x for x in members if not x & main_mask]
    side1 = [x for x in members if x & main_mask]
    if not side0 or not side1:
        return 0
    best = n + 1
    for a in side0[:8]:
        for b in side1[:8]:
            d = bin((a ^ b) & ~main_mask).count("1")
            if d < best:
                best = d
    return best


def _transpose_clear(state: _State, main: int, members: list[int]) -> None:
    """Move one opposite-side member next to another and clear the pair:
    an unconditional two-member elimination."""
    n = state.n
    main_mask = line_mask(main, n)
    side0 = [x for x in members if not x & main_mask]
    side1 = [x for x in members if x & main_mask]
    full = (1 << n) - 1
    cleared = {l for l in range(1, n + 1) if state.member_count(l) == 0}
    best = None
    for a in side0[:16]:
        for b in side1[:16]:
            diff = (a ^ b) & ~main_mask & full
            lines = [l for l in range(1, n + 1) if diff & line_mask(l, n)]
            dirty = sum(1 for l in lines if l in cleared)
            key = (dirty, len(lines), a, b)
            if best is None or key < best[0]:
                best = (key, a, b, lines)
    _, a, b, lines = best
    cur = b
    for line in lines:
        controls = [(l, bool(cur & line_mask(l, n)))
                    for l in range(1, n + 1) if l != line]
        state.apply(Gate(line, frozenset(controls)))
        cur ^= line_mask(line, n)
    state.apply(fallback_eliminate(a, main, n))


def _sort_finish(state: _State) -> None:
    """Index-sweep finisher: realize the remaining permutation as full
    control transposition walks. Always reaches the identity."""
    n, size = state.n, state.size
    for y in range(size):
        inv = [0] * size
        for x, fx in enumerate(state.perm):
            inv[fx] = x
        x = inv[y]
        if x == y:
            continue
        cur = x
        ups = y & ~cur
        while ups:
            bit = ups & -ups
            line = n - bit.bit_length() + 1
            controls = [(l, bool(cur & line_mask(l, n)))
                        for l in range(1, n + 1) if l != line]
            state.apply(Gate(line, frozenset(controls)))
            cur |= bit
            ups ^= bit
        downs = cur & ~y
        while downs:
            bit = downs & -downs
            line = n - bit.bit_length() + 1
            controls = [(l, bool(cur & line_mask(l, n)))
                        for l in range(1, n + 1) if l != line]
            state.apply(Gate(line, frozenset(controls)))
            cur ^= bit
            downs ^= bit


# ---------------------------------------------------------------------------
# vector evaluation and the main loop
# ---------------------------------------------------------------------------

_BULK_THRESHOLD = 20


def _clear_vector(state: _State, main: int) -> None:
    n = state.n
    pending_twins: list[Gate] = []
    swap_streak = 0
    first = True
    while True:
        members = state.members(main)
        if not members:
            break
        d_reps, s_all = _score_split(members, main, n)
        bulk = len(members) > _BULK_THRESHOLD
        if d_reps:
            swap_streak = 0
            if bulk and not first:
                plan = _pair_esop_plan(main, n, d_reps, s_all)
                plans = [plan] if plan else []
            else:
                plans = _ranked_plans(state, main, members, d_reps, s_all)
            first = False
            if not _apply_first_working(state, main, len(members), plans):
                state.apply(fallback_eliminate(d_reps[0], main, n))
            continue
        # only lone members left: re-pair them
        first = False
        if bulk or n > 5:
            _transpose_clear(state, main, members)
            continue
        full = _full_space_plan(main, n, members)
        if full is not None and _apply_first_working(
                state, main, len(members), [full]):
            swap_streak = 0
            continue
        swap = _choose_swap(state, main, members) if swap_streak < 2 * n else None
        if swap is not None:
            g, twin = swap
            state.apply(g)
            if twin:
                pending_twins.append(g)
            swap_streak += 1
            continue
        _transpose_clear(state, main, members)
        swap_streak = 0
    for g in reversed(pending_twins):
        state.apply(g)


def _ranked_plans(state: _State, main: int, members, d_reps, s_all):
    n = state.n
    cfg = state.config
    penalty = control_cost(min(n - 1, 5))
    plans: list[tuple[tuple, list[Gate]]] = []

    def add(priority, gates, remaining):
        if gates is not None:
            plans.append(((_gates_cost(gates) + penalty * remaining, priority), gates))

    vector = DifferenceVector(main, tuple(members), n)
    if cfg.templates:
        add(0, _template_plan(main, n, vector, d_reps, s_all), len(s_all))
    add(1, _pair_esop_plan(main, n, d_reps, s_all), len(s_all))
    if not s_all:
        add(2, _decomposition_plan(state, main, vector), 0)
    if s_all:
        add(3, _full_space_plan(main, n, members), 0)
    plans.sort(key=lambda p: p[0])
    return [gates for _, gates in plans]


def _apply_first_working(state: _State, main: int, before: int,
                         plans: list[list[Gate]]) -> bool:
    for gates in plans:
        if not gates:
            continue
        for g in gates:
            state.apply(g)
        if state.member_count(main) < before:
            return True
        state.revert(len(gates))
    return False


def evaluate_vector(f: ReversibleFunction, main: int,
                    config: SynthesisConfig = DEFAULT_CONFIG):
    """Clear one difference vector. Returns (gates, updated function)."""
    state = _State(f, config)
    _clear_vector(state, main)
    return list(state.log), ReversibleFunction(f.n, tuple(state.perm))


def synthesize(f: ReversibleFunction,
               config: SynthesisConfig = DEFAULT_CONFIG) -> Circuit:
    """Synthesize a NOT/CNOT/Toffoli-class circuit computing f."""
    state = _State(f, config)
    passes = 0
    while not state.is_identity():
        passes += 1
        if passes > 4 * state.n + 8:
            _sort_finish(state)
            break
        counts = [(state.member_count(i), i) for i in range(1, state.n + 1)]
        nonempty = [(c, i) for c, i in counts if c]
        if not nonempty:
            break
        if config.vector_order == "desc":
            c, main = max(nonempty, key=lambda t: (t[0], -t[1]))
        else:
            c, main = min(nonempty)
        _clear_vector(state, main)

    circuit = Circuit(state.n, tuple(state.log))
    if config.postprocess:
        from .postprocess import simplify_circuit

        circuit = simplify_circuit(circuit)
    if config.verify_result and state.n <= 14:
        report = verify(circuit, f)
        if not report.ok:
            raise LimitExceeded(
                f"internal error: synthesized circuit failed verification at "
                f"minterm {report.witness}")
    return circuit
