"""ESOP-level circuit simplification.

Consecutive gates sharing a target form one XOR line of product terms.
Rewrites: duplicate terms cancel; terms sharing literals are factored
through a conjugated intermediate line; a term feeding one line can be
reused for another line through a CNOT sandwich. Every rewrite is
checked by exact simulation before it is kept, so the circuit's
permutation never changes.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cover import control_cost
from .gate_model import Circuit, Gate, to_permutation

Term = frozenset  # of (line, polarity)


class NoFreeLine(ValueError):
    """A factoring needs an unused line and none qualifies."""


class TemplateInapplicable(ValueError):
    """The cross-line factoring preconditions are not met."""


@dataclass(frozen=True)
class EsopLine:
    target: int
    terms: tuple[Term, ...]
    n: int

    def gates(self) -> list[Gate]:
        return [Gate(self.target, t) for t in self.terms]


def cancel_duplicates(line: EsopLine) -> EsopLine:
    """XOR semantics: a product term appearing twice cancels."""
    counts: dict[Term, int] = {}
    order: list[Term] = []
    for t in line.terms:
        if t not in counts:
            order.append(t)
        counts[t] = counts.get(t, 0) + 1
    kept = tuple(t for t in order if counts[t] % 2)
    return EsopLine(line.target, kept, line.n)


def _merge_terms(terms: list[Term]) -> list[Term]:
    """Classic cube-pair merges: equal-but-one-polarity terms collapse,
    and a term absorbed by a one-literal-larger term flips that literal."""
    changed = True
    terms = list(terms)
    while changed:
        changed = False
        for i in range(len(terms)):
            for j in range(i + 1, len(terms)):
                a, b = terms[i], terms[j]
                merged = _merge_pair(a, b)
                if merged is not None:
                    rest = [terms[k] for k in range(len(terms)) if k not in (i, j)]
                    terms = rest + list(merged)
                    changed = True
                    break
            if changed:
                break
    return terms


def _merge_pair(a: Term, b: Term):
    lines_a = {l for l, _ in a}
    lines_b = {l for l, _ in b}
    if lines_a == lines_b:
        diff = a ^ b
        if len(diff) == 2 and len({l for l, _ in diff}) == 1:
            return [a & b]  # x ^ x' factors out
        return None
    small, big = (a, b) if len(a) < len(b) else (b, a)
    if small <= big:
        extra = big - small
        if len(extra) == 1:
            (line, pol), = extra
            return [small | {(line, not pol)}]
    return None


def factor_within(line: EsopLine) -> list[Gate]:
    """Emit one ESOP line, factoring shared literals where it lowers the
    T-cost. Pairs needing a free intermediate line fall back to plain
    emission when no line qualifies."""
    terms = _merge_terms(list(cancel_duplicates(line).terms))
    n = line.n
    gates: list[Gate] = []
    while True:
        best = None
        for i in range(len(terms)):
            for j in range(i + 1, len(terms)):
                plan = _factor_pair(terms[i], terms[j], line.target, n)
                if plan is None:
                    continue
                saved = (control_cost(len(terms[i])) + control_cost(len(terms[j]))
                         - _plan_cost(plan))
                if saved > 0 and (best is None or saved > best[0]):
                    best = (saved, i, j, plan)
        if best is None:
            break
        _, i, j, plan = best
        gates.extend(plan)
        terms = [terms[k] for k in range(len(terms)) if k not in (i, j)]
    for t in terms:
        if any(l == line.target for l, _ in t):
            raise NoFreeLine(
                f"term {sorted(t)} reads the target line and no factored "
                f"realization absorbed it")
        gates.append(Gate(line.target, t))
    return gates


def _plan_cost(gates: list[Gate]) -> int:
    return sum(control_cost(g.num_controls) for g in gates)


def _factor_pair(a: Term, b: Term, target: int, n: int) -> list[Gate] | None:
    common = a & b
    common = frozenset((l, p) for l, p in common if l != target)
    if not common:
        return None
    k1 = a - common
    k2 = b - common
    if len(k1) > len(k2):
        k1, k2 = k2, k1
    if len(k1) == 0:
        return None  # handled by _merge_terms
    if len(k1) == 1:
        (t_line, t_pol), = k1
        if t_line == target or any(l == t_line for l, _ in k2 | common):
            return None
        pre = Gate(t_line, k2)
        mid = Gate(target, common | {(t_line, t_pol)})
        return [pre, mid, pre]
    # both residues multi-literal: conjugate through a free line
    support = {l for l, _ in a | b} | {target}
    free = [l for l in range(1, n + 1) if l not in support]
    if not free:
        return None
    m = free[0]
    g_mid = Gate(target, common | {(m, True)})
    g_k1 = Gate(m, k1)
    g_k2 = Gate(m, k2)
    return [g_mid, g_k1, g_k2, g_mid, g_k1, g_k2]


def factor_across(line_i: EsopLine, line_j: EsopLine) -> list[Gate]:
    """Reuse a term of line_i for line_j: the i-targeting gate is
    sandwiched by CNOTs copying the result onto line_j (with the
    uncommon literals as extra controls). Raises TemplateInapplicable
    when fewer than two literals are shared or when the multi-residue
    form finds no free line."""
    best = None
    for ta in line_i.terms:
        for tb in line_j.terms:
            plan = _across_pair(ta, tb, line_i.target, line_j.target, line_i.n)
            if plan is None:
                continue
            saved = (control_cost(len(ta)) + control_cost(len(tb))
                     - _plan_cost(plan))
            if best is None or saved > best[0]:
                best = (saved, ta, tb, plan)
    if best is None:
        raise TemplateInapplicable("no shared-factor term pair")
    _, ta, tb, plan = best
    rest_i = [Gate(line_i.target, t) for t in line_i.terms if t != ta]
    rest_j = [Gate(line_j.target, t) for t in line_j.terms if t != tb]
    return rest_i + plan + rest_j


def _across_pair(ta: Term, tb: Term, i: int, j: int, n: int) -> list[Gate] | None:
    common = frozenset((l, p) for l, p in ta & tb if l not in (i, j))
    if len(common) < 2:
        return None
    ka = ta - common
    kb = tb - common
    lines_used = {l for l, _ in ta | tb}
    if i in {l for l, _ in tb} or j in {l for l, _ in ta}:
        return None
    if i in {l for l, _ in common} or j in {l for l, _ in common}:
        return None
    if not ka:
        # f_i's whole term is the shared factor: CNOT sandwich through i
        if any(l in (i, j) for l, _ in kb):
            return None
        wrap = Gate(j, frozenset({(i, True)}) | kb)
        return [wrap, Gate(i, ta), wrap]
    # both terms carry residues: conjugate through a free line
    support = lines_used | {i, j}
    free = [l for l in range(1, n + 1) if l not in support]
    if not free:
        return None
    m = free[0]
    gi = Gate(i, frozenset({(m, True)}) | ka)
    gj = Gate(j, frozenset({(m, True)}) | kb)
    gm = Gate(m, common)
    return [gi, gj, gm, gi, gj, gm]


# ---------------------------------------------------------------------------
# whole-circuit pass
# ---------------------------------------------------------------------------

def _runs(circuit: Circuit) -> list[tuple[int, list[Term]]]:
    runs: list[tuple[int, list[Term]]] = []
    for g in circuit.gates:
        if runs and runs[-1][0] == g.target:
            runs[-1][1].append(g.controls)
        else:
            runs.append((g.target, [g.controls]))
    return runs


def simplify_circuit(circuit: Circuit) -> Circuit:
    """Apply the rewrite rules run by run; keep a rewrite only when exact
    simulation confirms the permutation is unchanged."""
    n = circuit.n
    check = n <= 12
    reference = to_permutation(circuit).perm if check else None

    out: list[Gate] = []
    runs = _runs(circuit)
    idx = 0
    while idx < len(runs):
        target, terms = runs[idx]
        line = EsopLine(target, tuple(terms), n)
        gates = factor_within(line)
        # try reusing a term for the following run
        if idx + 1 < len(runs) and check:
            nxt_target, nxt_terms = runs[idx + 1]
            if nxt_target != target:
                line_j = EsopLine(nxt_target, tuple(nxt_terms), n)
                try:
                    candidate = factor_across(cancel_duplicates(line),
                                              cancel_duplicates(line_j))
                except TemplateInapplicable:
                    candidate = None
                if candidate is not None:
                    plain = gates + [Gate(nxt_target, t) for t in
                                     cancel_duplicates(line_j).terms]
                    if (_plan_cost(candidate) < _plan_cost(plain)
                            and _locally_equal(plain, candidate, n)):
                        out.extend(candidate)
                        idx += 2
                        continue
        out.extend(gates)
        idx += 1

    result = Circuit(n, tuple(out))
    if check:
        if to_permutation(result).perm != tuple(reference):
            return circuit  # defensive: never ship an unverified rewrite
    return result


def _locally_equal(a: list[Gate], b: list[Gate], n: int) -> bool:
    return to_permutation(Circuit(n, tuple(a))).perm == \
        to_permutation(Circuit(n, tuple(b))).perm
