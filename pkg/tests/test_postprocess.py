import random

import pytest

from mqmsynth.gate_model import Circuit, gate, to_permutation
from mqmsynth.postprocess import (EsopLine, TemplateInapplicable,
                                  cancel_duplicates, factor_across,
                                  factor_within, simplify_circuit)


def term(*controls):
    return frozenset((abs(c), c > 0) for c in controls)


def perm_of(gates, n):
    return to_permutation(Circuit(n, tuple(gates))).perm


class TestCancelDuplicates:
    def test_pair_vanishes(self):
        line = EsopLine(1, (term(2, 3), term(2, 3)), 3)
        assert cancel_duplicates(line).terms == ()

    def test_triple_keeps_one(self):
        line = EsopLine(1, (term(2, 3),) * 3, 3)
        assert cancel_duplicates(line).terms == (term(2, 3),)

    def test_function_preserved(self):
        rng = random.Random(3)
        for _ in range(20):
            n = 4
            terms = []
            for _ in range(rng.randint(1, 6)):
                ctl = rng.sample([2, 3, 4], rng.randint(0, 3))
                terms.append(term(*[c if rng.random() < 0.5 else -c
                                    for c in ctl]))
            if rng.random() < 0.7 and terms:
                terms.append(terms[0])  # force a duplicate
            line = EsopLine(1, tuple(terms), n)
            before = perm_of(line.gates(), n)
            after = perm_of(cancel_duplicates(line).gates(), n)
            assert before == after


class TestFactorWithin:
    def test_worked_example_sandwich(self):
        # x2*x3' and x1*x2*x4 share x2; the single-literal residue line
        # hosts the accumulation (the second term reads the target line,
        # so only the conjugated form can realize the pair)
        line = EsopLine(1, (term(2, -3), term(1, 2, 4)), 4)
        gates = factor_within(line)
        assert [str(g) for g in gates] == [
            "Toff(x1,x4,x3)", "Toff(x2,x3',x1)", "Toff(x1,x4,x3)"]

    def test_disjoint_terms_unchanged(self):
        line = EsopLine(1, (term(2), term(3, 4)), 4)
        gates = factor_within(line)
        assert sorted(str(g) for g in gates) == \
            sorted(str(g) for g in line.gates())

    def test_no_free_line_left_unfactored(self):
        # both residues multi-literal and every line in use
        line = EsopLine(1, (term(2, 3, -4), term(2, -3, 4)), 4)
        gates = factor_within(line)
        assert perm_of(gates, 4) == perm_of(line.gates(), 4)

    def test_free_line_conjugation(self):
        line = EsopLine(1, (term(2, 3, 4), term(2, 5, 6)), 7)
        gates = factor_within(line)
        assert perm_of(gates, 7) == perm_of(line.gates(), 7)


class TestFactorAcross:
    def test_shared_factor_sandwich(self):
        # f_1 controlled on the common part, f_2 on common plus one extra
        li = EsopLine(1, (term(3, 4, 5),), 6)
        lj = EsopLine(2, (term(3, 4, 5, 6),), 6)
        gates = factor_across(li, lj)
        assert perm_of(gates, 6) == perm_of(li.gates() + lj.gates(), 6)
        # the shared three-control gate appears once
        assert sum(1 for g in gates if g.num_controls == 3) == 1

    def test_single_common_literal_inapplicable(self):
        li = EsopLine(1, (term(3),), 4)
        lj = EsopLine(2, (term(3, 4),), 4)
        with pytest.raises(TemplateInapplicable):
            factor_across(li, lj)

    def test_random_applicable_rewrites_equal(self):
        rng = random.Random(11)
        done = 0
        while done < 30:
            n = 6
            common = rng.sample(range(2, 7), 2 + rng.randint(0, 1))
            extra = [l for l in range(2, 7) if l not in common]
            ta = term(*common)
            tb = term(*(common + extra[:1]))
            li = EsopLine(1, (ta,), n)
            lj = EsopLine(rng.choice(extra[1:]) if len(extra) > 1 else 7 - 1,
                          (tb,), n)
            if lj.target in {l for l, _ in tb} or lj.target == 1:
                continue
            try:
                gates = factor_across(li, lj)
            except TemplateInapplicable:
                continue
            assert perm_of(gates, n) == perm_of(li.gates() + lj.gates(), n)
            done += 1


class TestSimplifyCircuit:
    def test_duplicate_gates_cancel(self):
        g = gate(1, 2, 3)
        c = Circuit(4, (g, g, gate(2, 1)))
        out = simplify_circuit(c)
        assert to_permutation(out).perm == to_permutation(c).perm
        assert len(out.gates) < len(c.gates)

    def test_random_circuits_preserved(self):
        rng = random.Random(13)
        for _ in range(25):
            n = rng.randint(3, 6)
            gs = []
            for _ in range(rng.randint(1, 10)):
                t = rng.randint(1, n)
                pool = [l for l in range(1, n + 1) if l != t]
                ctl = rng.sample(pool, rng.randint(0, min(2, len(pool))))
                gs.append(gate(t, *[c if rng.random() < 0.5 else -c
                                    for c in ctl]))
            c = Circuit(n, tuple(gs))
            out = simplify_circuit(c)
            assert to_permutation(out).perm == to_permutation(c).perm
