import random

import pytest

from mqmsynth.cover import NoOddCover, select_cover
from mqmsynth.cubes import Cube, xor_eval
from mqmsynth.function_model import (DifferenceVector, apply_gate_inputs,
                                     difference_vector)
from mqmsynth.mqm_engine import (ControlExpression, detect_spis, emit_gates,
                                 pair_cubes, prime_implicants, score_minterms)

from conftest import random_function


def b(word):
    return int(word, 2)


def vec(words, main, n):
    return DifferenceVector(main, tuple(sorted(b(w) for w in words)), n)


class TestScoreMinterms:
    def test_worked4_line1_pair_scores(self, worked4):
        v = difference_vector(worked4, 1)
        scored = {format(s.index, "04b"): s.score for s in score_minterms(v)}
        assert scored["0111"] == -1          # 1111 is also a member
        assert "1111" not in scored          # only the first of a pair kept
        assert scored["0100"] == 0           # 1100 is not a member
        assert scored["0011"] == -1
        assert "1011" not in scored

    def test_single_pair(self):
        v = vec(["010", "110"], main=1, n=3)
        scored = score_minterms(v)
        assert len(scored) == 1
        assert scored[0].score == -1


class TestPrimeImplicants:
    def test_full_cover(self):
        assert [c.literals for c in prime_implicants({0, 1, 2, 3}, 2)] == ["XX"]

    def test_antipodal_no_merge(self):
        got = {c.literals for c in prime_implicants({b("00"), b("11")}, 2)}
        assert got == {"00", "11"}

    def test_matches_brute_force_random_5var(self):
        from test_cubes import brute_force_maximal
        rng = random.Random(13)
        for _ in range(12):
            members = {x for x in range(32) if rng.random() < 0.35}
            if not members:
                continue
            got = {c.literals for c in prime_implicants(members, 5)}
            assert got == brute_force_maximal(members, 5)


class TestSelectCover:
    def test_exact_single_pi(self):
        pis = [Cube.from_literals("0X")]
        assert select_cover(pis, {0, 1}) == pis

    def test_fig8_pair_cube_scores(self, worked4):
        neg, zero = pair_cubes(difference_vector(worked4, 1))
        from mqmsynth.cubes import maximal_cubes
        merged = {c.literals: c.score for c in maximal_cubes(neg + zero)}
        assert merged["XX11"] == -2   # the negative-score implicant
        assert merged["XX00"] == 0    # the special prime implicant

    def test_odd_cover_parity_random(self):
        rng = random.Random(17)
        for _ in range(40):
            n = rng.randint(2, 5)
            f = random_function(n, rng)
            i = rng.randint(1, n)
            members = set(difference_vector(f, i).members)
            if not members:
                continue
            pis = prime_implicants(members, n)
            pis += [Cube.from_minterm(x, n) for x in members]
            cover = select_cover(pis, members)
            for x in range(1 << n):
                assert xor_eval(cover, x) == (1 if x in members else 0)

    def test_no_odd_cover_raises(self):
        with pytest.raises(NoOddCover):
            select_cover([Cube.from_literals("XX")], {0})


class TestDetectSpis:
    def test_special_pair_block(self):
        v = vec(["0000", "1100"], main=1, n=4)
        assert [c.literals for c in detect_spis(v)] == ["XX00"]

    def test_no_zero_scores(self):
        v = vec(["011", "111"], main=1, n=3)
        assert detect_spis(v) == []

    def test_single_special_pair(self):
        v = vec(["0100"], main=1, n=4)
        spis = detect_spis(v)
        assert len(spis) == 1 and spis[0].size == 2


class TestEmitGates:
    def test_shared_cells_give_two_cnots(self):
        expr = ControlExpression(1, (Cube.from_literals("XX00"),
                                     Cube.from_literals("XX11")), 4)
        gates = emit_gates(expr)
        assert [str(g) for g in gates] == ["CNOT(x3',x1)", "CNOT(x4,x1)"]

    def test_factored_conjugation(self):
        expr = ControlExpression(1, (Cube.from_literals("X10X"),
                                     Cube.from_literals("11X1")), 4)
        gates = emit_gates(expr)
        assert [str(g) for g in gates] == [
            "Toff(x1,x4,x3)", "Toff(x2,x3',x1)", "Toff(x1,x4,x3)"]

    def test_single_full_cube(self):
        expr = ControlExpression(1, (Cube.from_literals("X111"),), 4)
        gates = emit_gates(expr)
        assert [str(g) for g in gates] == ["C3NOT(x2,x3,x4,x1)"]

    def test_emitted_gates_clear_targeted_pairs(self, worked4):
        # the first template gates remove exactly the paired members
        expr = ControlExpression(1, (Cube.from_literals("XX00"),
                                     Cube.from_literals("XX11")), 4)
        g = worked4
        for gg in emit_gates(expr):
            g = apply_gate_inputs(g, gg)
        left = set(difference_vector(g, 1).members)
        assert left == {b("0100"), b("0101"), b("1000"), b("1010")}
