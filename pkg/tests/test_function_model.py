import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqmsynth.function_model import (BadLength, NotBijective,
                                     all_difference_vectors,
                                     apply_gate_inputs, difference_vector,
                                     from_truth_table, identity, is_identity,
                                     segment_index, segments)
from mqmsynth.gate_model import gate

from conftest import random_function


def bits(*words):
    return [int(w, 2) for w in words]


class TestFromTruthTable:
    def test_worked4_rows(self, worked4):
        assert worked4(int("0000", 2)) == int("0001", 2)
        assert worked4(int("0011", 2)) == int("1000", 2)
        assert worked4(int("1111", 2)) == int("0111", 2)

    def test_identity_rows(self):
        f = from_truth_table([0, 1, 2, 3], 2)
        assert is_identity(f)

    def test_single_not(self):
        f = from_truth_table([1, 0], 1)
        assert f.perm == (1, 0)

    def test_rejects_duplicate_output(self):
        with pytest.raises(NotBijective):
            from_truth_table([0, 0], 1)

    def test_rejects_bad_length(self):
        with pytest.raises(BadLength):
            from_truth_table([0, 1, 2], 2)


class TestDifferenceVector:
    def test_worked4_line4(self, worked4):
        v = difference_vector(worked4, 4)
        assert list(v.members) == bits("0000", "0011", "0100", "1000",
                                       "1001", "1011", "1101", "1110")

    def test_worked4_line1(self, worked4):
        v = difference_vector(worked4, 1)
        assert list(v.members) == bits("0011", "0100", "0101", "0111",
                                       "1000", "1010", "1011", "1111")

    def test_identity_vectors_empty(self):
        f = identity(3)
        for i in (1, 2, 3):
            assert len(difference_vector(f, i)) == 0

    def test_line_bounds(self, worked4):
        with pytest.raises(IndexError):
            difference_vector(worked4, 5)

    @given(st.randoms(use_true_random=False), st.integers(2, 6))
    @settings(max_examples=40, deadline=None)
    def test_members_always_even(self, rng, n):
        f = random_function(n, rng)
        for i in range(1, n + 1):
            assert len(difference_vector(f, i)) % 2 == 0

    def test_identity_iff_all_empty(self):
        rng = random.Random(3)
        for _ in range(20):
            f = random_function(3, rng)
            empty = all(len(v) == 0 for v in all_difference_vectors(f))
            assert empty == is_identity(f)


class TestApplyGateInputs:
    def test_relabels_identity(self):
        f = identity(2)
        g = apply_gate_inputs(f, gate(1))
        assert g.perm == (2, 3, 0, 1)

    def test_worked4_pair_clearing_gates_drop_v1(self, worked4):
        # the two expression gates of the first template application
        g = apply_gate_inputs(worked4, gate(1, -3))
        g = apply_gate_inputs(g, gate(1, 4))
        assert len(difference_vector(worked4, 1)) == 8
        assert len(difference_vector(g, 1)) == 4

    def test_involution(self):
        rng = random.Random(9)
        for _ in range(15):
            f = random_function(3, rng)
            g = gate(2, 1, -3)
            assert apply_gate_inputs(apply_gate_inputs(f, g), g).perm == f.perm

    def test_preserves_bijectivity(self):
        rng = random.Random(11)
        for _ in range(10):
            f = random_function(4, rng)
            g = apply_gate_inputs(f, gate(3, 1, -2))
            assert sorted(g.perm) == list(range(16))


class TestIsIdentity:
    def test_identity_true(self):
        assert is_identity(identity(3))

    def test_worked4_false(self, worked4):
        assert not is_identity(worked4)

    def test_not_on_line1_false(self):
        f = from_truth_table([2, 3, 0, 1], 2)
        assert not is_identity(f)


class TestSegments:
    def test_seven_lines_pairs_left_to_right(self):
        assert segments(7) == ((1, 2), (3, 4), (5, 6), (7,))

    def test_four_lines(self):
        assert segments(4) == ((1, 2), (3, 4))

    def test_numbering_right_to_left(self):
        assert segment_index(7, 7) == 1
        assert segment_index(1, 7) == 4
        assert segment_index(4, 4) == 1
        assert segment_index(2, 4) == 2
