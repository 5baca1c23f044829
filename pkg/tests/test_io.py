import random

import pytest

from mqmsynth import fixtures
from mqmsynth.function_model import NotBijective
from mqmsynth.gate_model import Circuit, gate
from mqmsynth.io_real import (BadHeader, BadRow, LineMismatch, UnknownGate,
                              parse_real, parse_tt, write_perm, write_real,
                              write_tt)

from conftest import random_function


class TestTruthTables:
    def test_single_line_not(self):
        f = parse_tt(".n 1\n1\n0\n")
        assert f.perm == (1, 0)

    def test_worked4_file(self, worked4):
        text = write_tt(worked4)
        assert parse_tt(text).perm == worked4.perm

    def test_duplicate_row_rejected(self):
        with pytest.raises(NotBijective):
            parse_tt(".n 1\n1\n1\n")

    def test_bad_header(self):
        with pytest.raises(BadHeader):
            parse_tt("1\n0\n")

    def test_bad_row(self):
        with pytest.raises(BadRow):
            parse_tt(".n 1\n1\n")
        with pytest.raises(BadRow):
            parse_tt(".n 1\n10\n01\n")

    def test_permutation_form_roundtrip(self):
        rng = random.Random(2)
        f = random_function(4, rng)
        assert parse_tt(write_perm(f)).perm == f.perm

    def test_comments_ignored(self):
        f = parse_tt("# a note\n.n 1\n1\n0  # trailing\n")
        assert f.perm == (1, 0)


class TestRealDialect:
    def test_negative_control_token(self):
        c = parse_real(".numvars 7\n.variables x1 x2 x3 x4 x5 x6 x7\n"
                       ".begin\nt3 -x3 x4 x7\n.end\n")
        assert c.gates == (gate(7, -3, 4),)

    def test_bare_not(self):
        c = parse_real(".numvars 7\n.variables x1 x2 x3 x4 x5 x6 x7\n"
                       ".begin\nt1 x7\n.end\n")
        assert c.gates == (gate(7),)

    def test_alu_roundtrip(self):
        c = fixtures.proposed_circuit("alu-bdd_288")
        assert parse_real(write_real(c)).gates == c.gates

    def test_negated_target_rejected(self):
        with pytest.raises(UnknownGate):
            parse_real(".numvars 2\n.variables a b\n.begin\nt2 a -b\n.end\n")

    def test_unknown_gate_kind(self):
        with pytest.raises(UnknownGate):
            parse_real(".numvars 2\n.variables a b\n.begin\nf2 a b\n.end\n")

    def test_line_mismatch(self):
        with pytest.raises(LineMismatch):
            parse_real(".numvars 2\n.variables a b\n.begin\nt3 a b\n.end\n")
        with pytest.raises(LineMismatch):
            parse_real(".numvars 2\n.variables a b\n.begin\nt1 c\n.end\n")

    def test_missing_header(self):
        with pytest.raises(BadHeader):
            parse_real(".begin\nt1 x1\n.end\n")

    def test_roundtrip_random_circuits(self):
        rng = random.Random(6)
        for _ in range(15):
            n = rng.randint(2, 6)
            gs = []
            for _ in range(rng.randint(0, 8)):
                t = rng.randint(1, n)
                pool = [l for l in range(1, n + 1) if l != t]
                ctl = rng.sample(pool, rng.randint(0, len(pool)))
                gs.append(gate(t, *[c if rng.random() < 0.5 else -c
                                    for c in ctl]))
            c = Circuit(n, tuple(gs))
            assert parse_real(write_real(c)).gates == c.gates
