import random

from mqmsynth.cubes import Cube
from mqmsynth.templates import match_templates


def cells_xor(cubes):
    out = set()
    for c in cubes:
        out ^= set(c.cells())
    return out


def find(matches, template, a=None, b=None):
    for m in matches:
        if m.template != template:
            continue
        lits = [c.literals for c in m.participants]
        if a and lits[0] != a:
            continue
        if b and lits[1] != b:
            continue
        return m
    return None


class TestTemplateOne:
    def test_columns_with_shared_block(self):
        a, b = Cube.from_literals("XX11"), Cube.from_literals("XX00")
        m = find(match_templates([a], [b]), 1)
        assert m is not None
        assert sorted(c.literals for c in m.enlarged) == ["XX0X", "XXX1"]

    def test_xor_preserved(self):
        a, b = Cube.from_literals("XX11"), Cube.from_literals("XX00")
        m = find(match_templates([a, b]), 1)
        assert cells_xor(m.enlarged) == cells_xor((a, b))


class TestTemplateThree:
    def test_double_size_extension(self):
        a, b = Cube.from_literals("XX01"), Cube.from_literals("1X11")
        m = find(match_templates([a, b]), 3, a="XX01")
        assert m is not None
        assert {c.literals for c in m.enlarged} == {"XXX1", "0X11"}
        assert m.extensions[0].literals == "0X11"
        assert cells_xor(m.enlarged) == cells_xor((a, b))


class TestTemplateFour:
    def test_half_x_pair(self):
        a, b = Cube.from_literals("0X0X"), Cube.from_literals("001X")
        m = find(match_templates([a, b]), 4, a="0X0X")
        assert m is not None
        assert cells_xor(m.enlarged) == cells_xor((a, b))


class TestTemplateFive:
    def test_complementary_half_x(self):
        a, b = Cube.from_literals("1X1X"), Cube.from_literals("0X0X")
        m = find(match_templates([a, b]), 5)
        assert m is not None
        assert any(c.num_literals == 1 for c in m.enlarged)
        assert cells_xor(m.enlarged) == cells_xor((a, b))


class TestTemplateSix:
    def test_three_cube_combination(self):
        a = Cube.from_literals("1X01")
        bb = Cube.from_literals("1011")
        c = Cube.from_literals("0111")
        matches = [m for m in match_templates([a, bb, c]) if m.template == 6]
        assert matches
        for m in matches:
            assert cells_xor(m.enlarged) == cells_xor(m.participants)


class TestTemplateSeven:
    def test_diagonal_distance_split(self):
        a, b = Cube.from_literals("0110"), Cube.from_literals("0011")
        matches = [m for m in match_templates([a, b]) if m.template == 7]
        assert matches
        for m in matches:
            assert cells_xor(m.enlarged) == cells_xor((a, b))


class TestSoundnessSweep:
    def test_random_pairs_and_triples(self):
        rng = random.Random(23)
        lits = "01X"
        checked = 0
        for _ in range(300):
            n = rng.choice([4, 6])
            cubes = [Cube.from_literals("".join(rng.choice(lits)
                                                for _ in range(n)))
                     for _ in range(3)]
            for m in match_templates(cubes):
                assert cells_xor(m.enlarged) == cells_xor(m.participants)
                checked += 1
        assert checked > 30  # the sweep actually exercised matches
