"""Shared-cell templates that enlarge prime implicant pairs.

Each template spots two (or three) implicants that can borrow a block of
common cells: the block is counted twice, so it cancels under XOR, and
the participants are replaced by larger cubes with fewer literals. A
match records the participants, the borrowed extension cells, and the
enlarged cubes whose XOR equals the original cover exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .cubes import Cube
from .function_model import segments


@dataclass(frozen=True)
class TemplateMatch:
    template: int
    participants: tuple[Cube, ...]
    extensions: tuple[Cube, ...]
    enlarged: tuple[Cube, ...]
    label: str = ""

    @property
    def expression(self) -> tuple[Cube, ...]:
        return self.enlarged


def _pattern(cube: Cube, seg: tuple[int, ...]) -> str:
    return "".join(cube.literal_at(line) for line in seg)


def _with_pattern(cube: Cube, seg: tuple[int, ...], pat: str) -> Cube:
    out = cube
    for line, ch in zip(seg, pat):
        if ch == "X":
            out = out.drop(line)
        else:
            out = out.restrict(line, int(ch))
    return Cube(cube.n, out.care, out.value, cube.score)


def _same_outside(a: Cube, b: Cube, segs_used) -> bool:
    lines_used = {line for seg in segs_used for line in seg}
    for line in range(1, a.n + 1):
        if line in lines_used:
            continue
        if a.literal_at(line) != b.literal_at(line):
            return False
    return True


def _flip(ch: str) -> str:
    return {"0": "1", "1": "0"}[ch]


def _full(pat: str) -> bool:
    return "X" not in pat


def _hd(p: str, q: str) -> int:
    return sum(1 for x, y in zip(p, q) if x != y)


def _merge_full(p: str, q: str) -> str:
    """Patterns differing in one position; that position becomes X."""
    return "".join("X" if x != y else x for x, y in zip(p, q))


def _xor_cells(cubes) -> frozenset[int]:
    out: set[int] = set()
    for c in cubes:
        out ^= set(c.cells())
    return frozenset(out)


def _sound(participants, enlarged) -> bool:
    return _xor_cells(participants) == _xor_cells(enlarged)


def _lex_key(cubes) -> tuple[str, ...]:
    return tuple(sorted(c.literals for c in cubes))


def _pick_variant(variants):
    """Deterministic choice: lexicographically smallest enlarged pair."""
    return min(variants, key=lambda v: _lex_key(v[1]))


def _two_line_segments(n: int):
    return [seg for seg in segments(n) if len(seg) == 2]


# --- individual templates -------------------------------------------------

def _match_t1(a: Cube, b: Cube, segs, template_id: int = 1):
    out = []
    for seg in segs:
        pa, pb = _pattern(a, seg), _pattern(b, seg)
        if not (_full(pa) and _full(pb)) or _hd(pa, pb) != 2:
            continue
        if not _same_outside(a, b, [seg]):
            continue
        ext1 = _with_pattern(a, seg, pa[0] + _flip(pa[1]))
        v1 = (
            (ext1,),
            (_with_pattern(a, seg, pa[0] + "X"), _with_pattern(b, seg, "X" + pb[1])),
        )
        ext2 = _with_pattern(a, seg, _flip(pa[0]) + pa[1])
        v2 = (
            (ext2,),
            (_with_pattern(a, seg, "X" + pa[1]), _with_pattern(b, seg, pb[0] + "X")),
        )
        exts, enlarged = _pick_variant([v1, v2])
        if _sound((a, b), enlarged):
            out.append(TemplateMatch(template_id, (a, b), exts, enlarged,
                                     label=f"seg{seg}"))
    return out


def _match_t2(a: Cube, b: Cube, segs):
    out = []
    for s1, s2 in permutations(segs, 2):
        qa, qb = _pattern(a, s1), _pattern(b, s1)
        pa, pb = _pattern(a, s2), _pattern(b, s2)
        # s1: same single X position, complementary care literal
        if "X" not in qa or qa.count("X") != 1:
            continue
        xpos = qa.index("X")
        if qb.count("X") != 1 or qb.index("X") != xpos:
            continue
        cpos = 1 - xpos
        if qa[cpos] == "X" or qb[cpos] != _flip(qa[cpos]):
            continue
        if not (_full(pa) and _full(pb)) or _hd(pa, pb) != 1:
            continue
        if not _same_outside(a, b, [s1, s2]):
            continue
        ext = _with_pattern(_with_pattern(a, s1, qb), s2, pa)
        a2 = _with_pattern(a, s1, "XX")
        b2 = _with_pattern(b, s2, _merge_full(pa, pb))
        if _sound((a, b), (a2, b2)):
            out.append(TemplateMatch(2, (a, b), (ext,), (a2, b2),
                                     label=f"base={a.literals}"))
    return out


def _match_t3(a: Cube, b: Cube, segs):
    # a must be twice the size of b
    if a.size != 2 * b.size:
        return []
    out = []
    for s1, s2 in permutations(segs, 2):
        qa, qb = _pattern(a, s1), _pattern(b, s1)
        pa, pb = _pattern(a, s2), _pattern(b, s2)
        if qa != "XX" or qb.count("X") != 1:
            continue
        if not (_full(pa) and _full(pb)) or _hd(pa, pb) != 1:
            continue
        if not _same_outside(a, b, [s1, s2]):
            continue
        cpos = 1 - qb.index("X")
        flipped = list(qb)
        flipped[cpos] = _flip(qb[cpos])
        b_ext = _with_pattern(b, s1, "".join(flipped))
        a2 = _with_pattern(a, s2, _merge_full(pa, pb))
        if _sound((a, b), (a2, b_ext)):
            out.append(TemplateMatch(3, (a, b), (b_ext,), (a2, b_ext),
                                     label=f"seg{s2}"))
    return out


def _match_t4(a: Cube, b: Cube, segs):
    if a.size != 2 * b.size:
        return []
    out = []
    for sa, sb in permutations(segs, 2):
        qa, qb = _pattern(a, sa), _pattern(b, sa)
        pa, pb = _pattern(a, sb), _pattern(b, sb)
        # sa: both half-X, same X position
        if qa.count("X") != 1 or qb.count("X") != 1 or qa.index("X") != qb.index("X"):
            continue
        apos = 1 - qa.index("X")
        alpha1, alpha2 = qa[apos], qb[apos]
        # sb: a half-X, b full
        if pa.count("X") != 1 or not _full(pb):
            continue
        bpos = 1 - pa.index("X")
        beta1, beta2 = pa[bpos], pb[bpos]
        gamma_pos = pa.index("X")
        if _hd(alpha1 + beta1, alpha2 + beta2) != 1:
            continue
        if not _same_outside(a, b, [sa, sb]):
            continue
        flipped = list(pb)
        flipped[gamma_pos] = _flip(pb[gamma_pos])
        b_ext = _with_pattern(b, sb, "".join(flipped))
        if alpha1 != alpha2:
            a2 = _with_pattern(a, sa, "XX")
        else:
            a2 = _with_pattern(a, sb, "XX")
        if _sound((a, b), (a2, b_ext)):
            out.append(TemplateMatch(4, (a, b), (b_ext,), (a2, b_ext),
                                     label=f"segs{sa}{sb}"))
    return out


def _match_t5(a: Cube, b: Cube, segs):
    out = []
    for sa, sb in combinations(segs, 2):
        qa, qb = _pattern(a, sa), _pattern(b, sa)
        pa, pb = _pattern(a, sb), _pattern(b, sb)
        if qa.count("X") != 1 or qb.count("X") != 1 or qa.index("X") != qb.index("X"):
            continue
        if pa.count("X") != 1 or pb.count("X") != 1 or pa.index("X") != pb.index("X"):
            continue
        apos, bpos = 1 - qa.index("X"), 1 - pa.index("X")
        if qb[apos] != _flip(qa[apos]) or pb[bpos] != _flip(pa[bpos]):
            continue
        if not _same_outside(a, b, [sa, sb]):
            continue
        v1_ext = _with_pattern(a, sa, qb)
        v1 = ((v1_ext,), (_with_pattern(a, sa, "XX"), _with_pattern(b, sb, "XX")))
        v2_ext = _with_pattern(a, sb, pb)
        v2 = ((v2_ext,), (_with_pattern(a, sb, "XX"), _with_pattern(b, sa, "XX")))
        exts, enlarged = _pick_variant([v1, v2])
        if _sound((a, b), enlarged):
            out.append(TemplateMatch(5, (a, b), exts, enlarged,
                                     label=f"segs{sa}{sb}"))
    return out


def _match_t6(a: Cube, b: Cube, c: Cube, segs):
    out = []
    for s1, s2 in permutations(segs, 2):
        qa, qb, qc = _pattern(a, s1), _pattern(b, s1), _pattern(c, s1)
        pa, pb, pc = _pattern(a, s2), _pattern(b, s2), _pattern(c, s2)
        if qa.count("X") != 1 or not (_full(qb) and _full(qc)):
            continue
        if _hd(qb, qc) != 2:
            continue
        if not (_full(pa) and _full(pb)) or pb != pc or _hd(pa, pb) != 1:
            continue
        if not (_same_outside(a, b, [s1, s2]) and _same_outside(b, c, [s1, s2])):
            continue
        p = 1 - qa.index("X")  # care position of A in s1
        alpha = qa[p]
        delta = qb[p]
        other = 1 - p
        zeta = qb[other]
        if alpha == delta:
            bpat = ["", ""]
            bpat[p], bpat[other] = delta, "X"
            b2 = _with_pattern(b, s1, "".join(bpat))
            cpat = ["", ""]
            cpat[p], cpat[other] = "X", _flip(zeta)
            c2 = _with_pattern(c, s1, "".join(cpat))
            merged = _with_pattern(b2, s2, _merge_full(pa, pb))
            pair = (merged, c2)
        else:
            bpat = ["", ""]
            bpat[p], bpat[other] = "X", zeta
            b2 = _with_pattern(b, s1, "".join(bpat))
            cpat = ["", ""]
            cpat[p], cpat[other] = _flip(delta), "X"
            c2 = _with_pattern(c, s1, "".join(cpat))
            merged = _with_pattern(c2, s2, _merge_full(pa, pb))
            pair = (merged, b2)
        ext_pat = ["", ""]
        if alpha == delta:
            ext_pat[p], ext_pat[other] = delta, _flip(zeta)
        else:
            ext_pat[p], ext_pat[other] = _flip(delta), zeta
        ext = _with_pattern(_with_pattern(a, s1, "".join(ext_pat)), s2, pb)
        if _sound((a, b, c), pair):
            out.append(TemplateMatch(6, (a, b, c), (ext,), pair,
                                     label=("a=d" if alpha == delta else "a!=d")))
    return out


def _match_t7(a: Cube, b: Cube, segs):
    out = []
    # distance-2-in-one-segment form (shares structure with template 1)
    out.extend(_match_t1(a, b, segs, template_id=7))
    # distance split across two segments
    for s1, s2 in combinations(segs, 2):
        qa, qb = _pattern(a, s1), _pattern(b, s1)
        pa, pb = _pattern(a, s2), _pattern(b, s2)
        if not (_full(qa) and _full(qb) and _full(pa) and _full(pb)):
            continue
        if _hd(qa, qb) != 1 or _hd(pa, pb) != 1:
            continue
        if not _same_outside(a, b, [s1, s2]):
            continue
        ext1 = _with_pattern(a, s2, pb)
        v1 = ((ext1,), (_with_pattern(a, s2, _merge_full(pa, pb)),
                        _with_pattern(b, s1, _merge_full(qa, qb))))
        ext2 = _with_pattern(a, s1, qb)
        v2 = ((ext2,), (_with_pattern(a, s1, _merge_full(qa, qb)),
                        _with_pattern(b, s2, _merge_full(pa, pb))))
        exts, enlarged = _pick_variant([v1, v2])
        if _sound((a, b), enlarged):
            out.append(TemplateMatch(7, (a, b), exts, enlarged,
                                     label=f"segs{s1}{s2}"))
    return out


_MATCH_CACHE: dict[tuple, list[TemplateMatch]] = {}


def match_templates(pis: list[Cube], spis: list[Cube] | None = None) -> list[TemplateMatch]:
    """Scan templates 1..7 in order over the given implicants.

    Special prime implicants participate wherever a cube of matching size
    and direction is required. Within a template, larger participants are
    tried first; results keep that order so a first-match policy is
    deterministic.
    """
    spis = spis or []
    key = (tuple((c.n, c.care, c.value) for c in pis),
           tuple((c.n, c.care, c.value) for c in spis))
    if key in _MATCH_CACHE:
        return _MATCH_CACHE[key]
    result = _match_templates(pis, spis)
    if len(_MATCH_CACHE) < 200000:
        _MATCH_CACHE[key] = result
    return result


def _match_templates(pis: list[Cube], spis: list[Cube]) -> list[TemplateMatch]:
    cubes = list(dict.fromkeys(list(pis) + list(spis)))
    if len(cubes) > 24:  # keep the scan tractable; prefer large implicants
        cubes = sorted(cubes, key=lambda c: (-c.size, c.literals))[:24]
    if not cubes:
        return []
    n = cubes[0].n
    segs = _two_line_segments(n)
    if not segs:
        return []
    pair_order = sorted(
        combinations(range(len(cubes)), 2),
        key=lambda ij: (-min(cubes[ij[0]].size, cubes[ij[1]].size),
                        -max(cubes[ij[0]].size, cubes[ij[1]].size),
                        cubes[ij[0]].literals, cubes[ij[1]].literals),
    )
    matches: list[TemplateMatch] = []
    for template_id in (1, 2, 3, 4, 5, 6, 7):
        if template_id == 6:
            if len(cubes) <= 10:
                triple_order = sorted(
                    permutations(range(len(cubes)), 3),
                    key=lambda t: (-min(cubes[i].size for i in t),
                                   tuple(cubes[i].literals for i in t)),
                )
                for i, j, k in triple_order:
                    matches.extend(_match_t6(cubes[i], cubes[j], cubes[k], segs))
            continue
        for i, j in pair_order:
            a, b = cubes[i], cubes[j]
            for x, y in ((a, b), (b, a)):
                if template_id == 1:
                    if x is a:  # symmetric; one orientation suffices
                        matches.extend(_match_t1(x, y, segs))
                elif template_id == 2:
                    matches.extend(_match_t2(x, y, segs))
                elif template_id == 3:
                    matches.extend(_match_t3(x, y, segs))
                elif template_id == 4:
                    matches.extend(_match_t4(x, y, segs))
                elif template_id == 5:
                    if x is a:
                        matches.extend(_match_t5(x, y, segs))
                elif template_id == 7:
                    if x is a:
                        matches.extend(_match_t7(x, y, segs))
    return matches
