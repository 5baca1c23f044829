"""Odd-cover selection and ESOP (XOR-of-cubes) extraction.

Everything here works under XOR semantics: a set of cubes "covers" a
function when every true minterm lies under an odd number of cubes and
every false minterm under an even number. Cells marked don't-care may
end up under any parity; this is what lets shared cells enlarge
implicants for free.
"""
from __future__ import annotations

from functools import lru_cache

from .cubes import Cube, maximal_cubes
from .function_model import line_mask


class NoOddCover(ValueError):
    """The offered prime implicants cannot form an odd cover."""


# T-levels per control count; NOT/CNOT are Clifford and cost nothing.
# Used to rank candidate covers during search (same table as cost_model).
_T_BY_CONTROLS = {0: 0, 1: 0, 2: 2, 3: 12, 4: 32, 5: 68}


def control_cost(num_controls: int) -> int:
    if num_controls in _T_BY_CONTROLS:
        return _T_BY_CONTROLS[num_controls]
    return 68 * (1 << (num_controls - 5))  # monotone extension past the table


def cube_cost(cube: Cube, exclude_line: int | None = None) -> int:
    m = cube.num_literals
    if exclude_line is not None and cube.care & line_mask(exclude_line, cube.n):
        m -= 1
    return control_cost(m)


def cover_cost(cubes: list[Cube], exclude_line: int | None = None) -> int:
    return sum(cube_cost(c, exclude_line) for c in cubes)


def select_cover(pis: list[Cube], members) -> list[Cube]:
    """Choose cubes from `pis` whose XOR equals the membership indicator.

    Preference order: most negative score first, then larger, then
    lexicographically smaller literal string. Raises NoOddCover when the
    given implicants cannot produce the required parity.
    """
    members = set(members)
    if not members:
        return []
    cells: set[int] = set(members)
    for c in pis:
        cells.update(c.cells())
    cell_ix = {x: i for i, x in enumerate(sorted(cells))}
    target = 0
    for x in members:
        target |= 1 << cell_ix[x]

    ordered = sorted(pis, key=lambda c: (c.score, -c.size, c.literals))
    # Greedy GF(2) elimination over candidate cubes in preference order.
    basis: list[tuple[int, int]] = []  # (vector, chosen-set mask)
    for j, c in enumerate(ordered):
        vec = 0
        for x in c.cells():
            vec |= 1 << cell_ix[x]
        combo = 1 << j
        for bvec, bcombo in basis:
            low = bvec & -bvec
            if vec & low:
                vec ^= bvec
                combo ^= bcombo
        if vec:
            basis.append((vec, combo))
    resid = target
    chosen = 0
    for bvec, bcombo in basis:
        low = bvec & -bvec
        if resid & low:
            resid ^= bvec
            chosen ^= bcombo
    if resid:
        raise NoOddCover("prime implicants cannot cover members with odd parity")
    picked = [ordered[j] for j in range(len(ordered)) if (chosen >> j) & 1]
    picked.sort(key=lambda c: (c.score, -c.size, c.literals))
    return picked


# ---------------------------------------------------------------------------
# ESOP extraction with don't-cares
# ---------------------------------------------------------------------------

def _project_cell(x: int, lines: list[int], n: int) -> int:
    y = 0
    for line in lines:
        y = (y << 1) | ((x >> (n - line)) & 1)
    return y


def _lift_cube(care: int, value: int, lines: list[int], n: int) -> Cube:
    full_care = full_value = 0
    v = len(lines)
    for i, line in enumerate(lines):
        bit = (v - 1) - i
        m = line_mask(line, n)
        if (care >> bit) & 1:
            full_care |= m
            if (value >> bit) & 1:
                full_value |= m
    return Cube(n, full_care, full_value)


def esop_cover(target, dc, n: int, lines: list[int] | None = None,
               exact_var_cap: int = 5, node_budget: int = 30000) -> list[Cube]:
    """XOR cover of `target` (minterms over the full n-line space) with
    don't-cares `dc`, using cubes over `lines` only.

    Pipeline: project onto `lines`, drop lines the specification ignores
    (possible whenever no care pair straddles the line with conflicting
    values), run an exact minimum-T-cost search on small residual spaces,
    fall back to a greedy cover otherwise. The result always satisfies
    the parity contract: odd on target, even on specified-false cells.
    """
    if lines is None:
        lines = list(range(1, n + 1))
    target = set(target)
    dc = set(dc) - target
    if not target:
        return []

    lines_now = sorted(lines)
    t_now = {_project_cell(x, lines_now, n) for x in target}
    dc_now: set[int] = set()
    for x in dc:
        p = _project_cell(x, lines_now, n)
        if p not in t_now:
            dc_now.add(p)

    changed = True
    while changed and len(lines_now) > 1:
        changed = False
        for idx in range(len(lines_now)):
            dropped = _try_drop(t_now, dc_now, len(lines_now), idx)
            if dropped is not None:
                t_now, dc_now = dropped
                del lines_now[idx]
                changed = True
                break

    v = len(lines_now)
    cubes_local = None
    if v <= exact_var_cap:
        cubes_local = _exact_esop(t_now, dc_now, v, node_budget)
    if cubes_local is None:
        cubes_local = _greedy_esop(t_now, dc_now, v)
    return [_lift_cube(care, value, lines_now, n) for care, value in cubes_local]


def _try_drop(target: set[int], dc: set[int], v: int, idx: int):
    """Project out variable `idx` (0 = MSB) unless a care pair conflicts.

    A conflict is a target cell whose partner across the variable is a
    specified-false cell; pairs with a don't-care half inherit the
    specified value, and all-don't-care pairs stay free.
    """
    bit = 1 << (v - 1 - idx)
    for x in target:
        partner = x ^ bit
        if partner not in target and partner not in dc:
            return None
    new_t = {_squeeze(x, bit) for x in target}
    new_dc = {_squeeze(x, bit) for x in dc
              if (x ^ bit) in dc and _squeeze(x, bit) not in new_t}
    return new_t, new_dc


def _squeeze(x: int, bit: int) -> int:
    high = x & ~(2 * bit - 1)
    low = x & (bit - 1)
    return (high >> 1) | low


def _cube_cells_mask(care: int, value: int, v: int) -> int:
    mask = 0
    free = [b for b in range(v) if not (care >> b) & 1]
    for k in range(1 << len(free)):
        x = value
        for j, b in enumerate(free):
            if (k >> j) & 1:
                x |= 1 << b
        mask |= 1 << x
    return mask


@lru_cache(maxsize=32)
def _all_cubes(v: int):
    """Every cube over v vars as (care, value, cells_mask, cost, nlit)."""
    out = []
    for care in range(1 << v):
        nlit = bin(care).count("1")
        cost = control_cost(nlit)
        val = 0
        while True:
            out.append((care, val, _cube_cells_mask(care, val, v), cost, nlit))
            if val == care:
                break
            val = (val - care) & care
    out.sort(key=lambda t: (t[3], t[4], t[0], t[1]))
    return tuple(out)


_EXACT_CACHE: dict[tuple[int, int, int], object] = {}


def _exact_esop(target: set[int], dc: set[int], v: int, node_budget: int):
    """Minimum (T-cost, cube count) XOR cover via uniform-cost search over
    residual parity states. Returns None when the node budget runs out."""
    care_mask = 0
    want = 0
    for x in range(1 << v):
        if x in dc:
            continue
        care_mask |= 1 << x
        if x in target:
            want |= 1 << x
    if want == 0:
        return []

    key = (v, care_mask, want)
    if key in _EXACT_CACHE:
        return _EXACT_CACHE[key]
    result = _exact_esop_search(want, care_mask, v, node_budget)
    if len(_EXACT_CACHE) < 400000:
        _EXACT_CACHE[key] = result
    return result


def _affine_basis(v: int, care_mask: int) -> list[int]:
    """Indicator bitmasks, restricted to care cells, of 1 and each x_i.
    Single-literal cubes cost nothing, so their XOR span (the affine
    functions) is the free layer of any cover."""
    full = (1 << (1 << v)) - 1
    basis = [full & care_mask]
    for i in range(v):
        bit = 1 << (v - 1 - i)
        vec = 0
        for x in range(1 << v):
            if x & bit:
                vec |= 1 << x
        basis.append(vec & care_mask)
    return basis


def _affine_solve(resid: int, basis: list[int]):
    """Coefficients (as a bit set over basis) with XOR equal to resid, of
    minimal non-constant support; None if resid is not affine mod DC."""
    rows = []  # (vector, combo)
    for j, b in enumerate(basis):
        vec, combo = b, 1 << j
        for rv, rc in rows:
            if vec & (rv & -rv):
                vec ^= rv
                combo ^= rc
        if vec:
            rows.append((vec, combo))
    vec, combo = resid, 0
    for rv, rc in rows:
        if vec & (rv & -rv):
            vec ^= rv
            combo ^= rc
    if vec:
        return None
    # null space: basis vectors reduced to zero
    null = []
    for j, b in enumerate(basis):
        vec, c = b, 1 << j
        for rv, rc in rows:
            if vec & (rv & -rv):
                vec ^= rv
                c ^= rc
        if vec == 0 and c:
            null.append(c)
    best = combo
    if null and len(null) <= 12:
        for k in range(1 << len(null)):
            c = combo
            kk = k
            idx = 0
            while kk:
                if kk & 1:
                    c ^= null[idx]
                kk >>= 1
                idx += 1
            if bin(c >> 1).count("1") < bin(best >> 1).count("1"):
                best = c
    return best


def _affine_cubes(combo: int, v: int):
    """Realize an affine coefficient set as single-literal cubes; the
    constant is absorbed by negating one literal when possible."""
    const = combo & 1
    lines = [i for i in range(v) if (combo >> (i + 1)) & 1]
    out = []
    for idx, i in enumerate(lines):
        bit = 1 << (v - 1 - i)
        if const and idx == 0:
            out.append((bit, 0))  # negative literal carries the constant
            const = 0
        else:
            out.append((bit, bit))
    if const:
        out.append((0, 0))  # bare NOT
    return out


def _violated_flat(resid: int, care_mask: int, v: int) -> int:
    """A fully-specified 2-flat with odd parity (affine functions have
    even parity on every such flat); 0 when none exists."""
    for i in range(v):
        bi = 1 << (v - 1 - i)
        for j in range(i + 1, v):
            bj = 1 << (v - 1 - j)
            for a in range(1 << v):
                if a & (bi | bj):
                    continue
                mask = ((1 << a) | (1 << (a | bi)) | (1 << (a | bj))
                        | (1 << (a | bi | bj)))
                if mask & ~care_mask:
                    continue
                if bin(resid & mask).count("1") & 1:
                    return mask
    return 0


def _exact_esop_search(want: int, care_mask: int, v: int, node_budget: int):
    basis = _affine_basis(v, care_mask)
    combo = _affine_solve(want, basis)
    if combo is not None:
        return _affine_cubes(combo, v)

    expensive = [(care, val, cells & care_mask, cost, nl)
                 for care, val, cells, cost, nl in _all_cubes(v) if nl >= 2]
    max_k = 3 if v <= 4 else 2
    best: tuple[int, int, list] | None = None  # (cost, count, cubes)
    nodes = [0]

    def dfs(resid: int, k: int, cost: int, picks: list):
        nonlocal best
        nodes[0] += 1
        if nodes[0] > node_budget:
            return
        combo = _affine_solve(resid, basis)
        if combo is not None:
            affine = _affine_cubes(combo, v)
            key = (cost, len(picks) + len(affine))
            if best is None or key < (best[0], best[1]):
                best = (cost, len(picks) + len(affine),
                        [(c, val) for c, val, *_ in picks] + affine)
            return
        if k == 0:
            return
        # any solution must fix the witnessed odd 2-flat with some cube
        # covering an odd number of its cells; branch on that cube
        flat = _violated_flat(resid, care_mask, v)
        for cube in expensive:
            care, val, cells, ccost, _nl = cube
            if best is not None and cost + ccost >= best[0]:
                break  # cost-ordered list
            if flat and bin(cells & flat).count("1") % 2 == 0:
                continue
            if cube in picks:
                continue
            picks.append(cube)
            dfs(resid ^ cells, k - 1, cost + ccost, picks)
            picks.pop()

    dfs(want, max_k, 0, [])
    return best[2] if best else None


def _greedy_esop(target: set[int], dc: set[int], v: int):
    """Always-terminating greedy XOR cover (odd on target, even elsewhere)."""
    care_mask = 0
    want = 0
    for x in range(1 << v):
        if x in dc:
            continue
        care_mask |= 1 << x
        if x in target:
            want |= 1 << x

    if v <= 5:
        candidates = _all_cubes(v)
    elif len(target) + len(dc) > 2048:
        candidates = []  # wide spaces: settle for the singleton sweep
    else:
        candidates = []
        base = [Cube.from_minterm(x, v) for x in sorted(target | dc)]
        for c in maximal_cubes(base):
            cells = 0
            for x in c.cells():
                cells |= 1 << x
            candidates.append((c.care, c.value, cells,
                               control_cost(c.num_literals), c.num_literals))
        full = (1 << v) - 1
        for x in sorted(target):
            candidates.append((full, x, 1 << x, control_cost(v), v))
        candidates.sort(key=lambda t: (t[3], t[4], t[0], t[1]))

    out = []
    resid = want
    guard = 4 * (bin(want).count("1") + 1)
    while resid and guard:
        guard -= 1
        cell_bit = resid & -resid
        best = None
        for care, value, cells, cost, nl in candidates:
            if not cells & cell_bit:
                continue
            gain = bin(cells & resid).count("1") - bin(cells & care_mask & ~resid).count("1")
            key = (-gain, cost, nl, care, value)
            if best is None or key < best[0]:
                best = (key, care, value, cells)
        if best is None:
            break
        _, care, value, cells = best
        out.append((care, value))
        resid ^= cells & care_mask
    while resid:  # singleton sweep: unconditional progress
        cell = (resid & -resid).bit_length() - 1
        out.append(((1 << v) - 1, cell))
        resid ^= resid & -resid
    return out
