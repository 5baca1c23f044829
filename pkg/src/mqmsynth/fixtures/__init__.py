"""Bundled benchmark fixtures.

worked4.tt is a 4-line truth table used throughout the tests. The alu
benchmark is reconstructed from its two bundled difference-vector
listings: the first lists V_6 of the function itself; the second lists
V_7 of the function after the V_6-clearing block (whose accumulation on
line 7 is deliberately left in place for the second block to absorb).
The proposed/ directory holds reference circuits; revlib_histograms.json
holds gate histograms of the corresponding library benchmarks.
"""
from __future__ import annotations

import json
from importlib import resources

from ..function_model import ReversibleFunction, from_permutation
from ..gate_model import Circuit, eval_gate, gate
from ..io_real import parse_real, parse_tt

PROPOSED = ["4mod5-bdd_287", "alu-bdd_288", "f2_232", "rd53_251",
            "dc1_220", "z4_268", "cm152a_212"]

# gates whose input-side application clears the alu's V_6 (line 7 is the
# accumulator and stays dirty until the V_7 block)
ALU_V6_BLOCK = (gate(7, -2, 4), gate(7, -3, -4), gate(7, -1), gate(6, 7))


def _read(name: str) -> str:
    return resources.files("mqmsynth.fixtures").joinpath(name).read_text()


def worked4() -> ReversibleFunction:
    return parse_tt(_read("worked4.tt"))


def alu_v6_members() -> frozenset[int]:
    return frozenset(int(s, 2) for s in _read("alu_v6_members.txt").split())


def alu_v7_members() -> frozenset[int]:
    """Members of V_7 after the V_6 block has been applied."""
    return frozenset(int(s, 2) for s in _read("alu_v7_members.txt").split())


def alu_bdd_288() -> ReversibleFunction:
    v7 = alu_v7_members()
    perm = []
    for x in range(128):
        y = x
        for g in ALU_V6_BLOCK:
            y = eval_gate(g, y, 7)
        perm.append(y ^ (1 if y in v7 else 0))
    return from_permutation(perm, 7)


def alu_bdd_288_tt() -> ReversibleFunction:
    return parse_tt(_read("alu_bdd_288.tt"))


def proposed_circuit(name: str) -> Circuit:
    return parse_real(_read(f"proposed/{name}.real"))


def alu_s5_variant() -> Circuit:
    """The alternate alu listing with a positive fourth-line control in
    the second Toffoli."""
    return parse_real(_read("proposed/alu-bdd_288_s5.real"))


def revlib_histograms() -> dict:
    out = {}
    for name in PROPOSED:
        rec = json.loads(_read(f"revlib/{name}.json"))
        out[name] = rec
    return out


def revlib_fixture_path(name: str):
    return resources.files("mqmsynth.fixtures").joinpath(f"revlib/{name}.json")
