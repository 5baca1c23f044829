"""Mixed-polarity C^mNOT gates and exact basis-state circuit simulation.

A gate flips its target line when every control is satisfied: a positive
control wants its line at 1, a negative control wants 0. Circuits apply
gates left to right to a minterm. Verification simulates the whole
permutation and compares against a target function.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .function_model import ReversibleFunction, line_mask

POS = True
NEG = False


@dataclass(frozen=True)
class Gate:
    """One C^mNOT: target line plus (line, polarity) controls. m=0 is NOT."""

    target: int
    controls: frozenset[tuple[int, bool]] = field(default_factory=frozenset)

    def __post_init__(self):
        lines = [line for line, _ in self.controls]
        if len(set(lines)) != len(lines):
            raise ValueError("duplicate control line")
        if self.target in lines:
            raise ValueError("target cannot also be a control")

    @property
    def num_controls(self) -> int:
        return len(self.controls)

    def lines(self) -> set[int]:
        return {self.target} | {line for line, _ in self.controls}

    def masks(self, n: int) -> tuple[int, int, int]:
        """(care_mask, want_bits, flip_mask) for evaluation on n lines."""
        return _masks(self.target, self.controls, n)

    def __str__(self) -> str:
        if not self.controls:
            return f"X(x{self.target})"
        ctrls = ",".join(
            f"x{line}" + ("" if pol else "'")
            for line, pol in sorted(self.controls)
        )
        name = {1: "CNOT", 2: "Toff"}.get(self.num_controls, f"C{self.num_controls}NOT")
        return f"{name}({ctrls},x{self.target})"


@lru_cache(maxsize=200000)
def _masks(target: int, controls: frozenset, n: int) -> tuple[int, int, int]:
    care = 0
    want = 0
    for line, pol in controls:
        m = line_mask(line, n)
        care |= m
        if pol:
            want |= m
    return care, want, line_mask(target, n)


def gate(target: int, *controls) -> Gate:
    """Shorthand: gate(1, 2, -3) is a Toffoli on x_1 with controls x_2, x_3'."""
    ctl = frozenset((abs(c), c > 0) for c in controls)
    return Gate(target, ctl)


def eval_gate(g: Gate, x: int, n: int) -> int:
    care, want, flip = g.masks(n)
    if (x & care) == want:
        return x ^ flip
    return x


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        for g in self.gates:
            for line in g.lines():
                if not 1 <= line <= self.n:
                    raise ValueError(f"gate line {line} outside [1, {self.n}]")

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.n != other.n:
            raise ValueError("line counts differ")
        return Circuit(self.n, self.gates + other.gates)


def eval_circuit(c: Circuit, x: int) -> int:
    n = c.n
    for g in c.gates:
        care, want, flip = g.masks(n)
        if (x & care) == want:
            x ^= flip
    return x


def to_permutation(c: Circuit) -> ReversibleFunction:
    n = c.n
    perm = list(range(1 << n))
    for g in c.gates:
        care, want, flip = g.masks(n)
        perm = [x ^ flip if (x & care) == want else x for x in perm]
    return ReversibleFunction(n, tuple(perm))


def reverse(c: Circuit) -> Circuit:
    """Gate order reversed; for self-inverse gates this is the inverse circuit."""
    return Circuit(c.n, tuple(reversed(c.gates)))


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    witness: int | None = None  # first mismatching input minterm
    got: int | None = None
    expected: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify(c: Circuit, f: ReversibleFunction) -> VerificationReport:
    if c.n != f.n:
        return VerificationReport(False, witness=None)
    for x in range(f.size):
        y = eval_circuit(c, x)
        if y != f.perm[x]:
            return VerificationReport(False, witness=x, got=y, expected=f.perm[x])
    return VerificationReport(True)
