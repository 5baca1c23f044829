"""Gate histograms and the T-level cost figure.

Multi-controlled gates dominate fault-tolerant cost through their T-gate
stages; NOT and CNOT are Clifford and free. The default per-control-count
table was recovered by solving the published benchmark figures as a
linear system (it is overdetermined and consistent). Control polarity
never changes the cost.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .gate_model import Circuit


class UnknownCost(KeyError):
    """No T-level figure for this control count."""


DEFAULT_T_LEVELS = {0: 0, 1: 0, 2: 2, 3: 12, 4: 32, 5: 68}


@dataclass(frozen=True)
class CostTable:
    t_levels_by_controls: dict[int, int] = field(
        default_factory=lambda: dict(DEFAULT_T_LEVELS))

    def __post_init__(self):
        items = sorted(self.t_levels_by_controls.items())
        prev = 0
        for m, cost in items:
            if cost < 0 or cost < prev:
                raise ValueError("cost table must be nonnegative and monotone")
            prev = cost

    def cost(self, num_controls: int) -> int:
        try:
            return self.t_levels_by_controls[num_controls]
        except KeyError:
            raise UnknownCost(
                f"no T-level cost for {num_controls} controls; extend the "
                f"table (MQM_COST_TABLE or --cost-table)") from None


DEFAULT_COST_TABLE = CostTable()


def gate_histogram(circuit: Circuit) -> dict[int, int]:
    """Gate counts keyed by control count, polarity-agnostic."""
    hist: dict[int, int] = {}
    for g in circuit.gates:
        m = g.num_controls
        hist[m] = hist.get(m, 0) + 1
    return dict(sorted(hist.items()))


def t_levels(circuit: Circuit, table: CostTable = DEFAULT_COST_TABLE) -> int:
    return sum(table.cost(g.num_controls) for g in circuit.gates)


def t_levels_of_histogram(hist: dict[int, int],
                          table: CostTable = DEFAULT_COST_TABLE) -> int:
    return sum(count * table.cost(int(m)) for m, count in hist.items())


@dataclass(frozen=True)
class CostReport:
    n: int
    gate_count: int
    histogram: dict[int, int]
    t_levels: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "gates": {str(m): c for m, c in sorted(self.histogram.items())},
            "gate_count": self.gate_count,
            "t_levels": self.t_levels,
        }


def report(circuit: Circuit, table: CostTable = DEFAULT_COST_TABLE) -> CostReport:
    hist = gate_histogram(circuit)
    return CostReport(circuit.n, len(circuit.gates), hist,
                      t_levels(circuit, table))


def parse_cost_table(text: str) -> CostTable:
    """Override file format: one `m=<int> cost=<int>` entry per line."""
    table = dict(DEFAULT_T_LEVELS)
    for raw in text.splitlines():
        entry = raw.split("#", 1)[0].strip()
        if not entry:
            continue
        parts = dict(p.split("=", 1) for p in entry.split())
        table[int(parts["m"])] = int(parts["cost"])
    return CostTable(table)
