"""Histograms and T-levels of the bundled reference circuits.

Only gates with two or more controls carry T stages; the per-count
table is 2, 12, 32, 68 for 2..5 controls. The bundled library
histograms price the same benchmarks realized with larger gates.
"""
from mqmsynth import gate_histogram, t_levels, t_levels_of_histogram
from mqmsynth.fixtures import PROPOSED, proposed_circuit, revlib_histograms

library = revlib_histograms()
print(f"{'benchmark':>16} {'library T':>10} {'reference T':>12}  gate histogram")
for name in PROPOSED:
    circuit = proposed_circuit(name)
    lib = t_levels_of_histogram(library[name]["histogram"])
    ours = t_levels(circuit)
    print(f"{name:>16} {lib:>10} {ours:>12}  {gate_histogram(circuit)}")

total_lib = sum(t_levels_of_histogram(r["histogram"]) for r in library.values())
total_ref = sum(t_levels(proposed_circuit(n)) for n in PROPOSED)
print(f"\ntotals: library {total_lib}, reference {total_ref}")
