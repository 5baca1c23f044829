"""Suffix-pattern factoring on the bundled 7-line alu benchmark.

Its difference vector on line 6 has 64 members, but only two distinct
3-bit suffix patterns, each complementing the other — so the vector
factors into a prefix function XOR a suffix function, and each factor
is minimized over its own lines.
"""
from mqmsynth import (complement_shortcut, difference_vector, find_patterns,
                      synthesize, synthesize_decomposed, t_levels, verify)
from mqmsynth.fixtures import alu_bdd_288

f = alu_bdd_288()
v6 = difference_vector(f, 6)
print(f"V6 has {len(v6.members)} members over {f.n} lines")

split = find_patterns(v6, mid=5)
for k, (h, g) in enumerate(zip(split.subfunctions, split.groups), 1):
    print(f"pattern {k}: suffixes {sorted(format(s, '03b') for s in h)}")
    print(f"  under prefixes {sorted(format(p, '04b') for p in g)}")

reduced = complement_shortcut(split)
print("\ncomplement shortcut applies:", reduced is not None)
h2, g1 = reduced
print("reduced form: suffix-set XOR prefix-set "
      f"({len(h2)} suffixes, {len(g1)} prefixes)")

gates = synthesize_decomposed(v6)
print("\nfactor gates clearing V6:")
for g in gates:
    print(f"  {g}")

circuit = synthesize(f)
print(f"\nwhole function: {len(circuit.gates)} gates, "
      f"T-levels {t_levels(circuit)}, verified {verify(circuit, f).ok}")
