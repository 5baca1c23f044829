"""The bundled four-line function, cleared one difference vector at a time.

Shows the scoring of complementary member pairs, the special-pair
blocks that act as free shared cells, and the gates the engine emits
for the first vector.
"""
from mqmsynth import (detect_spis, difference_vector, evaluate_vector,
                      score_minterms, synthesize, t_levels, verify)
from mqmsynth.fixtures import worked4

f = worked4()
v1 = difference_vector(f, 1)
print("V1 members:", [format(x, "04b") for x in v1.members])

print("\nScores (-1: the complement in the x1 direction is also a member):")
for s in score_minterms(v1):
    print(f"  {s.index:04b} -> {s.score}")

print("\nSpecial prime implicants (score-0 blocks, free to share):")
for c in detect_spis(v1):
    print(f"  {c} covering {[format(x, '04b') for x in c.cells()]}")

gates, updated = evaluate_vector(f, 1)
print("\nGates clearing V1:")
for g in gates:
    print(f"  {g}")
print("V1 after:", list(difference_vector(updated, 1).members))

circuit = synthesize(f)
print(f"\nFull synthesis: {len(circuit.gates)} gates, "
      f"T-levels {t_levels(circuit)}, verified {verify(circuit, f).ok}")
