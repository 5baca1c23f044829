"""End-to-end synthesis walkthrough.

Builds a random reversible function, inspects its difference vectors,
synthesizes a circuit, verifies it by exact simulation, and prices it.
"""
import random

from mqmsynth import (all_difference_vectors, from_permutation,
                      gate_histogram, report, synthesize, t_levels, verify,
                      write_real)

rng = random.Random(2026)
n = 5
perm = list(range(1 << n))
rng.shuffle(perm)
f = from_permutation(perm, n)

print(f"A random {n}-line reversible function:")
print(f"  F(00000) = {f(0):0{n}b},  F(11111) = {f((1 << n) - 1):0{n}b}")

print("\nDifference vectors (the minterms each line must stop disagreeing on):")
for v in all_difference_vectors(f):
    print(f"  line x{v.main}: {len(v.members):3d} members")

circuit = synthesize(f)
print(f"\nSynthesized {len(circuit.gates)} gates; "
      f"verified: {verify(circuit, f).ok}")
print(f"histogram by control count: {gate_histogram(circuit)}")
print(f"T-levels: {t_levels(circuit)}")

print("\nFirst lines of the circuit file:")
print("\n".join(write_real(circuit).splitlines()[:8]))

rep = report(circuit)
print(f"\nreport: {rep.as_dict()}")
