"""Compiling polarization gates to quarter/half/quarter wave-plate angles.

Any single-qubit unitary factors (up to a global phase) as QWP(q2) HWP(h)
QWP(q1).  The decomposition here is closed-form, and the packaged angle
tables are checked against it: the four Pauli rows and the 50 commuting /
50 anti-commuting pairs all reconstruct their intended gates.
"""

import numpy as np

from qswitch import RandomSource, exit_probabilities
from qswitch.gates import haar_random_unitaries
from qswitch.linalg import SY, frobenius_distance_up_to_phase
from qswitch.switch import Verdict
from qswitch.waveplates import decompose, table_gate_pairs, triple_to_unitary

t = decompose(SY)
print("Pauli Y compiles to plate angles (degrees):")
print(f"  QWP {t.q_first:.2f}, HWP {t.h:.2f}, QWP {t.q_last:.2f}")
print(f"  reconstruction distance: "
      f"{frobenius_distance_up_to_phase(triple_to_unitary(t), SY):.2e}")

print("\nRound-trip over 1000 Haar-random gates:")
rng = RandomSource(0)
worst = max(
    frobenius_distance_up_to_phase(triple_to_unitary(decompose(u)), u)
    for u in haar_random_unitaries(rng, 1000)
)
print(f"  worst phase-invariant Frobenius distance: {worst:.2e}")

print("\nPackaged 100-pair angle table:")
pairs = table_gate_pairs()
success = []
for pair in pairs:
    out = exit_probabilities(pair.u1, pair.u2)
    success.append(out.p0 if pair.label is Verdict.COMMUTE else out.p1)
print(f"  pairs: {len(pairs)} "
      f"({sum(p.label is Verdict.COMMUTE for p in pairs)} commuting)")
print(f"  mean ideal switch success: {np.mean(success):.8f}")
print(f"  worst single pair:         {min(success):.8f}")
