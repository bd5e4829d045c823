"""The best fixed-order circuit cannot match the superposed-order switch.

Any strategy that queries gate 1 then gate 2 in a definite order (with
arbitrary processing before, between, and after) is a quantum comb.
Maximizing the average success probability over the two promise classes is a
small SDP; its optimum is about 0.9288, strictly below the switch's 1.0.
"""

from qswitch import RandomSource
from qswitch.comb import evaluate_comb, objective_operator, optimize_fixed_order
from qswitch.gates import sample_pairs
from qswitch.waveplates import table_gate_pairs

print("Estimating the class-averaged score operator (200k Haar samples)...")
omega = objective_operator(n_samples=200_000, rng=RandomSource(0))
print(f"  Monte Carlo entry-wise standard error: {omega.entry_stderr:.2e}")

print("Optimizing over fixed-order strategies (ADMM)...")
result = optimize_fixed_order(omega)
print(f"  optimal success probability: {result.p_succ:.6f}")
print(f"  iterations: {result.iterations}, "
      f"primal residual {result.primal_residual:.1e}")
print(f"  comb feasibility residuals: "
      + ", ".join(f"{k}={v:.1e}" for k, v in result.residuals.items()))

print("\nScoring the optimal fixed-order comb on concrete pairs:")
print(f"  100 packaged wave-plate table pairs: "
      f"{evaluate_comb(result.comb, table_gate_pairs()):.4f}")
fresh = sample_pairs(RandomSource(1), 500, 500)
print(f"  1000 freshly sampled pairs:          "
      f"{evaluate_comb(result.comb, fresh):.4f}")
print("\nThe superposed-order switch succeeds with probability 1 on the")
print("same promise, so it beats every fixed-order strategy.")
