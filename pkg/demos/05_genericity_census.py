"""Monte Carlo evidence that random states have no symmetry at all.

At n >= 5 qubits every Haar sample comes back with a zero-dimensional
Lie stabilizer, an empty discrete search, and a nonzero pinning
invariant -- the full pipeline's strongest verdict.  At n = 3 the
picture flips: no sample has a trivial stabilizer.
"""

from localsym import SearchBudget, benchmark_census, genericity_report

budget = SearchBudget(restarts=16)

for n, samples in ((3, 10), (4, 10), (5, 10)):
    report = genericity_report(n, samples, seed=0, budget=budget)
    print(f"n={n}: lie-trivial {report.fraction_lie_trivial:.0%}, "
          f"fully trivial {report.fraction_gtilde_trivial:.0%}")

# Named benchmark battery with per-state findings.
print()
for row in benchmark_census(seed=0, budget=budget):
    print(f"{row['state']:<22} n={row['n']} lie_dim={row['lie_dim']} "
          f"verdict={row['gtilde_verdict']}"
          + (f" ({row['failed_gate']})" if row['failed_gate'] else ""))
