#!/usr/bin/env python3
"""Does the analytic error rate match what actually happens?

Simulates many individual votings and compares the empirical failure
fraction against the closed-form tail probability, jury by jury.
"""

import numpy as np

from juryselect import Jury, jer_dp, monte_carlo_jer, simulate_vote

# Watch a single voting happen.
jury = Jury.from_epsilons([0.1, 0.2, 0.2, 0.3, 0.3])
outcome = simulate_vote(jury, ground_truth=1, seed=4)
print("one sampled voting on ground truth 1:")
print("  ballots     :", outcome.votes)
print("  wrong voters:", outcome.wrong_count)
print("  decision    :", outcome.decision, "(majority threshold is 3 of 5)")
print()

# Now the law of large numbers, across a spread of juries.
trials = 100_000
print(f"{trials:,} simulated votings per jury:")
print(f"{'jury error rates':34s} {'analytic':>9s} {'simulated':>9s} {'sigmas':>7s}")
rng = np.random.default_rng(99)
for index in range(8):
    n = int(rng.integers(1, 5)) * 2 + 1
    eps = [round(float(e), 2) for e in rng.uniform(0.05, 0.6, n)]
    jury = Jury.from_epsilons(eps)
    analytic = jer_dp(jury)
    estimate, _ = monte_carlo_jer(jury, trials, seed=index)
    sigma = np.sqrt(analytic * (1 - analytic) / trials)
    distance = abs(estimate - analytic) / sigma if sigma else 0.0
    print(f"{str(eps):34s} {analytic:9.5f} {estimate:9.5f} {distance:6.1f}s")
print()
print("Every estimate should sit within a few binomial standard errors of")
print("the closed form; that is the whole reason the tail math can be trusted.")
