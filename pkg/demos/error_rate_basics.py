#!/usr/bin/env python3
"""How likely is a majority vote to be wrong?

Walks through the seven-voter motivating pool: single voters, a mediocre
trio, and why a five-member jury beats both the three- and seven-member
ones even though it contains strictly more noise.
"""

from juryselect import (
    Juror,
    Jury,
    jer_cba,
    jer_dp,
    jer_lower_bound,
    jer_naive,
    wrong_count_distribution,
)

people = {name: eps for name, eps in zip("ABCDEFG", [0.1, 0.2, 0.2, 0.3, 0.3, 0.4, 0.4])}
print("candidates:", ", ".join(f"{n}={e}" for n, e in people.items()))
print()

# One unreliable trio: C, D and E.
trio = Jury(tuple(Juror(n, people[n]) for n in "CDE"))
print("jury C,D,E  :", f"error rate {jer_naive(trio):.6f}",
      "(better than any of its members alone)")

# The three most reliable people.
best3 = Jury(tuple(Juror(n, people[n]) for n in "ABC"))
print("jury A,B,C  :", f"error rate {jer_dp(best3):.6f}")

# Growing the jury keeps helping... until it does not.
for names in ("ABCDE", "ABCDEFG"):
    jury = Jury(tuple(Juror(n, people[n]) for n in names))
    print(f"jury {','.join(names)}: error rate {jer_dp(jury):.6f}")
print()
print("Five members beat three, but seven are worse than five: the two")
print("0.4 voters drag the majority down more than they help.")
print()

# All three algorithms agree; they just scale differently.
jury5 = Jury(tuple(Juror(n, people[n]) for n in "ABCDE"))
print("same jury, three routes:")
print("  subset enumeration:", f"{jer_naive(jury5):.12f}")
print("  tail recurrence   :", f"{jer_dp(jury5):.12f}")
print("  convolution + tail:", f"{jer_cba(jury5):.12f}")
print()

# The full distribution of how many members vote wrong.
dist = wrong_count_distribution(jury5)
print("wrong-count distribution of A..E:")
for k, p in enumerate(dist.mass):
    bar = "#" * int(round(p * 60))
    print(f"  {k} wrong: {p:8.5f} {bar}")
print()

# A cheap lower bound screens hopeless juries without the full math.
bad = Jury.from_epsilons([0.8, 0.8, 0.8])
diag = jer_lower_bound(bad)
print("all-0.8 trio: moment bound says error rate >=", f"{diag.bound:.4f},")
print("actual is", f"{jer_dp(bad):.4f}", "- no need to evaluate such juries in full.")
