#!/usr/bin/env python3
"""From raw tweets to a hired jury.

Builds a small forwarding corpus in a temp directory, extracts the
directed user graph from the "RT @name" chains, ranks users two ways,
squashes scores into error rates, prices users by account age, and
finally selects a jury under a budget.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from juryselect import (
    Juror,
    RankConfig,
    build_graph,
    compare_results,
    rank_candidates,
    solve_oracle,
    solve_paym_greedy,
)
from juryselect.io import read_corpus, write_corpus
from juryselect.estimate import TweetRecord

rng = np.random.default_rng(2012)

# A tiny community: a couple of celebrities everyone forwards, some
# regulars, and lurkers who only post.  Older accounts get priced higher.
users = [f"user{i:02d}" for i in range(18)]
created = {u: 1_100_000_000 + int(rng.integers(0, 250_000_000)) for u in users}
weights = 1.0 / np.arange(1, len(users) + 1) ** 1.2
weights /= weights.sum()

records = [TweetRecord(u, "first post!", created[u]) for u in users]
for _ in range(140):
    author = users[int(rng.integers(len(users)))]
    target = users[int(rng.choice(len(users), p=weights))]
    if target == author:
        continue
    style = rng.integers(3)
    if style == 0:
        content = f"RT @{target} this"
    elif style == 1:
        content = f"so true RT @{target} wisdom"
    else:
        middle = users[int(rng.choice(len(users), p=weights))]
        content = f"lol RT @{middle} yes RT @{target} original"
    records.append(TweetRecord(author, content))

workdir = Path(tempfile.mkdtemp(prefix="juryselect-demo-"))
corpus = workdir / "corpus.ndjson"
write_corpus(corpus, records)
print(f"wrote {len(records)} records to {corpus}")

graph = build_graph(read_corpus(corpus))
print(f"user graph: {len(graph.nodes)} nodes, {len(graph.edges)} distinct forwarding edges")
print()

config = RankConfig(alpha=10, beta=10)
for method in ("hits", "pagerank"):
    rows = rank_candidates(corpus, method, config)
    print(f"--- top 8 by {method} ---")
    print(f"{'user':8s} {'score':>10s} {'error rate':>11s} {'fee':>6s}")
    for row in rows[:8]:
        print(
            f"{row['username']:8s} {row['score']:10.5f} "
            f"{row['epsilon']:11.2e} {row['requirement']:6.3f}"
        )
    print()

# Hire a jury from the pagerank top 12 under a tight budget.
rows = rank_candidates(corpus, "pagerank", config)[:12]
pool = [Juror(r["username"], r["epsilon"], r["requirement"]) for r in rows]
total_fees = sum(j.requirement for j in pool)
for fraction in (0.05, 0.2, 0.5):
    budget = fraction * total_fees
    greedy = solve_paym_greedy(pool, budget)
    truth = solve_oracle(pool, budget)
    agreement = compare_results(greedy, truth)
    print(
        f"budget {budget:6.3f} ({fraction:4.0%} of all fees): "
        f"hired {sorted(greedy.member_ids)} at cost {greedy.total_cost:.3f}, "
        f"error rate {greedy.jer:.2e} (optimal {truth.jer:.2e}, "
        f"precision {agreement.precision:.2f})"
    )
