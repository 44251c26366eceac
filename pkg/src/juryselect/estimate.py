"""Per-user error rates and payment requirements from a micro-blog corpus.

Pipeline: parse forwarding chains out of tweet text, accumulate them into
a directed user graph, rank the graph (HITS authority or PageRank), then
squash scores into error rates with ``scores_to_error_rates``.  Payment
requirements come separately from account ages via
``ages_to_requirements``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import DegenerateScores, EmptyGraph
from .jer import EPSILON_CEIL, EPSILON_FLOOR

# Handles are runs of ASCII letters, digits and underscore after the
# forwarding marker; matching is case-sensitive.
_RETWEET_MARKER = re.compile(r"RT @(\w+)", re.ASCII)


@dataclass(frozen=True)
class TweetRecord:
    """One corpus record: who posted what, and optionally when they registered."""

    author: str
    content: str
    author_created_at: float | None = None

    def __post_init__(self):
        if not self.author:
            raise ValueError("tweet record needs a non-empty author")


@dataclass(frozen=True)
class UserGraph:
    """Directed retweet graph: edge (u, v) means u forwarded v's content.

    Edges deduplicate by construction and self-forwards are dropped; both
    would otherwise distort the rankings.
    """

    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset((u, v) for u, v in self.edges if u != v))
        for u, v in self.edges:
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge ({u!r}, {v!r}) has an endpoint outside nodes")

    @property
    def node_count(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class RankConfig:
    """Knobs for the ranking iterations and the score-to-error-rate squash."""

    damping: float = 0.85
    max_iterations: int = 100
    tolerance: float = 1e-8
    alpha: float = 10.0
    beta: float = 10.0

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")
        if not self.beta > 1.0:
            raise ValueError("beta must exceed 1")


@dataclass(frozen=True)
class ScoreMap:
    """Quality score per username; HITS runs also carry the hub side."""

    scores: dict[str, float]
    hubs: dict[str, float] | None = None


def parse_retweet_chains(record: TweetRecord) -> list[tuple[str, str]]:
    """Forwarding pairs implied by one tweet.

    Every "RT @name" occurrence extends the chain author -> u1 -> u2 -> ...
    in order of appearance; consecutive chain members become directed
    pairs.  A marker with no username character after it is ignored.
    """
    chain = [record.author, *_RETWEET_MARKER.findall(record.content)]
    return list(zip(chain, chain[1:]))


def build_graph(corpus: Iterable[TweetRecord]) -> UserGraph:
    """Accumulate a corpus into a deduplicated directed user graph.

    Every author becomes a node even without any forwarding relation;
    repeated pairs collapse to one edge and self-forwards are dropped.
    """
    nodes: set[str] = set()
    edges: set[tuple[str, str]] = set()
    for record in corpus:
        nodes.add(record.author)
        for u, v in parse_retweet_chains(record):
            nodes.add(u)
            nodes.add(v)
            if u != v:
                edges.add((u, v))
    return UserGraph(frozenset(nodes), frozenset(edges))


def _index_graph(graph: UserGraph):
    names = sorted(graph.nodes)
    index = {name: i for i, name in enumerate(names)}
    if graph.edges:
        pairs = sorted(graph.edges)
        src = np.array([index[u] for u, _ in pairs], dtype=np.intp)
        dst = np.array([index[v] for _, v in pairs], dtype=np.intp)
    else:
        src = np.zeros(0, dtype=np.intp)
        dst = np.zeros(0, dtype=np.intp)
    return names, src, dst


def hits(graph: UserGraph, config: RankConfig = RankConfig(), initial: float = 1.0) -> ScoreMap:
    """Authority and hub scores by mutual reinforcement.

    authority[v] = sum of hub over in-neighbours, then hub[u] = sum of the
    fresh authority over out-neighbours, each L2-normalized after its
    update.  Starts from all ones (times ``initial``; any positive start
    yields the same ranking) and stops once both vectors move less than
    the tolerance in L1, or at the iteration cap.  Authority is the
    quality score.
    """
    if not graph.nodes:
        raise EmptyGraph("ranking needs at least one node")
    if not initial > 0.0:
        raise ValueError("initial score must be positive")
    names, src, dst = _index_graph(graph)
    n = len(names)
    authority = np.full(n, initial)
    hub = np.full(n, initial)
    for _ in range(config.max_iterations):
        new_authority = np.zeros(n)
        np.add.at(new_authority, dst, hub[src])
        norm = np.linalg.norm(new_authority)
        if norm > 0.0:
            new_authority /= norm
        new_hub = np.zeros(n)
        np.add.at(new_hub, src, new_authority[dst])
        norm = np.linalg.norm(new_hub)
        if norm > 0.0:
            new_hub /= norm
        moved = np.abs(new_authority - authority).sum() + np.abs(new_hub - hub).sum()
        authority, hub = new_authority, new_hub
        if moved <= config.tolerance:
            break
    return ScoreMap(
        scores=dict(zip(names, authority.tolist())),
        hubs=dict(zip(names, hub.tolist())),
    )


def pagerank(graph: UserGraph, config: RankConfig = RankConfig(), initial: float = 1.0) -> ScoreMap:
    """Random-surfer scores with uniform redistribution of dangling mass.

    score[u] = (1-d)/n + d * (sum over in-neighbours of score/outdegree
    plus the pooled score of out-degree-zero nodes spread over everyone),
    which keeps the total mass at exactly 1 every iteration.  The start is
    uniform 1/n (times ``initial``; the iteration contracts to the same
    fixpoint from any positive start).
    """
    if not graph.nodes:
        raise EmptyGraph("ranking needs at least one node")
    if not initial > 0.0:
        raise ValueError("initial score must be positive")
    names, src, dst = _index_graph(graph)
    n = len(names)
    out_degree = np.zeros(n)
    np.add.at(out_degree, src, 1.0)
    dangling = out_degree == 0.0
    score = np.full(n, initial / n)
    d = config.damping
    for _ in range(config.max_iterations):
        inbound = np.zeros(n)
        if src.size:
            np.add.at(inbound, dst, score[src] / out_degree[src])
        shared = score[dangling].sum() / n
        new_score = (1.0 - d) / n + d * (inbound + shared)
        moved = np.abs(new_score - score).sum()
        score = new_score
        if moved <= config.tolerance:
            break
    return ScoreMap(scores=dict(zip(names, score.tolist())))


def scores_to_error_rates(
    scores: Union[ScoreMap, Mapping[str, float]],
    config: RankConfig = RankConfig(),
) -> dict[str, float]:
    """Squash quality scores into individual error rates.

    eps = beta ** (-alpha * (score - min) / (max - min)), so the top score
    maps to beta**-alpha and the bottom to 1, then clamped into
    [1e-6, 1 - 1e-6].  Higher score means strictly lower error rate.
    """
    table = scores.scores if isinstance(scores, ScoreMap) else dict(scores)
    if not table:
        raise DegenerateScores("no users to normalize")
    values = np.array(list(table.values()), dtype=float)
    low, high = float(values.min()), float(values.max())
    if high == low:
        raise DegenerateScores("all quality scores identical; no ranking information")
    span = high - low
    return {
        user: min(max(config.beta ** (-config.alpha * (value - low) / span), EPSILON_FLOOR), EPSILON_CEIL)
        for user, value in table.items()
    }


def ages_to_requirements(ages: Mapping[str, float]) -> dict[str, float]:
    """Min-max normalize account ages into payment requirements in [0, 1].

    All-equal ages (including a single user) give everyone requirement 0,
    the reading that keeps every juror affordable.
    """
    if not ages:
        return {}
    values = np.array(list(ages.values()), dtype=float)
    low, high = float(values.min()), float(values.max())
    if high == low:
        return {user: 0.0 for user in ages}
    span = high - low
    return {user: (float(age) - low) / span for user, age in ages.items()}
