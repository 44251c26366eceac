"""Jury selection from a candidate pool.

Two cost models:

* free enrollment -- every subset is allowed; sorting candidates by error
  rate makes the best jury of each size a prefix, so ``solve_altrm`` scans
  odd prefixes and is exactly optimal, optionally skipping prefixes whose
  tail lower bound already exceeds the best error rate seen;
* paid enrollment -- a jury is feasible only if its summed requirements
  fit a budget.  Exact selection is intractable, so ``solve_paym_greedy``
  grows a jury in cheap pairs, and ``solve_oracle`` provides enumeration
  ground truth for small pools.
"""

from __future__ import annotations

import itertools
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import EmptyPool, NoAffordableJuror, SizeLimitExceeded
from .jer import (
    DIRECT_CONVOLUTION_MAX,
    Juror,
    Jury,
    WrongCountDistribution,
    _cba,
    _tail_recurrence,
    jer_from_distribution,
)

# 2**22 subsets is where exhaustive enumeration stops being a usable
# oracle; the published effectiveness experiments stop there too.
ORACLE_SIZE_MAX = 22

# Below this tail size the FFT merge's absolute round-off (~1e-14)
# drowns the value, so selection re-evaluates with the recurrence, which
# keeps relative accuracy however deep the tail goes.
_DEEP_TAIL = 1e-12


def _selection_jer(eps: np.ndarray) -> float:
    """Tail probability for solver-internal comparisons.

    The n log n convolution route, except that results under the FFT
    noise floor are redone with the O(n^2) recurrence; without that,
    very reliable juries all evaluate to 0.0 and cannot be ranked.
    """
    tail = jer_from_distribution(WrongCountDistribution(_cba(eps)))
    if tail < _DEEP_TAIL and eps.size > 2 * DIRECT_CONVOLUTION_MAX:
        return _tail_recurrence(eps)
    return tail


@dataclass(frozen=True)
class CandidatePool:
    """The candidate jurors a jury may be drawn from."""

    candidates: tuple[Juror, ...]

    def __post_init__(self):
        candidates = tuple(self.candidates)
        object.__setattr__(self, "candidates", candidates)
        if not candidates:
            raise EmptyPool("candidate pool must contain at least one juror")
        if len({j.id for j in candidates}) != len(candidates):
            raise ValueError("candidate ids must be distinct")

    @property
    def size(self) -> int:
        return len(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)


@dataclass(frozen=True)
class Budget:
    """Total payment allowed for one jury."""

    amount: float

    def __post_init__(self):
        object.__setattr__(self, "amount", float(self.amount))
        if not self.amount >= 0.0:
            raise ValueError("budget must be >= 0")


@dataclass(frozen=True)
class SolveResult:
    """A chosen jury plus its error rate, cost and search diagnostics."""

    jury: Jury
    jer: float
    total_cost: float
    juries_evaluated: int
    juries_pruned: int

    @property
    def member_ids(self) -> frozenset[str]:
        return frozenset(j.id for j in self.jury.members)


class ResultComparison(NamedTuple):
    precision: float
    recall: float
    jer_gap: float
    cost_gap: float


PoolLike = Union[CandidatePool, Sequence[Juror]]
BudgetLike = Union[Budget, float]


def _candidates(pool: PoolLike) -> tuple[Juror, ...]:
    if isinstance(pool, CandidatePool):
        return pool.candidates
    return CandidatePool(tuple(pool)).candidates


def _amount(budget: BudgetLike) -> float:
    if isinstance(budget, Budget):
        return budget.amount
    return Budget(float(budget)).amount


def solve_altrm(pool: PoolLike, use_pruning: bool = True) -> SolveResult:
    """Pick the error-rate-minimal jury when enrollment is free.

    Candidates are sorted by ascending error rate (ties by id) and every
    odd prefix is a candidate jury; monotonicity of the majority tail in
    each member's error rate makes the best prefix globally optimal.  With
    ``use_pruning`` the moment lower bound, when it applies, skips the
    full tail evaluation of prefixes that provably cannot beat the best
    jury found so far; pruning never changes the returned jury.
    """
    order = sorted(_candidates(pool), key=lambda j: (j.epsilon, j.id))
    eps = np.array([j.epsilon for j in order])
    n_max = eps.size if eps.size % 2 == 1 else eps.size - 1

    # Deep-tail fallback row, advanced lazily.  Prefixes nest, so one
    # rolling recurrence serves every fallback at O(N^2) total; its values
    # are identical to a fresh per-prefix recurrence.
    tail_row = np.zeros((n_max + 1) // 2 + 1)
    tail_row[0] = 1.0
    rows_done = 0

    def recurrence_tail(n: int) -> float:
        nonlocal rows_done
        while rows_done < n:
            e = eps[rows_done]
            tail_row[1:] = tail_row[1:] * (1.0 - e) + tail_row[:-1] * e
            rows_done += 1
        return float(min(max(tail_row[(n + 1) // 2], 0.0), 1.0))

    best_n = 0
    best_jer = math.inf
    evaluated = 0
    pruned = 0
    mu = 0.0
    sigma_sq = 0.0
    for n in range(1, n_max + 1, 2):
        new = eps[max(n - 2, 0) : n]
        mu += float(new.sum())
        sigma_sq += float((new * (1.0 - new)).sum())
        if use_pruning:
            gamma = ((n + 1) / 2) / mu
            if 0.0 < gamma < 1.0:
                lead = (1.0 - gamma) ** 2 * mu**2
                bound = lead / (lead + sigma_sq)
                if bound > best_jer:
                    pruned += 1
                    continue
        tail = jer_from_distribution(WrongCountDistribution(_cba(eps[:n])))
        if tail < _DEEP_TAIL and n > 2 * DIRECT_CONVOLUTION_MAX:
            tail = recurrence_tail(n)
        evaluated += 1
        if tail < best_jer:
            best_jer = tail
            best_n = n

    jury = Jury(tuple(order[:best_n]))
    cost = sum(j.requirement for j in jury.members)
    return SolveResult(jury, best_jer, cost, evaluated, pruned)


def solve_paym_greedy(pool: PoolLike, budget: BudgetLike) -> SolveResult:
    """Grow a budget-feasible jury greedily, two jurors at a time.

    Candidates are ranked by ascending epsilon * requirement (ties by
    epsilon then id).  The first affordable candidate seeds the jury; the
    remainder is scanned with a one-slot pair buffer so the jury only ever
    grows by two, keeping its size odd.  A buffered pair is admitted only
    when it still fits the budget and does not worsen the jury error rate;
    a pair still buffered when the scan ends is discarded.
    """
    budget_amount = _amount(budget)
    order = sorted(
        _candidates(pool), key=lambda j: (j.epsilon * j.requirement, j.epsilon, j.id)
    )
    start = next((i for i, j in enumerate(order) if j.requirement <= budget_amount), None)
    if start is None:
        raise NoAffordableJuror(
            f"no candidate requirement fits the budget {budget_amount}"
        )

    selected = [order[start]]
    spent = order[start].requirement
    current = _selection_jer(np.array([order[start].epsilon]))
    evaluated = 1
    pending: Juror | None = None
    for candidate in order[start + 1 :]:
        if pending is None:
            if spent + candidate.requirement <= budget_amount:
                pending = candidate
            continue
        if spent + pending.requirement + candidate.requirement <= budget_amount:
            trial = selected + [pending, candidate]
            trial_jer = _selection_jer(np.array([j.epsilon for j in trial]))
            evaluated += 1
            if trial_jer <= current:
                selected = trial
                current = trial_jer
                spent += pending.requirement + candidate.requirement
                pending = None

    return SolveResult(Jury(tuple(selected)), current, spent, evaluated, 0)


class _SizeTable(NamedTuple):
    """All size-k subsets of one pool: member indices, tail probability, cost."""

    k: int
    combos: np.ndarray  # (m, k) indices into the id-sorted candidate order
    jer: np.ndarray  # (m,)
    cost: np.ndarray  # (m,)


def _jer_rows(eps_rows: np.ndarray) -> np.ndarray:
    """Majority tail per row of error rates, all rows in lockstep."""
    m, k = eps_rows.shape
    threshold = (k + 1) // 2
    row = np.zeros((m, threshold + 1))
    row[:, 0] = 1.0
    for j in range(k):
        e = eps_rows[:, j : j + 1]
        row[:, 1:] = row[:, 1:] * (1.0 - e) + row[:, :-1] * e
    return row[:, threshold]


def _build_tables(order: tuple[Juror, ...]) -> list[_SizeTable]:
    n = len(order)
    eps = np.array([j.epsilon for j in order])
    req = np.array([j.requirement for j in order])
    tables = []
    for k in range(1, n + 1, 2):
        count = math.comb(n, k)
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.combinations(range(n), k)),
            dtype=np.int16,
            count=count * k,
        )
        combos = flat.reshape(count, k)
        tables.append(
            _SizeTable(
                k=k,
                combos=combos,
                jer=_jer_rows(eps[combos]),
                cost=req[combos].sum(axis=1),
            )
        )
    return tables


# Repeated oracle calls on the same pool (budget sweeps) reuse the
# enumeration; the tables for a 22-candidate pool take ~1s to build.
_TABLE_CACHE: OrderedDict[tuple, list[_SizeTable]] = OrderedDict()
_TABLE_CACHE_MAX = 4
_TABLE_LOCK = threading.Lock()


def _tables_for(order: tuple[Juror, ...]) -> list[_SizeTable]:
    key = tuple((j.id, j.epsilon, j.requirement) for j in order)
    with _TABLE_LOCK:
        if key in _TABLE_CACHE:
            _TABLE_CACHE.move_to_end(key)
            return _TABLE_CACHE[key]
        tables = _build_tables(order)
        _TABLE_CACHE[key] = tables
        if len(_TABLE_CACHE) > _TABLE_CACHE_MAX:
            _TABLE_CACHE.popitem(last=False)
        return tables


def solve_oracle(pool: PoolLike, budget: BudgetLike) -> SolveResult:
    """Exhaustive ground truth: the best odd, budget-feasible jury.

    Enumerates every odd-sized subset with total cost within the budget
    and returns one minimizing the jury error rate; ties fall to lower
    cost, then smaller size, then lexicographically smallest member ids.
    Exponential in the pool size, hence capped at 22 candidates.  With all
    requirements zero and an unbounded budget this is the ground truth for
    ``solve_altrm`` as well.
    """
    candidates = _candidates(pool)
    n = len(candidates)
    if n > ORACLE_SIZE_MAX:
        raise SizeLimitExceeded(f"oracle enumeration capped at {ORACLE_SIZE_MAX}, got {n}")
    budget_amount = _amount(budget)

    # Id-sorted order makes combination row order the id-lexicographic
    # order, so the first row among exact ties is the tie-break winner.
    order = tuple(sorted(candidates, key=lambda j: j.id))
    evaluated = 0
    best: tuple[float, float] | None = None  # (jer, cost); sizes scan small-first
    best_combo = None
    for table in _tables_for(order):
        feasible = np.flatnonzero(table.cost <= budget_amount)
        if feasible.size == 0:
            continue
        evaluated += int(feasible.size)
        # lexsort is stable, so among exact (jer, cost) ties the lowest row
        # index, i.e. the id-lexicographic minimum, comes out first.
        pick = feasible[np.lexsort((table.cost[feasible], table.jer[feasible]))[0]]
        key = (float(table.jer[pick]), float(table.cost[pick]))
        if best is None or key < best:
            best = key
            best_combo = table.combos[pick]

    if best is None:
        raise NoAffordableJuror(f"no odd subset fits the budget {budget_amount}")
    members = tuple(order[i] for i in best_combo)
    return SolveResult(Jury(members), best[0], best[1], evaluated, 0)


def compare_results(test: SolveResult, truth: SolveResult) -> ResultComparison:
    """Member-set precision/recall plus error-rate and cost gaps of test vs truth."""
    test_ids = test.member_ids
    truth_ids = truth.member_ids
    overlap = len(test_ids & truth_ids)
    return ResultComparison(
        precision=overlap / len(test_ids),
        recall=overlap / len(truth_ids),
        jer_gap=test.jer - truth.jer,
        cost_gap=test.total_cost - truth.total_cost,
    )
