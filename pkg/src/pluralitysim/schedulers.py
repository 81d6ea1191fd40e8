"""Pair schedules: who interacts at each step.

A scheduler maps a step index to one unordered pair of agent indices,
deterministically. Pairs are canonical tuples (first, second) with
first < second; the interaction rule is symmetric, so nothing is lost by
ignoring order. RoundRobin cycles the canonical pair list in lexicographic
order and is weakly fair by construction: every pair recurs in every window
of n*(n-1)/2 steps. UniformRandom draws pairs independently from a seeded
generator and is weakly fair with probability one, but gives no per-sample
guarantee; tests that need guaranteed convergence use RoundRobin.
StarvationAdversary withholds one pair until a release step, deliberately
violating weak fairness, so that tests can show safety holds anyway and
that convergence genuinely needs fairness.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

AgentPair = tuple[int, int]


def canonical_pair(first: int, second: int) -> AgentPair:
    """Order a pair of distinct agent indices as (low, high)."""
    if first == second:
        raise ValueError(f"a pair needs two distinct agents, got ({first}, {second})")
    return (first, second) if first < second else (second, first)


def pair_count(n: int) -> int:
    """Number of unordered pairs over n agents."""
    return n * (n - 1) // 2


def pair_from_index(index: int, n: int) -> AgentPair:
    """The index-th canonical pair in lexicographic order.

    Order is (0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1). Computed
    arithmetically so no pair list is materialized.
    """
    total = pair_count(n)
    if not 0 <= index < total:
        raise ValueError(f"pair index {index} outside [0, {total - 1}]")
    # Rank from the end: the last pair (n-2, n-1) has r = 1. The smallest m
    # with m*(m-1)/2 >= r gives first = n - m.
    r = total - index
    m = (1 + math.isqrt(8 * r - 7)) // 2
    while m * (m - 1) // 2 < r:
        m += 1
    while (m - 1) * (m - 2) // 2 >= r:
        m -= 1
    first = n - m
    second = n - r + (m - 1) * (m - 2) // 2
    return (first, second)


def pair_index(pair: AgentPair, n: int) -> int:
    """Inverse of pair_from_index."""
    i, j = pair
    if not 0 <= i < j < n:
        raise ValueError(f"{pair!r} is not a canonical pair for n={n}")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def _check_step(step: int) -> int:
    if not isinstance(step, int) or step < 0:
        raise ValueError(f"step index must be a non-negative integer, got {step!r}")
    return step


class RoundRobin:
    """Cycle through all canonical pairs in lexicographic order."""

    kind = "roundrobin"

    def __init__(self, n: int):
        self.n = n

    def pair_at(self, step: int) -> AgentPair:
        _check_step(step)
        total = pair_count(self.n)
        if total == 0:
            raise ValueError(f"scheduler needs at least two agents, got n={self.n}")
        return pair_from_index(step % total, self.n)


class UniformRandom:
    """One independent uniformly random pair per step.

    Deterministic given the seed: the same (seed, step) always yields the
    same pair, regardless of query order.
    """

    kind = "random"

    def __init__(self, n: int, seed):
        self.n = n
        self.seed = seed
        self._rng = np.random.default_rng(seed)
        self._cache: list[AgentPair] = []

    def pair_at(self, step: int) -> AgentPair:
        _check_step(step)
        total = pair_count(self.n)
        if total == 0:
            raise ValueError(f"scheduler needs at least two agents, got n={self.n}")
        while len(self._cache) <= step:
            self._cache.append(pair_from_index(int(self._rng.integers(total)), self.n))
        return self._cache[step]


class StarvationAdversary:
    """Round-robin that skips one pair until a release step.

    Before ``release_step`` the excluded pair never occurs, so the schedule
    is not weakly fair; from ``release_step`` on it behaves as a fresh
    round-robin over all pairs. Safety properties must survive the unfair
    prefix; convergence need not.
    """

    kind = "adversary"

    def __init__(self, n: int, excluded: AgentPair, release_step: int):
        i, j = canonical_pair(*excluded)
        if not 0 <= i < j < n:
            raise ValueError(f"excluded pair {excluded!r} invalid for n={n}")
        if not isinstance(release_step, int) or release_step < 0:
            raise ValueError(f"release step must be a non-negative integer, got {release_step!r}")
        self.n = n
        self.excluded = (i, j)
        self.release_step = release_step
        self._excluded_rank = pair_index((i, j), n)

    def pair_at(self, step: int) -> AgentPair:
        _check_step(step)
        total = pair_count(self.n)
        if step >= self.release_step:
            return pair_from_index((step - self.release_step) % total, self.n)
        if total <= 1:
            raise ValueError(
                f"n={self.n} leaves no pair besides the excluded one before release"
            )
        rank = step % (total - 1)
        if rank >= self._excluded_rank:
            rank += 1
        return pair_from_index(rank, self.n)


Scheduler = RoundRobin | UniformRandom | StarvationAdversary


def make_scheduler(kind: str, n: int, seed=None,
                   excluded: AgentPair = (0, 1),
                   release_step: int | None = None) -> Scheduler:
    """Build a scheduler by kind name: roundrobin, random, or adversary."""
    if kind == "roundrobin":
        return RoundRobin(n)
    if kind == "random":
        return UniformRandom(n, seed)
    if kind == "adversary":
        if release_step is None:
            release_step = 2**62  # effectively never within any desk-scale run
        return StarvationAdversary(n, excluded, release_step)
    raise ValueError(f"unknown scheduler kind {kind!r}")


def fairness_audit(schedule_prefix, n: int) -> dict[AgentPair, int]:
    """Occurrence count of every canonical pair in a schedule prefix.

    Returns a dict keyed by all n*(n-1)/2 canonical pairs, zeros included.
    """
    counts = {pair: 0 for pair in combinations(range(n), 2)}
    for raw in schedule_prefix:
        pair = canonical_pair(*raw)
        if pair not in counts:
            raise ValueError(f"pair {raw!r} invalid for n={n}")
        counts[pair] += 1
    return counts
