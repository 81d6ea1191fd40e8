"""Unit tests for pair scheduling."""

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pluralitysim.schedulers import (RoundRobin, StarvationAdversary,
                                     UniformRandom, canonical_pair,
                                     fairness_audit, make_scheduler,
                                     pair_count, pair_from_index, pair_index)


class TestPairIndexing:
    def test_canonical_pair_orders_and_rejects_loops(self):
        assert canonical_pair(3, 1) == (1, 3)
        assert canonical_pair(1, 3) == (1, 3)
        with pytest.raises(ValueError):
            canonical_pair(2, 2)

    @pytest.mark.parametrize("n", [2, 3, 4, 7, 20, 41])
    def test_matches_lexicographic_enumeration(self, n):
        expected = list(combinations(range(n), 2))
        assert [pair_from_index(i, n) for i in range(pair_count(n))] == expected

    @given(st.integers(2, 200), st.integers(0, 10**6))
    def test_round_trips_through_pair_index(self, n, raw):
        index = raw % pair_count(n)
        pair = pair_from_index(index, n)
        assert 0 <= pair[0] < pair[1] < n
        assert pair_index(pair, n) == index

    def test_rejects_out_of_range_indices(self):
        with pytest.raises(ValueError):
            pair_from_index(3, 3)
        with pytest.raises(ValueError):
            pair_from_index(-1, 3)
        with pytest.raises(ValueError):
            pair_index((1, 1), 3)


class TestRoundRobin:
    def test_cycles_in_lexicographic_order(self):
        sched = RoundRobin(3)
        assert [sched.pair_at(t) for t in range(4)] == [
            (0, 1), (0, 2), (1, 2), (0, 1)]

    def test_one_cycle_covers_every_pair_once(self):
        n = 6
        sched = RoundRobin(n)
        prefix = [sched.pair_at(t) for t in range(pair_count(n))]
        assert fairness_audit(prefix, n) == {
            pair: 1 for pair in combinations(range(n), 2)}

    def test_needs_two_agents(self):
        with pytest.raises(ValueError):
            RoundRobin(1).pair_at(0)

    def test_rejects_negative_steps(self):
        with pytest.raises(ValueError):
            RoundRobin(3).pair_at(-1)


class TestUniformRandom:
    def test_same_seed_same_schedule(self):
        a = UniformRandom(10, seed=42)
        b = UniformRandom(10, seed=42)
        assert [a.pair_at(t) for t in range(50)] == [
            b.pair_at(t) for t in range(50)]

    def test_query_order_does_not_matter(self):
        a = UniformRandom(10, seed=7)
        b = UniformRandom(10, seed=7)
        forward = [a.pair_at(t) for t in range(30)]
        backward = [b.pair_at(t) for t in reversed(range(30))]
        assert forward == list(reversed(backward))

    def test_different_seeds_diverge(self):
        a = UniformRandom(10, seed=1)
        b = UniformRandom(10, seed=2)
        assert [a.pair_at(t) for t in range(30)] != [
            b.pair_at(t) for t in range(30)]

    def test_long_prefix_hits_every_pair(self):
        n = 5
        sched = UniformRandom(n, seed=3)
        counts = fairness_audit(
            (sched.pair_at(t) for t in range(600)), n)
        assert all(count > 0 for count in counts.values())

    def test_needs_two_agents(self):
        with pytest.raises(ValueError):
            UniformRandom(1, seed=0).pair_at(0)


class TestStarvationAdversary:
    def test_starves_the_excluded_pair_until_release(self):
        sched = StarvationAdversary(4, excluded=(0, 2), release_step=30)
        prefix = [sched.pair_at(t) for t in range(30)]
        assert (0, 2) not in prefix
        counts = fairness_audit(prefix, 4)
        assert counts[(0, 2)] == 0
        assert all(count > 0 for pair, count in counts.items()
                   if pair != (0, 2))

    def test_release_restarts_a_full_round_robin(self):
        sched = StarvationAdversary(4, excluded=(0, 2), release_step=10)
        post = [sched.pair_at(10 + t) for t in range(pair_count(4))]
        assert post == list(combinations(range(4), 2))

    def test_canonicalizes_the_excluded_pair(self):
        sched = StarvationAdversary(5, excluded=(3, 1), release_step=0)
        assert sched.excluded == (1, 3)

    def test_rejects_bad_configurations(self):
        with pytest.raises(ValueError):
            StarvationAdversary(3, excluded=(0, 3), release_step=0)
        with pytest.raises(ValueError):
            StarvationAdversary(3, excluded=(1, 1), release_step=0)
        with pytest.raises(ValueError):
            StarvationAdversary(3, excluded=(0, 1), release_step=-1)

    def test_two_agents_have_nothing_else_to_schedule(self):
        sched = StarvationAdversary(2, excluded=(0, 1), release_step=5)
        with pytest.raises(ValueError):
            sched.pair_at(0)
        assert sched.pair_at(5) == (0, 1)


class TestMakeScheduler:
    def test_builds_each_kind(self):
        assert isinstance(make_scheduler("roundrobin", 4), RoundRobin)
        assert isinstance(make_scheduler("random", 4, seed=1), UniformRandom)
        adversary = make_scheduler("adversary", 4, excluded=(1, 2))
        assert isinstance(adversary, StarvationAdversary)
        # default release is far beyond any desk-scale run
        assert (1, 2) not in [adversary.pair_at(t) for t in range(100)]

    def test_kind_labels_match(self):
        assert make_scheduler("roundrobin", 3).kind == "roundrobin"
        assert make_scheduler("random", 3, seed=0).kind == "random"
        assert make_scheduler("adversary", 3).kind == "adversary"

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            make_scheduler("sorted", 3)


class TestFairnessAudit:
    def test_counts_and_canonicalizes(self):
        counts = fairness_audit([(1, 0), (0, 1), (2, 0)], 3)
        assert counts == {(0, 1): 2, (0, 2): 1, (1, 2): 0}

    def test_rejects_foreign_pairs(self):
        with pytest.raises(ValueError):
            fairness_audit([(0, 5)], 3)
