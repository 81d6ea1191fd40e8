"""Unit tests for agent states and the pairwise interaction rule."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pluralitysim.protocol import (AgentState, all_states, apply_interaction,
                                   init_agent, weight)


@st.composite
def interactions(draw, k_max=6):
    """A k together with two valid agent states."""
    k = draw(st.integers(1, k_max))
    color = st.integers(0, k - 1)
    a = AgentState(draw(color), draw(color), draw(color))
    b = AgentState(draw(color), draw(color), draw(color))
    return k, a, b


class TestWeight:
    def test_self_loop_weighs_k(self):
        assert weight(2, 2, 5) == 5
        assert weight(0, 0, 1) == 1

    def test_circular_distance(self):
        assert weight(1, 3, 5) == 2
        assert weight(3, 1, 5) == 3
        assert weight(0, 4, 5) == 4

    @given(interactions())
    def test_range_and_loop_characterization(self, case):
        k, a, _ = case
        w = weight(a.bra, a.ket, k)
        assert 1 <= w <= k
        assert (w == k) == (a.bra == a.ket)

    @given(interactions())
    def test_opposite_arcs_sum_to_k(self, case):
        k, a, _ = case
        if a.bra != a.ket:
            assert weight(a.bra, a.ket, k) + weight(a.ket, a.bra, k) == k

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            weight(0, 0, 0)
        with pytest.raises(ValueError):
            weight(2, 0, 2)
        with pytest.raises(ValueError):
            weight(0, -1, 3)


class TestInitAgent:
    def test_fresh_agent_is_a_self_loop_on_its_color(self):
        assert init_agent(3, 5) == AgentState(3, 3, 3)

    def test_rejects_color_outside_circle(self):
        with pytest.raises(ValueError):
            init_agent(2, 2)


class TestApplyInteraction:
    def test_two_distinct_self_loops_swap(self):
        a, b, exchanged, out_changed = apply_interaction(
            AgentState(0, 0, 0), AgentState(1, 1, 1), 2)
        assert (a, b) == (AgentState(0, 1, 0), AgentState(1, 0, 1))
        assert exchanged and not out_changed

    def test_stable_pair_is_untouched(self):
        a0, b0 = AgentState(0, 1, 1), AgentState(1, 0, 1)
        a, b, exchanged, out_changed = apply_interaction(a0, b0, 2)
        assert (a, b) == (a0, b0)
        assert not exchanged and not out_changed

    def test_self_loop_broadcasts_without_exchange(self):
        a, b, exchanged, out_changed = apply_interaction(
            AgentState(2, 2, 2), AgentState(0, 1, 0), 3)
        assert (a, b) == (AgentState(2, 2, 2), AgentState(0, 1, 2))
        assert not exchanged and out_changed

    def test_far_apart_self_loops_swap_without_broadcast(self):
        a, b, exchanged, out_changed = apply_interaction(
            AgentState(1, 1, 1), AgentState(3, 3, 3), 4)
        assert (a, b) == (AgentState(1, 3, 1), AgentState(3, 1, 3))
        assert exchanged and not out_changed

    def test_k1_population_is_inert(self):
        only = AgentState(0, 0, 0)
        assert apply_interaction(only, only, 1) == (only, only, False, False)

    def test_rejects_mismatched_colors(self):
        with pytest.raises(ValueError):
            apply_interaction(AgentState(0, 0, 0), AgentState(2, 0, 0), 2)

    @given(interactions())
    def test_symmetric_in_its_arguments(self, case):
        k, a, b = case
        ra, rb, exchanged, out_changed = apply_interaction(a, b, k)
        rb2, ra2, exchanged2, out_changed2 = apply_interaction(b, a, k)
        assert (ra, rb, exchanged, out_changed) == (ra2, rb2, exchanged2,
                                                    out_changed2)

    @given(interactions())
    def test_conserves_bras_and_the_ket_multiset(self, case):
        k, a, b = case
        ra, rb, exchanged, _ = apply_interaction(a, b, k)
        assert (ra.bra, rb.bra) == (a.bra, b.bra)
        assert sorted((ra.ket, rb.ket)) == sorted((a.ket, b.ket))
        if not exchanged:
            assert (ra.ket, rb.ket) == (a.ket, b.ket)

    @given(interactions())
    def test_exchange_strictly_lowers_the_pair_minimum_weight(self, case):
        k, a, b = case
        ra, rb, exchanged, _ = apply_interaction(a, b, k)
        before = min(weight(a.bra, a.ket, k), weight(b.bra, b.ket, k))
        after = min(weight(ra.bra, ra.ket, k), weight(rb.bra, rb.ket, k))
        if exchanged:
            assert after < before
        else:
            assert after == before

    @given(interactions())
    def test_outs_only_move_to_a_present_self_loop_color(self, case):
        k, a, b = case
        ra, rb, _, out_changed = apply_interaction(a, b, k)
        if out_changed:
            loops = {s.bra for s in (ra, rb) if s.bra == s.ket}
            assert ra.out == rb.out and ra.out in loops
        else:
            assert (ra.out, rb.out) == (a.out, b.out)

    @given(interactions())
    def test_idempotent_once_nothing_changes(self, case):
        k, a, b = case
        ra, rb, exchanged, out_changed = apply_interaction(a, b, k)
        if not exchanged and not out_changed:
            assert (ra, rb) == (a, b)
        again = apply_interaction(ra, rb, k)
        if not again.exchanged and not again.out_changed:
            assert (again.a, again.b) == (ra, rb)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_never_yields_two_distinct_self_loops(self, k):
        # Exhaustive over all state pairs, reachable or not: after an
        # interaction the pair never holds self-loops of two colors, which
        # is what makes the broadcast step well defined.
        states = all_states(k)
        for a in states:
            for b in states:
                ra, rb, _, _ = apply_interaction(a, b, k)
                if ra.bra == ra.ket and rb.bra == rb.ket:
                    assert ra.bra == rb.bra


class TestAllStates:
    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_enumerates_exactly_k_cubed_distinct_states(self, k):
        states = all_states(k)
        assert len(states) == k**3
        assert len(set(states)) == k**3

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            all_states(0)
