"""Slow independent reference implementations used only by tests.

These deliberately avoid the closed forms and the engine internals: the
layer partition is computed by draining, stability of a bra-ket multiset
by checking all pairs directly, and the set of quiescent outcomes by
exhaustive search over every schedule. Tests compare the fast library
code against these.
"""

from collections import Counter
from itertools import permutations

from pluralitysim.protocol import AgentState, apply_interaction, weight


def greedy_drain(input_colors):
    """Layer partition by literal draining.

    Repeatedly remove one copy of every color still present; each sweep
    is one layer.
    """
    remaining = Counter(input_colors)
    layers = []
    while remaining:
        layer = frozenset(remaining)
        layers.append(layer)
        remaining -= Counter(layer)
    return layers


def is_exchange_stable(brakets, k):
    """True iff no two arcs of the multiset would swap kets.

    Checks every unordered pair of arcs, including an arc against another
    copy of itself when its multiplicity is at least two.
    """
    counts = Counter(brakets)
    arcs = list(counts)
    for idx, (b1, k1) in enumerate(arcs):
        candidates = arcs[idx:] if counts[(b1, k1)] > 1 else arcs[idx + 1:]
        for b2, k2 in candidates:
            kept = min(weight(b1, k1, k), weight(b2, k2, k))
            swapped = min(weight(b1, k2, k), weight(b2, k1, k))
            if swapped < kept:
                return False
    return True


def stable_matchings(input_colors, k):
    """All exchange-stable bra-ket multisets pairing the inputs with
    themselves.

    Bras are the input multiset and so are the kets (interactions only
    permute kets), so every candidate outcome is some assignment of the
    ket multiset onto the bras. Factorial cost; keep n small.
    """
    colors = tuple(input_colors)
    outcomes = {}
    for kets in set(permutations(colors)):
        counts = Counter(zip(colors, kets))
        key = frozenset(counts.items())
        if key not in outcomes and is_exchange_stable(counts.elements(), k):
            outcomes[key] = counts
    return list(outcomes.values())


def exhaustive_quiescent_outcomes(input_colors, k):
    """Bra-ket multisets of every quiescent configuration reachable from
    the given inputs under any schedule whatsoever.

    Breadth-first search over configuration multisets; exponential, keep
    n tiny. A configuration is quiescent when no pair of its states would
    change anything.
    """
    start = tuple(sorted(AgentState(c, c, c) for c in input_colors))
    seen = {start}
    frontier = [start]
    outcomes = set()
    while frontier:
        cfg = frontier.pop()
        quiescent = True
        for i in range(len(cfg)):
            for j in range(i + 1, len(cfg)):
                a, b, exchanged, out_changed = apply_interaction(
                    cfg[i], cfg[j], k)
                if not (exchanged or out_changed):
                    continue
                quiescent = False
                nxt = list(cfg)
                nxt[i], nxt[j] = a, b
                nxt = tuple(sorted(nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        if quiescent:
            outcomes.add(frozenset(
                Counter((s.bra, s.ket) for s in cfg).items()))
    return [Counter(dict(m)) for m in outcomes]
