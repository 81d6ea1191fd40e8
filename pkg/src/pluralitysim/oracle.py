"""Closed-form predictions used to check simulation outcomes.

Everything here is computed directly from the input color multiset and
never simulates: the layered duplicate-free partition of the inputs, the
bra-ket cycle each layer induces on the color circle, the stable bra-ket
multiset a run must settle into, and the plurality winner. The engine is
checked against these, never the other way around.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .protocol import check_k

# A multiset of (bra, ket) pairs, as counts.
BraKetMultiset = Counter


@dataclass(frozen=True)
class GreedyPartition:
    """Layers G_1 .. G_q of the input colors, duplicate-free per layer.

    Layer p holds exactly the colors appearing at least p times, so the
    layers are nested (G_1 is every distinct color, G_q the most frequent
    ones) and their multiset union restores the input.
    """

    sets: tuple[frozenset[int], ...]

    @property
    def depth(self) -> int:
        return len(self.sets)


def greedy_partition(input_colors) -> GreedyPartition:
    """Partition the input multiset into nested duplicate-free layers.

    Computed by the multiplicity-threshold closed form: layer p is the set
    of colors with multiplicity >= p, for p = 1 .. max multiplicity. This
    is equivalent to repeatedly draining one copy of every present color.
    """
    counts = Counter(input_colors)
    if not counts:
        raise ValueError("input color multiset must not be empty")
    depth = max(counts.values())
    sets = tuple(
        frozenset(c for c, m in counts.items() if m >= p)
        for p in range(1, depth + 1)
    )
    return GreedyPartition(sets)


def circle_braket_set(colors) -> BraKetMultiset:
    """Bra-ket cycle linking a duplicate-free color set in sorted order.

    For sorted elements g0 < g1 < ... < gm this is the set of arcs
    (g0, g1), (g1, g2), ..., (gm, g0); a singleton {c} wraps to the
    self-loop (c, c).
    """
    ordered = sorted(set(colors))
    if not ordered:
        raise ValueError("color set must not be empty")
    m = len(ordered)
    return Counter((ordered[i], ordered[(i + 1) % m]) for i in range(m))


def predicted_stable_multiset(input_colors) -> BraKetMultiset:
    """The bra-ket multiset every quiescent run must reach.

    Multiset union of the circle bra-ket sets of all greedy layers. Its
    size equals the population size and it balances bras against kets by
    construction.
    """
    prediction: BraKetMultiset = Counter()
    for layer in greedy_partition(input_colors).sets:
        prediction += circle_braket_set(layer)
    return prediction


def brute_majority(input_colors) -> tuple[int, bool]:
    """Plurality winner by direct counting.

    Returns (winner, unique). The winner is the smallest color among those
    with maximal multiplicity, so the result is deterministic; unique is
    True iff that argmax is the only one.
    """
    counts = Counter(input_colors)
    if not counts:
        raise ValueError("input color multiset must not be empty")
    best = max(counts.values())
    winners = [c for c, m in counts.items() if m == best]
    return min(winners), len(winners) == 1


def potential_less(weights_a, weights_b) -> bool:
    """Lexicographic order on two sorted-ascending weight vectors.

    True iff weights_a comes strictly before weights_b. This is the order
    the configuration potential follows: it must strictly drop at every
    ket exchange.
    """
    a = tuple(weights_a)
    b = tuple(weights_b)
    if len(a) != len(b):
        raise ValueError(f"weight vectors differ in length: {len(a)} vs {len(b)}")
    return a < b


def braket_balanced(braket_counts: BraKetMultiset) -> bool:
    """True iff every color has as many bras as kets in the multiset."""
    bras: Counter = Counter()
    kets: Counter = Counter()
    for (bra, ket), mult in braket_counts.items():
        bras[bra] += mult
        kets[ket] += mult
    return bras == kets


def mod_range(x: int, y: int, p: int, closed: bool = True) -> set[int]:
    """Residues reached walking the circle mod p from x to y.

    Closed ranges include both endpoints: [2,7] mod 10 is {2,...,7} and
    wrapping works, e.g. the open range (8,3) mod 10 is {9, 0, 1, 2}.
    Degenerate cases: [x,x] is {x mod p}; the open range (x,x) walks the
    whole circle and yields every residue except x, which follows the
    index formula rather than intuition; (x, x+1) is empty.
    """
    check_k(p)
    if x < 0 or y < 0:
        raise ValueError(f"range endpoints must be non-negative, got ({x}, {y})")
    distance = (y - x) % p
    if closed:
        return {(x + t) % p for t in range(distance + 1)}
    if distance == 0:
        distance = p
    return {(x + t) % p for t in range(1, distance)}


def majority_by_partition(input_colors) -> tuple[int, bool]:
    """Plurality winner read off the greedy partition instead of counting.

    The deepest layer is exactly the set of colors with maximal
    multiplicity, so the winner is its smallest element and it is unique
    iff the layer is a singleton. Cross-checks brute_majority.
    """
    deepest = greedy_partition(input_colors).sets[-1]
    return min(deepest), len(deepest) == 1
