"""End-to-end checking of runs against the closed-form predictions.

An instance is (k, input colors). For each instance this module runs the
round-robin schedule to quiescence with full runtime assertions, then
compares the outcome against the oracle module: the final bra-ket
multiset must equal the prediction, and with a unique plurality winner
every agent must output it. Instance generators cover exhaustive
enumeration (deduplicated under circle rotation, the symmetry the
dynamics actually have), random sampling, and exhaustive reachability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .engine import InvariantViolation, UntilQuiescent, init_configuration, run
from .oracle import brute_majority, predicted_stable_multiset
from .protocol import AgentState, _interact, check_color, check_k
from .schedulers import RoundRobin


def rotation_canonical(colors, k: int) -> tuple[int, ...]:
    """Least sorted representative of a color multiset under rotation.

    Rotating every color by the same offset mod k commutes with the
    interaction rule (weights are circular distances), so instances equal
    up to rotation behave identically. Arbitrary color permutations do
    not commute with it and are not quotiented out.
    """
    check_k(k)
    colors = [check_color(c, k) for c in colors]
    return min(tuple(sorted((c + r) % k for c in colors)) for r in range(k))


def enumerate_instances(n_max: int, k_max: int, up_to_symmetry: bool = True):
    """Yield every instance (k, colors) with 1 <= n <= n_max, 1 <= k <= k_max.

    Colors come as sorted tuples (agent order never affects the checked
    properties, only the step-by-step schedule). With up_to_symmetry,
    rotation-equivalent multisets are yielded once.
    """
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            seen = set()
            for combo in combinations_with_replacement(range(k), n):
                if up_to_symmetry:
                    combo = rotation_canonical(combo, k)
                    if combo in seen:
                        continue
                    seen.add(combo)
                yield k, combo


def random_instance(rng: np.random.Generator, n_max: int, k_max: int):
    """One uniformly sampled instance: n, k, then i.i.d. colors."""
    n = int(rng.integers(1, n_max + 1))
    k = int(rng.integers(1, k_max + 1))
    return k, tuple(int(c) for c in rng.integers(0, k, size=n))


@dataclass(frozen=True)
class InstanceFailure:
    """One instance that failed a check, verbatim, with the reason."""

    k: int
    colors: tuple[int, ...]
    check: str
    detail: str


@dataclass
class VerifyReport:
    """Tally of a verification battery."""

    instances: int = 0
    unique_majority_instances: int = 0
    tie_instances: int = 0
    failures: list[InstanceFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = (f"{self.instances} instances "
                f"({self.unique_majority_instances} unique-majority, "
                f"{self.tie_instances} tie): ")
        if self.ok:
            return head + "all checks passed"
        return head + f"{len(self.failures)} FAILED"


def checked_run(colors, k: int,
                cap_cycles: int | None = None) -> InstanceFailure | None:
    """Round-robin run of one instance with every check armed.

    Returns None when all of these hold, else the first failure:
    the bra-ket balance after every step and the weight-vector drop at
    every exchange (runtime assertions), quiescence within the cap, final
    bra-ket multiset equal to the prediction, and all outputs equal to
    the plurality winner when it is unique.
    """
    colors = tuple(colors)
    config = init_configuration(colors, k)
    try:
        final, _, metrics = run(config, RoundRobin(config.n),
                                UntilQuiescent(cap_cycles),
                                assertions="full", trace="off")
    except InvariantViolation as violation:
        return InstanceFailure(k, colors, "invariant", str(violation))
    if not metrics.converged:
        return InstanceFailure(
            k, colors, "termination",
            f"not quiescent after {metrics.total_interactions} interactions")
    predicted = predicted_stable_multiset(colors)
    reached = final.braket_counts()
    if reached != predicted:
        return InstanceFailure(
            k, colors, "stable-multiset",
            f"reached {sorted(reached.elements())}, "
            f"predicted {sorted(predicted.elements())}")
    winner, unique = brute_majority(colors)
    if unique:
        outputs = final.output_counts()
        if set(outputs) != {winner}:
            return InstanceFailure(
                k, colors, "output",
                f"winner {winner} but outputs {dict(outputs)}")
    return None


def verify_battery(instances, cap_cycles: int | None = None) -> VerifyReport:
    """Run checked_run over an iterable of (k, colors) instances."""
    report = VerifyReport()
    for k, colors in instances:
        report.instances += 1
        _, unique = brute_majority(colors)
        if unique:
            report.unique_majority_instances += 1
        else:
            report.tie_instances += 1
        failure = checked_run(colors, k, cap_cycles)
        if failure is not None:
            report.failures.append(failure)
    return report


def reachable_state_set(input_colors, k: int) -> set[AgentState]:
    """Every agent state occurring in any configuration reachable from
    the given inputs under any schedule.

    Breadth-first search over configuration multisets, trying every
    unordered pair at every node. Exponential in general; meant for the
    exhaustive small-population check that nothing outside the k**3
    state enumeration ever appears.
    """
    start = tuple(sorted(init_configuration(input_colors, k).states))
    seen_configs = {start}
    frontier = [start]
    states_seen = set(start)
    while frontier:
        cfg = frontier.pop()
        n = len(cfg)
        for i in range(n):
            for j in range(i + 1, n):
                result = _interact(cfg[i], cfg[j], k)
                if not (result.exchanged or result.out_changed):
                    continue
                nxt = list(cfg)
                nxt[i], nxt[j] = result.a, result.b
                nxt = tuple(sorted(nxt))
                if nxt not in seen_configs:
                    seen_configs.add(nxt)
                    frontier.append(nxt)
                    states_seen.add(result.a)
                    states_seen.add(result.b)
    return states_seen
