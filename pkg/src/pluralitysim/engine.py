"""Population runs: drive a configuration through scheduled interactions.

A Configuration is the ordered population of agent states. run() applies
scheduler pairs in order until quiescence or a cap, collecting metrics and
an optional trace, and can assert two runtime invariants after every step:
the global bra-ket balance (safety level) and the strict lexicographic
drop of the sorted weight vector at every ket exchange (full level). Both
checks are incremental, so enabling them does not change the asymptotic
cost of a run.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .protocol import AgentState, _interact, _weight, check_k, validate_state
from .schedulers import AgentPair, Scheduler, pair_count


@dataclass(frozen=True)
class Configuration:
    """The population at an instant: k plus one state per agent.

    Construction validates every color against k but not the bra-ket
    balance; balance is a property of reachable populations (initial
    states are self-loops and interactions only permute kets), enforced
    during runs, not a precondition of the type.
    """

    k: int
    states: tuple[AgentState, ...]

    def __post_init__(self):
        check_k(self.k)
        if not self.states:
            raise ValueError("a population needs at least one agent")
        for state in self.states:
            validate_state(state, self.k)

    @property
    def n(self) -> int:
        return len(self.states)

    def state_counts(self) -> Counter:
        """Multiset view: state -> multiplicity."""
        return Counter(self.states)

    def braket_counts(self) -> Counter:
        """Multiset view of (bra, ket) pairs, outs ignored."""
        return Counter((s.bra, s.ket) for s in self.states)

    def output_counts(self) -> Counter:
        """Multiset view of the out fields."""
        return Counter(s.out for s in self.states)

    def sorted_weights(self) -> tuple[int, ...]:
        """Ascending vector of all agents' bra-ket weights."""
        return tuple(sorted(_weight(s.bra, s.ket, self.k) for s in self.states))


class TraceEvent(NamedTuple):
    """One recorded interaction: the pair, its states before and after."""

    step: int
    pair: AgentPair
    pre: tuple[AgentState, AgentState]
    post: tuple[AgentState, AgentState]
    exchanged: bool
    out_changed: bool


@dataclass(frozen=True)
class RunTrace:
    """Event log of a run.

    mode "changes" (the default) keeps only steps that exchanged kets or
    updated an out field; "full" keeps every step; "off" keeps nothing.
    """

    mode: str
    events: tuple[TraceEvent, ...] = ()


@dataclass(frozen=True)
class RunMetrics:
    """Summary counters of a run.

    quiescence_step is the interaction count at which a quiescence check
    first succeeded (None if none did within the run); converged mirrors
    it. Always ket_exchanges <= total_interactions, and quiescence_step
    <= total_interactions when present.
    """

    total_interactions: int
    ket_exchanges: int
    out_updates: int
    quiescence_step: int | None
    converged: bool
    final_outputs: Counter = field(default_factory=Counter)


class RunResult(NamedTuple):
    """run() output; unpacks as (final, trace, metrics)."""

    final: Configuration
    trace: RunTrace
    metrics: RunMetrics


@dataclass(frozen=True)
class UntilQuiescent:
    """Stop at the first successful quiescence check, capped for safety.

    The cap is counted in round-robin cycles of n*(n-1)/2 interactions;
    None means the default of 50 * n**2 cycles. Reaching the cap is a
    non-converged outcome, not an error: an unfair schedule may simply
    never get there.
    """

    max_cycles: int | None = None


@dataclass(frozen=True)
class FixedSteps:
    """Run exactly this many interactions, quiescent or not."""

    steps: int


StopPolicy = UntilQuiescent | FixedSteps

DEFAULT_CAP_CYCLES_FACTOR = 50  # default cap: 50 * n**2 cycles

ASSERTION_LEVELS = ("off", "safety", "full")


class InvariantViolation(AssertionError):
    """A runtime invariant failed during a run; carries the offending step."""

    def __init__(self, message: str, step: int, pair: AgentPair,
                 pre: tuple[AgentState, AgentState],
                 post: tuple[AgentState, AgentState]):
        super().__init__(
            f"{message} (step {step}, pair {pair}, {pre[0]} x {pre[1]} "
            f"-> {post[0]} x {post[1]})"
        )
        self.step = step
        self.pair = pair
        self.pre = pre
        self.post = post


def init_configuration(input_colors, k: int) -> Configuration:
    """Population of fresh agents: each input color becomes a self-loop."""
    check_k(k)
    colors = list(input_colors)
    if not colors:
        raise ValueError("a population needs at least one agent")
    return Configuration(k, tuple(AgentState(c, c, c) for c in colors))


def step(config: Configuration, pair: AgentPair) -> tuple[Configuration, TraceEvent]:
    """Apply one interaction functionally; the population is not mutated.

    When the interaction changes nothing the input configuration object is
    returned as-is. The event's step field is 0; callers tracking time
    should use run().
    """
    i, j = pair
    if i == j or not (0 <= i < config.n and 0 <= j < config.n):
        raise ValueError(f"pair {pair!r} invalid for n={config.n}")
    a, b = config.states[i], config.states[j]
    result = _interact(a, b, config.k)
    event = TraceEvent(0, pair, (a, b), (result.a, result.b),
                       result.exchanged, result.out_changed)
    if not (result.exchanged or result.out_changed):
        return config, event
    states = list(config.states)
    states[i], states[j] = result.a, result.b
    return Configuration(config.k, tuple(states)), event


def is_quiescent(config: Configuration) -> bool:
    """True iff no pair of present states would change anything.

    Scans distinct states rather than agents: every unordered pair of
    distinct present states, plus each state present at least twice
    against itself. A population of one agent is quiescent by definition.
    """
    counts = config.state_counts()
    distinct = list(counts)
    k = config.k
    for idx, a in enumerate(distinct):
        if counts[a] > 1:
            r = _interact(a, a, k)
            if r.exchanged or r.out_changed:
                return False
        for b in distinct[idx + 1:]:
            r = _interact(a, b, k)
            if r.exchanged or r.out_changed:
                return False
    return True


def _pair_weights(a: AgentState, b: AgentState, k: int) -> tuple[int, int]:
    return _weight(a.bra, a.ket, k), _weight(b.bra, b.ket, k)


def _check_safety(event: TraceEvent):
    # Bras never move and kets are only swapped between the two agents, so
    # the global per-color bra/ket balance is conserved step by step.
    (a0, b0), (a1, b1) = event.pre, event.post
    if a1.bra != a0.bra or b1.bra != b0.bra:
        raise InvariantViolation("interaction moved a bra", event.step,
                                 event.pair, event.pre, event.post)
    if sorted((a1.ket, b1.ket)) != sorted((a0.ket, b0.ket)):
        raise InvariantViolation("interaction changed the ket multiset",
                                 event.step, event.pair, event.pre, event.post)
    if not event.exchanged and (a1.ket != a0.ket or b1.ket != b0.ket):
        raise InvariantViolation("kets moved without an exchange flag",
                                 event.step, event.pair, event.pre, event.post)


def _check_full(event: TraceEvent, k: int):
    # Only the two participants' weights can change, so the sorted weight
    # vector of the whole population drops lexicographically iff the
    # smallest value in the multiset difference of {old pair weights} and
    # {new pair weights} sits on the new side.
    (a0, b0), (a1, b1) = event.pre, event.post
    old = Counter(_pair_weights(a0, b0, k))
    new = Counter(_pair_weights(a1, b1, k))
    gone = old - new
    came = new - old
    if event.exchanged:
        if not gone:
            raise InvariantViolation("ket exchange left all weights unchanged",
                                     event.step, event.pair, event.pre, event.post)
        if min(came) >= min(gone):
            raise InvariantViolation("ket exchange did not lower the weight vector",
                                     event.step, event.pair, event.pre, event.post)
    elif gone or came:
        raise InvariantViolation("weights changed without a ket exchange",
                                 event.step, event.pair, event.pre, event.post)


def run(config: Configuration, scheduler: Scheduler,
        policy: StopPolicy | None = None, *,
        assertions: str = "safety",
        trace: str = "changes",
        check_interval: int | None = None) -> RunResult:
    """Drive the configuration through the schedule until the policy stops.

    Quiescence is checked before the first interaction, then every
    check_interval interactions (default: one full round of n*(n-1)/2).
    Under UntilQuiescent the run stops at the first successful check or at
    the cap, whichever comes first; under FixedSteps it always executes
    exactly the requested number of interactions and the checks only feed
    the metrics. Assertion levels: "off", "safety" (bra-ket conservation),
    "full" (safety plus the weight-vector drop at each exchange); any
    violation raises InvariantViolation.
    """
    if assertions not in ASSERTION_LEVELS:
        raise ValueError(f"assertions must be one of {ASSERTION_LEVELS}, "
                         f"got {assertions!r}")
    if trace not in ("off", "changes", "full"):
        raise ValueError(f'trace must be "off", "changes" or "full", got {trace!r}')
    if policy is None:
        policy = UntilQuiescent()

    n, k = config.n, config.k
    round_length = max(pair_count(n), 1)
    if check_interval is None:
        check_interval = round_length
    elif check_interval < 1:
        raise ValueError(f"check interval must be positive, got {check_interval}")

    if isinstance(policy, UntilQuiescent):
        cycles = policy.max_cycles
        if cycles is None:
            cycles = DEFAULT_CAP_CYCLES_FACTOR * n * n
        if cycles < 0:
            raise ValueError(f"cap must be non-negative, got {cycles}")
        limit = cycles * round_length
        stop_on_quiescence = True
    else:
        if policy.steps < 0:
            raise ValueError(f"step budget must be non-negative, got {policy.steps}")
        limit = policy.steps
        stop_on_quiescence = False
    if limit > 0 and pair_count(n) == 0:
        # A single agent has no pairs; any step budget collapses to zero.
        limit = 0

    states = list(config.states)
    events: list[TraceEvent] = []
    total = exchanges = out_updates = 0
    quiescence_step: int | None = None

    def quiescent_now() -> bool:
        return is_quiescent(Configuration(k, tuple(states)))

    if quiescent_now():
        quiescence_step = 0
    while total < limit and not (stop_on_quiescence and quiescence_step is not None):
        pair = scheduler.pair_at(total)
        i, j = pair
        a, b = states[i], states[j]
        result = _interact(a, b, k)
        event = TraceEvent(total, pair, (a, b), (result.a, result.b),
                           result.exchanged, result.out_changed)
        if assertions != "off":
            _check_safety(event)
            if assertions == "full":
                _check_full(event, k)
        states[i], states[j] = result.a, result.b
        total += 1
        exchanges += result.exchanged
        out_updates += result.out_changed
        if trace == "full" or (trace == "changes"
                               and (result.exchanged or result.out_changed)):
            events.append(event)
        if quiescence_step is None and total % check_interval == 0:
            if quiescent_now():
                quiescence_step = total
    if quiescence_step is None and quiescent_now():
        # The budget ran out between checks; record the late detection.
        quiescence_step = total

    final = Configuration(k, tuple(states))
    metrics = RunMetrics(
        total_interactions=total,
        ket_exchanges=exchanges,
        out_updates=out_updates,
        quiescence_step=quiescence_step,
        converged=quiescence_step is not None,
        final_outputs=final.output_counts(),
    )
    return RunResult(final, RunTrace(trace, tuple(events)), metrics)
