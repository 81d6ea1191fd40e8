"""One population, start to quiescence, with the full event log.

A tiny three-agent population shows every changing step; a larger
population with a planted majority shows the metrics that come out of a
run. Round-robin scheduling guarantees quiescence.
"""

import numpy as np

from pluralitysim import RoundRobin, init_configuration, run

print("three agents, colors [0, 1, 1]")
config = init_configuration([0, 1, 1], 2)
final, trace, metrics = run(config, RoundRobin(config.n), trace="full")

for event in trace.events:
    note = "ket swap" if event.exchanged else (
        "broadcast" if event.out_changed else "no-op")
    print(f"  step {event.step}: pair {event.pair}  "
          f"{event.pre[0]} x {event.pre[1]} -> "
          f"{event.post[0]} x {event.post[1]}  [{note}]")

print(f"  quiescent after {metrics.quiescence_step} interactions, "
      f"{metrics.ket_exchanges} swaps, {metrics.out_updates} output updates")
print(f"  final outputs: {dict(metrics.final_outputs)}  "
      "(everyone agrees on the plurality color 1)")

print()
print("eighty agents, five colors, color 2 planted as a clear winner")
rng = np.random.default_rng(7)
colors = [int(c) for c in rng.integers(0, 5, size=80)]
colors[:12] = [2] * 12  # tilt the draw
config = init_configuration(colors, 5)
final, _, metrics = run(config, RoundRobin(config.n))

counts = {c: colors.count(c) for c in sorted(set(colors))}
print(f"  input histogram: {counts}")
print(f"  interactions to quiescence: {metrics.quiescence_step} "
      f"({metrics.ket_exchanges} of them swapped kets)")
print(f"  final outputs: {dict(metrics.final_outputs)}")
