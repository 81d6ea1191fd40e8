"""States, weights, and single interactions, step by step.

Each agent carries a (bra, ket, out) triple of colors from the circle
{0, ..., k-1}. The bra-ket part is a directed arc on the circle whose
weight is the circular distance from bra to ket, except that a self-loop
weighs the full k. Run this to watch the two halves of an interaction:
the conditional ket swap, then the self-loop broadcast.
"""

from pluralitysim import AgentState, apply_interaction, init_agent, weight

K = 5

print(f"weights on the {K}-color circle")
for bra, ket in [(1, 3), (3, 1), (2, 2), (0, 4)]:
    kind = "self-loop" if bra == ket else "arc"
    print(f"  w(<{bra}|{ket}>) = {weight(bra, ket, K)}  ({kind})")

print()
print("a fresh agent is a self-loop on its input color, outputting it")
print(f"  init_agent(3, k={K}) -> {init_agent(3, K)}")

print()
print("interaction = conditional ket swap, then self-loop broadcast")
cases = [
    ("two distinct self-loops always swap",
     AgentState(1, 1, 1), AgentState(3, 3, 3), 4),
    ("opposite arcs are already as light as they get",
     AgentState(0, 1, 1), AgentState(1, 0, 1), 2),
    ("a self-loop recruits the other agent's output",
     AgentState(2, 2, 2), AgentState(0, 1, 0), 3),
]
for label, a, b, k in cases:
    result = apply_interaction(a, b, k)
    print(f"\n  {label} (k={k})")
    print(f"    {a} x {b}")
    print(f"    -> {result.a} x {result.b}")
    print(f"    exchanged={result.exchanged} out_changed={result.out_changed}")

print()
print("the swap rule: trade kets only if the smaller weight strictly drops")
a, b, k = AgentState(1, 1, 1), AgentState(3, 3, 3), 4
kept = min(weight(a.bra, a.ket, k), weight(b.bra, b.ket, k))
swapped = min(weight(a.bra, b.ket, k), weight(b.bra, a.ket, k))
print(f"  {a} x {b}: min weight {kept} now, {swapped} after a swap "
      f"-> swap {'happens' if swapped < kept else 'is refused'}")
