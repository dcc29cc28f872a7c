"""Tour: from a Turing machine to a three-agent game and back.

Compiles a two-rule machine, saturates the computation tree under the
canonical simulating strategy, and reads the machine's configurations
back off the tree levels.
"""

from atlir.reduction import (
    RIGHTMOST_LABELS,
    build_cgs,
    decode_level,
    simulation_tree,
)
from atlir.comptree import level
from atlir.turing import TuringMachine, run

machine = TuringMachine(
    states={"q0", "q1", "q2"},
    alphabet={"B", "a", "b"},
    q0="q0",
    blank="B",
    delta={("q0", "B"): ("q1", "a", "R"), ("q1", "B"): ("q2", "b", "L")},
)

print("The machine writes a, steps right, writes b, steps left, halts:")
for n in range(3):
    print(f"  after {n} steps: {run(machine, n)}")

rc = build_cgs(machine)
print(f"\nCompiled game: {len(rc.cgs.states)} states, "
      f"{len(rc.cgs.actions)} actions, {len(rc.cgs.delta)} transitions")
print("Move actions:", sorted(rc.move_actions.values()))

tree = simulation_tree(rc, 7)
print("\nSaturated tree under the simulating strategy, level by level:")
for n in range(8):
    row = [tree.label(v) for v in level(tree, n, RIGHTMOST_LABELS)]
    print(f"  level {n}: {'  '.join(row)}")

print("\nOdd levels decode to the machine's configurations:")
for n in (3, 5, 7):
    print(f"  level {n} reads {''.join(decode_level(rc, tree, n))}")
