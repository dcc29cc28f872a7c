"""Tour: bounded verdicts on the compiled safety games.

A halting machine's game is refuted (no joint strategy of agents 1 and 2
keeps the play safe), while a non-halting machine's game stays open at
every bound we try: the checker never claims True for a safety goal, it
only refutes or abstains.
"""

from atlir.formulas import parse_formula
from atlir.mc import Truth, check
from atlir.reduction import S_INIT, build_cgs
from atlir.turing import TuringMachine

halting = TuringMachine(
    states={"q0", "q1"},
    alphabet={"B", "a"},
    q0="q0",
    blank="B",
    delta={("q0", "B"): ("q1", "a", "R")},
)
looping = TuringMachine(
    states={"q0", "q1"},
    alphabet={"B", "a"},
    q0="q0",
    blank="B",
    delta={("q0", "B"): ("q1", "a", "R"), ("q1", "B"): ("q1", "a", "R")},
)

goal = parse_formula("<<1,2>> G ok")

print("Halting machine: search for the refuting bound")
g = build_cgs(halting).cgs
for bound in range(1, 9):
    verdict = check(g, S_INIT, goal, bound)
    print(f"  bound {bound}: {verdict.value.value}")
    if verdict.value is Truth.FALSE:
        print("  counterexample path:", " -> ".join(verdict.counterexample))
        break

print("\nLooping machine: the same question stays open")
g = build_cgs(looping).cgs
for bound in range(4, 8):
    verdict = check(g, S_INIT, goal, bound)
    print(f"  bound {bound}: {verdict.value.value}")

print("\nOne-step goals are decided outright:")
v = check(g, S_INIT, parse_formula("<<1,2>> X ok"), 1)
print("  <<1,2>> X ok :", v.value.value, "via", v.witness)

print("\nReachability goals come with a strategy table when forced.")
print("Agent 3 owns the branching, so the team cannot force p1; from the")
print("spawner itself, though, agent 2 can steer the fresh blank cell:")
v = check(g, S_INIT, parse_formula("<<1,2>> ok U p1"), 3)
print("  from s_init : <<1,2>> ok U p1 :", v.value.value)
v = check(g, "s_B", parse_formula("<<2>> ok U ok"), 1)
print("  from s_B    : <<2>> ok U ok   :", v.value.value)
v = check(g, "s_gen", parse_formula("<<1,2>> X ok"), 1)
print("  from s_gen  : <<1,2>> X ok    :", v.value.value, "via", v.witness)
