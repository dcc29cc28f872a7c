"""Bounded three-valued checking of coalition formulas.

Atoms, negation, conjunction and the one-step coalition modality are
decided outright.  The two unbounded modalities are approximated in
their sound direction only:

* ``<<A>> G f`` is refutation-only.  False means that every uniform
  strategy table admits, within the bound, a reachable state where ``f``
  fails; since any full strategy restricts to such a table, no strategy
  enforces ``f`` globally.  True is never produced.
* ``<<A>> f U g`` is witness-only.  True comes with a finite table that
  forces ``g`` within the bound on every outcome, ``f`` holding strictly
  before; False is never produced.

Verdicts carry evidence: True a witness, False a counterexample, and
Unknown neither.  The evidence shape depends on the operator and is
documented on :func:`check`.  Strategy tables are enumerated in
lexicographic order (history length, observation blocks, action name),
so verdicts and evidence are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .cgs import Cgs, CgsError, History, UnknownAgent
from .comptree import ComputationTree, extend, single_node
from .formulas import And, Atom, Formula, Globally, Next, Not, Until, atoms, coalitions
from .strategies import AgentStrategy, TeamStrategy, compatible_tuples


class BoundTooSmall(ValueError):
    pass


class UnknownProposition(CgsError):
    pass


class Truth(Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    value: Truth
    bound_used: int
    witness: object = None
    counterexample: object = None

    def to_json(self) -> dict:
        return {
            "verdict": self.value.value,
            "bound": self.bound_used,
            "witness": self.witness,
            "counterexample": self.counterexample,
        }


def _flip(v: Verdict) -> Verdict:
    if v.value is Truth.TRUE:
        return Verdict(Truth.FALSE, v.bound_used, counterexample=v.witness)
    if v.value is Truth.FALSE:
        return Verdict(Truth.TRUE, v.bound_used, witness=v.counterexample)
    return Verdict(Truth.UNKNOWN, v.bound_used)


class _Search:
    """Shared machinery for the strategy-table searches.

    A candidate table is grown depth by depth: at each step the frontier
    histories are grouped, per team member, into observation classes,
    and each class is assigned one available action.  Assignments are
    enumerated lexicographically.  Successor sets per (state, member
    actions) are cached; so are subformula verdicts per state.
    """

    def __init__(self, g: Cgs, members: list[int]):
        self.g = g
        self.members = members
        self.free = [i for i in range(1, g.agents + 1) if i not in members]
        self._succ: dict[tuple[str, tuple[str, ...]], tuple[str, ...]] = {}

    def successors(self, state: str, member_acts: tuple[str, ...]) -> tuple[str, ...]:
        key = (state, member_acts)
        got = self._succ.get(key)
        if got is None:
            free_opts = [self.g.available_sorted(i, state) for i in self.free]
            by_agent = {m: a for m, a in zip(self.members, member_acts)}
            seen: list[str] = []
            for free_acts in itertools.product(*free_opts):
                by_agent.update(zip(self.free, free_acts))
                joint = tuple(by_agent[i] for i in range(1, self.g.agents + 1))
                t = self.g.delta.get((state, joint))
                if t is not None and t not in seen:
                    seen.append(t)
            got = tuple(seen)
            self._succ[key] = got
        return got

    def assignments(self, frontier: Iterable[History]):
        """All per-class action assignments for one step, in order.

        Yields dicts from (member, observation key) to an action.
        """
        slots: list[tuple[int, tuple[int, ...]]] = []
        rep: dict[tuple[int, tuple[int, ...]], str] = {}
        for m in self.members:
            for h in frontier:
                key = (m, self.g.obs_key(m, h))
                if key not in rep:
                    rep[key] = h[-1]
                    slots.append(key)
        slots.sort(key=lambda mk: (mk[0], len(mk[1]), mk[1]))
        options = [self.g.available_sorted(m, rep[(m, k)]) for m, k in slots]
        for combo in itertools.product(*options):
            yield dict(zip(slots, combo))

    def member_acts(self, assignment, h: History) -> tuple[str, ...]:
        return tuple(assignment[(m, self.g.obs_key(m, h))] for m in self.members)


def check(g: Cgs, s: str, f: Formula, bound: int) -> Verdict:
    """Three-valued bounded evaluation of ``f`` at state ``s``.

    Evidence shapes: atoms carry the state as a one-element path; the
    one-step modality carries the chosen member actions (True) or one
    failing successor per assignment (False); the globally modality
    carries a falsifying state path; the until modality carries a
    strategy table dump.  Negation swaps the roles, conjunction
    propagates the deciding side.

    Nested coalition modalities are evaluated by fresh state-based
    sub-checks at the same bound; their Unknowns propagate.
    """
    if bound < 1:
        raise BoundTooSmall(f"bound {bound} is below the minimal horizon 1")
    g.check_state(s)
    for p in sorted(atoms(f)):
        if p not in g.props:
            raise UnknownProposition(f"formula uses undeclared proposition {p!r}")
    for coalition in coalitions(f):
        for i in coalition:
            if not 1 <= i <= g.agents:
                raise UnknownAgent(f"formula uses undeclared agent {i}")
    memo: dict[tuple[str, Formula], Verdict] = {}
    return _eval(g, s, f, bound, memo)


def _eval(g: Cgs, s: str, f: Formula, bound: int, memo) -> Verdict:
    key = (s, f)
    got = memo.get(key)
    if got is None:
        got = _eval_raw(g, s, f, bound, memo)
        memo[key] = got
    return got


def _eval_raw(g: Cgs, s: str, f: Formula, bound: int, memo) -> Verdict:
    if isinstance(f, Atom):
        if f.name in g.label[s]:
            return Verdict(Truth.TRUE, bound, witness=[s])
        return Verdict(Truth.FALSE, bound, counterexample=[s])
    if isinstance(f, Not):
        return _flip(_eval(g, s, f.operand, bound, memo))
    if isinstance(f, And):
        left = _eval(g, s, f.left, bound, memo)
        if left.value is Truth.FALSE:
            return Verdict(Truth.FALSE, bound, counterexample=left.counterexample)
        right = _eval(g, s, f.right, bound, memo)
        if right.value is Truth.FALSE:
            return Verdict(Truth.FALSE, bound, counterexample=right.counterexample)
        if left.value is Truth.TRUE and right.value is Truth.TRUE:
            return Verdict(
                Truth.TRUE, bound, witness={"left": left.witness, "right": right.witness}
            )
        return Verdict(Truth.UNKNOWN, bound)
    if isinstance(f, Next):
        return _check_next(g, s, f, bound, memo)
    if isinstance(f, Globally):
        return _check_box(g, s, f, bound, memo)
    if isinstance(f, Until):
        return _check_until(g, s, f, bound, memo)
    raise TypeError(f"not a formula: {f!r}")


def _check_next(g: Cgs, s: str, f: Next, bound: int, memo) -> Verdict:
    members = sorted(f.agents)
    search = _Search(g, members)
    options = [g.available_sorted(m, s) for m in members]
    failures = []
    saw_undecided = False
    for combo in itertools.product(*options):
        succs = search.successors(s, combo)
        verdicts = [_eval(g, t, f.operand, bound, memo) for t in succs]
        if all(v.value is Truth.TRUE for v in verdicts):
            return Verdict(
                Truth.TRUE,
                bound,
                witness={"actions": {m: a for m, a in zip(members, combo)}},
            )
        bad = next(
            (t for t, v in zip(succs, verdicts) if v.value is Truth.FALSE), None
        )
        if bad is None:
            saw_undecided = True
        else:
            failures.append(
                {"actions": {m: a for m, a in zip(members, combo)}, "path": [s, bad]}
            )
    if saw_undecided:
        return Verdict(Truth.UNKNOWN, bound)
    return Verdict(Truth.FALSE, bound, counterexample={"per_assignment": failures})


def _check_box(g: Cgs, s: str, f: Globally, bound: int, memo) -> Verdict:
    root = _eval(g, s, f.operand, bound, memo)
    if root.value is Truth.FALSE:
        return Verdict(Truth.FALSE, bound, counterexample=[s])
    search = _Search(g, sorted(f.agents))
    first_bad: list[list[str]] = []

    def survives(frontier: tuple[History, ...], depth_left: int) -> bool:
        if depth_left == 0:
            return True
        for assignment in search.assignments(frontier):
            nxt: dict[History, None] = {}
            bad = None
            for h in frontier:
                acts = search.member_acts(assignment, h)
                for t in search.successors(h[-1], acts):
                    v = _eval(g, t, f.operand, bound, memo)
                    if v.value is Truth.FALSE:
                        bad = list(h) + [t]
                        break
                    nxt[h + (t,)] = None
                if bad is not None:
                    break
            if bad is not None:
                if not first_bad:
                    first_bad.append(bad)
                continue
            if survives(tuple(nxt), depth_left - 1):
                return True
        return False

    if survives(((s,),), bound):
        return Verdict(Truth.UNKNOWN, bound)
    return Verdict(Truth.FALSE, bound, counterexample=first_bad[0] if first_bad else [s])


def _check_until(g: Cgs, s: str, f: Until, bound: int, memo) -> Verdict:
    goal = _eval(g, s, f.right, bound, memo)
    if goal.value is Truth.TRUE:
        return Verdict(Truth.TRUE, bound, witness={"satisfied_at": [s], "table": []})
    keep = _eval(g, s, f.left, bound, memo)
    if keep.value is not Truth.TRUE:
        return Verdict(Truth.UNKNOWN, bound)
    search = _Search(g, sorted(f.agents))

    def force(frontier: tuple[History, ...], depth_left: int, table: dict):
        if not frontier:
            return table
        if depth_left == 0:
            return None
        for assignment in search.assignments(frontier):
            nxt: dict[History, None] = {}
            stuck = False
            for h in frontier:
                acts = search.member_acts(assignment, h)
                for t in search.successors(h[-1], acts):
                    vg = _eval(g, t, f.right, bound, memo)
                    if vg.value is Truth.TRUE:
                        continue
                    vk = _eval(g, t, f.left, bound, memo)
                    if vk.value is not Truth.TRUE:
                        stuck = True
                        break
                    nxt[h + (t,)] = None
                if stuck:
                    break
            if stuck:
                continue
            got = force(tuple(nxt), depth_left - 1, {**table, **assignment})
            if got is not None:
                return got
        return None

    table = force(((s,),), bound, {})
    if table is None:
        return Verdict(Truth.UNKNOWN, bound)
    rows = [
        {"agent": m, "obs_history": list(k), "action": a}
        for (m, k), a in sorted(table.items())
    ]
    return Verdict(Truth.TRUE, bound, witness={"table": rows})


def check_box_atomic(
    g: Cgs, s: str, team: Iterable[int], p: str, bound: int
) -> Verdict:
    """Safety check specialised to an atomic objective.

    Same verdict contract as :func:`check` on ``<<team>> G p``, but
    implemented through explicit computation trees: candidate tables are
    grown alongside the tree they induce, one extension step at a time,
    and a table is refuted as soon as a node's label misses ``p``.
    Kept separate from :func:`check` so the two can be tested against
    each other.
    """
    if bound < 1:
        raise BoundTooSmall(f"bound {bound} is below the minimal horizon 1")
    g.check_state(s)
    if p not in g.props:
        raise UnknownProposition(f"undeclared proposition {p!r}")
    members = sorted(set(int(i) for i in team))
    if not members:
        raise ValueError("team must be non-empty")
    for i in members:
        g.check_agent(i)
    if p not in g.label[s]:
        return Verdict(Truth.FALSE, bound, counterexample=[s])
    first_bad: list[list[str]] = []

    def class_assignments(frontier):
        # grouping and enumeration kept separate from the search used by
        # check(), so the two routes stay independent
        slots = []
        for h in frontier:
            for m in members:
                key = (m, g.obs_key(m, h))
                if key not in [k for k, _ in slots]:
                    slots.append((key, h[-1]))
        slots.sort(key=lambda item: (item[0][0], item[0][1]))
        options = [g.available_sorted(m, last) for (m, _), last in slots]
        for combo in itertools.product(*options):
            yield dict(zip((key for key, _ in slots), combo))

    def survives(tree: ComputationTree, tables: dict, depth_left: int) -> bool:
        if depth_left == 0:
            return True
        depth = tree.max_depth
        leaves = tree.nodes_at_depth(depth)
        frontier = [tree.history(v) for v in leaves]
        for assignment in class_assignments(frontier):
            new_tables = {m: dict(tables[m]) for m in members}
            for (m, key), act in assignment.items():
                new_tables[m][key] = act
            team_strategy = TeamStrategy.of(
                *(AgentStrategy.from_table(m, new_tables[m]) for m in members)
            )
            grown = tree
            bad = None
            for v in leaves:
                h = grown.history(v)
                for a in sorted(compatible_tuples(g, team_strategy, h)):
                    grown = extend(g, team_strategy, grown, v, a)
                    t = grown.label(v + (a,))
                    if p not in g.label[t]:
                        bad = list(h) + [t]
                        break
                if bad is not None:
                    break
            if bad is not None:
                if not first_bad:
                    first_bad.append(bad)
                continue
            if survives(grown, new_tables, depth_left - 1):
                return True
        return False

    if survives(single_node(s), {m: {} for m in members}, bound):
        return Verdict(Truth.UNKNOWN, bound)
    return Verdict(Truth.FALSE, bound, counterexample=first_bad[0] if first_bad else [s])
