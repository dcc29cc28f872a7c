"""Compiling a deterministic Turing machine into a three-agent game.

The compiled structure encodes machine configurations horizontally: in a
computation tree of the game, the nodes of one tree level spell out one
tape, cell by cell, left to right.  State roles:

* ``s_init`` / ``s_init'``: the root and the entry to a reference branch
  that tracks the tape's left border.
* ``s_lb`` / ``s_lb'``: the left border cell and its steady state.
* ``s_gen``: spawns a fresh blank cell (the only state agent 1 observes).
* ``s_tr``: spawns a fresh cell separator (the only state agent 2 observes).
* ``s_tr'``: a cell separator; also the relay through which head moves
  travel between neighbouring branches.
* ``s_<a>``: a tape cell holding symbol ``a``.
* ``s_<q>,<a>``: the scanned cell: symbol ``a``, control state ``q``.
* ``s_<q>,<q'>,<L|R>``: a separator carrying a move of the machine from
  ``q`` to ``q'`` in the given direction.
* ``s_err``: absorbing sink for every deviation; the safety objective of
  agents 1 and 2 is to keep the play out of it.

Agents 1 and 2 may play anything but the branching actions; agent 3 only
branches (at ``s_init``, ``s_gen``, ``s_tr``) or idles.  Agent i in
{1, 2} observes exactly whether ``p_i`` holds, i.e. only distinguishes
``s_gen`` (respectively ``s_tr``) from everything else, so its uniform
strategies are functions of the history's ``p_i`` bit profile.

The machine halts on the empty word if and only if every joint strategy
of agents 1 and 2 eventually drops a reachable computation-tree node
into ``s_err``; the canonical simulating strategy below witnesses the
converse direction at any finite depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .cgs import Cgs, History, obs_equiv_histories
from .comptree import ComputationTree, OrderingNotTotal, level, saturate
from .strategies import AgentStrategy, TeamStrategy
from .turing import (
    LEFT,
    RIGHT,
    Configuration,
    TuringMachine,
    head_cell,
    lint_initial_state_reentry,
    parse_configuration,
    split_configuration,
    step,
)

IDLE = "idle"
BR1 = "br1"
BR2 = "br2"

S_INIT = "s_init"
S_INIT2 = "s_init'"
S_LB = "s_lb"
S_LB2 = "s_lb'"
S_GEN = "s_gen"
S_TR = "s_tr"
S_TR2 = "s_tr'"
S_ERR = "s_err"

OK = "ok"
P1 = "p1"
P2 = "p2"

RIGHTMOST_LABELS = frozenset({S_GEN, S_TR})


class IncompleteLevel(Exception):
    pass


def cell_state(a: str) -> str:
    return f"s_{a}"


def head_state(q: str, a: str) -> str:
    return f"s_{q},{a}"


def carrier_state(q: str, q2: str, move: str) -> str:
    return f"s_{q},{q2},{move}"


def move_action(q: str, q2: str, move: str) -> str:
    return f"({q},{q2},{move})"


def init_action(q0: str) -> str:
    return f"({q0})"


@dataclass
class ReductionCgs:
    """The compiled game plus the name maps of the construction."""

    cgs: Cgs
    machine: TuringMachine
    cell_states: dict[str, str]
    head_states: dict[tuple[str, str], str]
    carrier_states: dict[tuple[str, str, str], str]
    move_actions: dict[tuple[str, str, str], str]
    init_action: str
    lint: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.cell_of = {name: a for a, name in self.cell_states.items()}
        self.head_of = {name: qa for qa, name in self.head_states.items()}


def build_cgs(m: TuringMachine) -> ReductionCgs:
    """Compile a machine into its three-agent game structure.

    Move carrier states and move actions exist only for the (q, q', X)
    triples realised by some rule of the machine.  Every available joint
    action not listed by the construction leads to ``s_err``, and
    ``s_err`` loops to itself under everything, which makes the
    transition map total exactly on the available tuples.
    """
    fixed = [S_INIT, S_INIT2, S_LB, S_LB2, S_GEN, S_TR, S_TR2, S_ERR]
    cells = {a: cell_state(a) for a in sorted(m.alphabet)}
    heads = {
        (q, a): head_state(q, a)
        for q in sorted(m.states)
        for a in sorted(m.alphabet)
    }
    moves = sorted({(q, q2, mv) for (q, _), (q2, _, mv) in m.delta.items()})
    carriers = {t: carrier_state(*t) for t in moves}
    states = fixed + list(cells.values()) + list(heads.values()) + list(carriers.values())
    if len(set(states)) != len(states):
        raise ValueError("generated state names collide")

    movacts = {t: move_action(*t) for t in moves}
    q0act = init_action(m.q0)
    actions = [IDLE, q0act] + [movacts[t] for t in moves] + [BR1, BR2]

    label = {s: {OK} for s in states}
    label[S_GEN] = {P1, OK}
    label[S_TR] = {P2, OK}
    label[S_ERR] = set()

    def split_by(prop):
        inside = sorted(s for s in states if prop in label[s])
        outside = sorted(s for s in states if prop not in label[s])
        return [inside, outside]

    obs = {
        1: split_by(P1),
        2: split_by(P2),
        3: [[s] for s in sorted(states)],
    }

    acts12 = sorted(set(actions) - {BR1, BR2})
    avail = {
        1: {s: acts12 for s in states},
        2: {s: acts12 for s in states},
        3: {
            s: ([BR1, BR2] if s in (S_INIT, S_GEN, S_TR) else [IDLE])
            for s in states
        },
    }

    iii = (IDLE, IDLE, IDLE)
    listed: dict[tuple[str, tuple[str, str, str]], str] = {}

    def arrow(src, tup, dst):
        listed[(src, tuple(tup))] = dst

    arrow(S_INIT, (IDLE, IDLE, BR1), S_INIT2)
    arrow(S_INIT, (IDLE, IDLE, BR2), S_GEN)
    arrow(S_INIT2, iii, S_LB)
    arrow(S_LB, (IDLE, q0act, IDLE), S_LB2)
    arrow(S_LB2, iii, S_LB2)
    arrow(S_GEN, (IDLE, IDLE, BR1), cells[m.blank])
    arrow(S_GEN, (IDLE, IDLE, BR2), S_TR)
    arrow(S_TR, (IDLE, IDLE, BR1), S_TR2)
    arrow(S_TR, (IDLE, IDLE, BR2), S_GEN)

    for a, sa in cells.items():
        arrow(sa, iii, sa)
        for (q, q2, mv), act in movacts.items():
            # the head enters a neighbouring cell already in its new state
            if mv == RIGHT:
                arrow(sa, (IDLE, act, IDLE), heads[(q2, a)])
            else:
                arrow(sa, (act, IDLE, IDLE), heads[(q2, a)])
    arrow(cells[m.blank], (IDLE, q0act, IDLE), heads[(m.q0, m.blank)])

    for (q, a), sqa in heads.items():
        rule = m.delta.get((q, a))
        if rule is not None:
            q2, written, mv = rule
            act = movacts[(q, q2, mv)]
            if mv == RIGHT:
                arrow(sqa, (act, IDLE, IDLE), cells[written])
            else:
                arrow(sqa, (IDLE, act, IDLE), cells[written])

    arrow(S_TR2, iii, S_TR2)
    for (q, q2, mv), act in movacts.items():
        if mv == RIGHT:
            arrow(S_TR2, (act, IDLE, IDLE), carriers[(q, q2, mv)])
            arrow(carriers[(q, q2, mv)], (IDLE, act, IDLE), S_TR2)
        else:
            arrow(S_TR2, (IDLE, act, IDLE), carriers[(q, q2, mv)])
            arrow(carriers[(q, q2, mv)], (act, IDLE, IDLE), S_TR2)

    delta = {}
    for s in states:
        for a1 in acts12:
            for a2 in acts12:
                for a3 in avail[3][s]:
                    tup = (a1, a2, a3)
                    delta[(s, tup)] = listed.get((s, tup), S_ERR)

    g = Cgs(
        agents=3,
        states=states,
        props=[P1, P2, OK],
        label=label,
        obs=obs,
        actions=actions,
        avail=avail,
        delta=delta,
    )
    return ReductionCgs(
        cgs=g,
        machine=m,
        cell_states=cells,
        head_states=heads,
        carrier_states=carriers,
        move_actions=movacts,
        init_action=q0act,
        lint=lint_initial_state_reentry(m),
    )


# -- history classification --------------------------------------------------


@dataclass(frozen=True)
class HistoryType:
    kind: str  # "root" | "type1" | "type2_open" | "type2_closed" | "other"
    index: int | None = None

    @property
    def is_refined_type2(self) -> bool:
        return self.kind in ("type2_open", "type2_closed")

    def __str__(self):
        if self.kind == "type2_open":
            return f"type2({self.index})({self.index - 1})"
        if self.kind == "type2_closed":
            return f"type2({self.index})({self.index})"
        return self.kind


ROOT = HistoryType("root")
TYPE1 = HistoryType("type1")
OTHER = HistoryType("other")


def type2_open(i: int) -> HistoryType:
    return HistoryType("type2_open", i)


def type2_closed(i: int) -> HistoryType:
    return HistoryType("type2_closed", i)


def starts_generator_branch(h: History) -> bool:
    """Whether the history enters the generator branch at step one."""
    return len(h) >= 2 and h[0] == S_INIT and h[1] == S_GEN


def classify_history(h: History) -> HistoryType:
    """Which branch shape a history has.

    ``type1`` histories enter the reference branch.  ``type2_open(i)``
    histories saw i cell spawns and i-1 separator spawns: they follow
    the branch of cell i.  ``type2_closed(i)`` histories saw i of each:
    they follow the branch of separator i.  The single-state root
    history and everything unmatched are reported apart.
    """
    h = tuple(h)
    if not h:
        raise ValueError("histories must be non-empty")
    if h == (S_INIT,):
        return ROOT
    if h[0] != S_INIT:
        return OTHER
    if h[1] == S_INIT2:
        return TYPE1
    if h[1] != S_GEN:
        return OTHER
    gens = 0
    trs = 0
    pos = 1
    while pos < len(h):
        want = S_GEN if pos % 2 == 1 else S_TR
        if h[pos] != want:
            break
        if want == S_GEN:
            gens += 1
        else:
            trs += 1
        pos += 1
    rest = h[pos:]
    if any(s in (S_GEN, S_TR) for s in rest):
        return OTHER
    if gens == trs + 1:
        return type2_open(gens)
    if gens == trs and gens >= 1:
        return type2_closed(gens)
    return OTHER


# -- the canonical simulating strategy ----------------------------------------


def simulating_strategy(rc: ReductionCgs) -> TeamStrategy:
    """The strategy of agents 1 and 2 that tracks the machine.

    Each agent's choice is a function of what it observes: the history's
    length and the positions where its proposition held.  On histories
    observing the spawn pattern (p1 at positions 1, 3, .., 2i-1 for
    agent 1; p2 at 2, 4, .., 2i for agent 2) the agent replays the
    machine: it simulates enough steps to know the configuration the
    next move acts on and, when the scanned cell sits where that
    history's branch needs it, plays the matching move action.  Agent 2
    additionally plays the set-up action on every three-state history
    observing no p2, which covers both branches that write the initial
    head.  Everything else idles.

    Agent 1 initiates right moves (even history length) and discharges
    left-move carriers (odd length); agent 2 discharges right-move
    carriers (odd length) and initiates left moves (even length).

    Both strategies are functions of the observation class alone, hence
    uniform on all histories, and they are compatible with availability
    since agents 1 and 2 may play every non-branching action anywhere.
    """
    m = rc.machine
    g = rc.cgs
    configs: list[Configuration | None] = [parse_configuration(m, (m.q0, m.blank))]

    def config_after(t: int) -> Configuration | None:
        while len(configs) <= t:
            prev = configs[-1]
            if prev is None:
                configs.append(None)
                continue
            nxt = step(m, prev)
            configs.append(nxt if isinstance(nxt, Configuration) else None)
        return configs[t]

    def move_if(j: int, head_at: int, direction: str) -> str | None:
        c = config_after(j - 1)
        if c is None or head_cell(m, c) != head_at:
            return None
        _, q, right = split_configuration(m, c)
        rule = m.delta.get((q, right[0]))
        if rule is None or rule[2] != direction:
            return None
        return rc.move_actions[(q, rule[0], direction)]

    def positions(h: History, prop: str) -> list[int]:
        return [t for t, s in enumerate(h) if prop in g.label.get(s, frozenset())]

    def play1(h: History) -> str:
        pos = positions(h, P1)
        if pos and pos == list(range(1, 2 * len(pos), 2)):
            i = len(pos)
            n = len(h)
            if n >= 4 and n % 2 == 0:
                act = move_if((n - 2) // 2, head_at=i, direction=RIGHT)
                if act:
                    return act
            if n >= 5 and n % 2 == 1:
                act = move_if((n - 3) // 2, head_at=i + 1, direction=LEFT)
                if act:
                    return act
        return IDLE

    def play2(h: History) -> str:
        pos = positions(h, P2)
        if not pos:
            return rc.init_action if len(h) == 3 else IDLE
        if pos == list(range(2, 2 + 2 * len(pos), 2)):
            i = len(pos)
            n = len(h)
            if n >= 5 and n % 2 == 1:
                act = move_if((n - 3) // 2, head_at=i, direction=RIGHT)
                if act:
                    return act
            if n >= 4 and n % 2 == 0:
                act = move_if((n - 2) // 2, head_at=i + 1, direction=LEFT)
                if act:
                    return act
        return IDLE

    return TeamStrategy.of(
        AgentStrategy.from_procedure(1, play1),
        AgentStrategy.from_procedure(2, play2),
    )


def simulation_tree(rc: ReductionCgs, depth: int) -> ComputationTree:
    """Saturated tree from the initial state under the simulating strategy."""
    return saturate(rc.cgs, S_INIT, simulating_strategy(rc), depth)


def horizon(depth: int) -> int:
    """Machine steps that a depth-``depth`` tree keeps honest.

    If the machine runs this many steps without halting, the saturated
    simulation tree to ``depth`` contains no error node.
    """
    if depth < 3:
        return 0
    return -(-(depth - 3) // 2) + 1


# -- level decoding ------------------------------------------------------------


def _image(rc: ReductionCgs, state: str) -> tuple[str, ...]:
    sym = rc.cell_of.get(state)
    if sym is not None:
        return (sym,)
    qa = rc.head_of.get(state)
    if qa is not None:
        return qa
    return ()


def decode_level(rc: ReductionCgs, t: ComputationTree, n: int) -> tuple[str, ...]:
    """Read a tree level back as a configuration word.

    The level's nodes are taken left to right; cell states contribute
    their symbol, the scanned cell contributes state and symbol, and the
    bookkeeping states vanish.  Blank cells to the right of both the
    head and the last written symbol are generator padding and are
    stripped, so the odd levels of a simulation decode to exactly the
    machine's configurations.
    """
    if len(t.nodes_at_depth(n)) != n + 1:
        raise IncompleteLevel(
            f"level {n} has {len(t.nodes_at_depth(n))} nodes, needs {n + 1}"
        )
    ordered = level(t, n, RIGHTMOST_LABELS)
    word: list[str] = []
    for v in ordered:
        word.extend(_image(rc, t.label(v)))
    heads = [k for k, x in enumerate(word) if x in rc.machine.states]
    if len(heads) == 1:
        keep = heads[0] + 2  # never strip the scanned cell
        end = len(word)
        while end > keep and word[end - 1] == rc.machine.blank:
            end -= 1
        word = word[:end]
    return tuple(word)


# -- construction checks ---------------------------------------------------------


@dataclass
class ClaimEntry:
    claim: int
    subclaim: str
    level: int | None
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "subclaim": self.subclaim,
            "level": self.level,
            "pass": self.passed,
            "detail": self.detail,
        }


CLAIM_NAMES = {
    0: "ok-states",
    1: "history-pair equivalences",
    2: "level structure",
    3: "complete-level anatomy",
    4: "level decoding",
}


@dataclass
class ClaimReport:
    depth: int
    checked_levels: int
    entries: list[ClaimEntry]

    @property
    def all_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[ClaimEntry]:
        return [e for e in self.entries if not e.passed]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def _order_key(c: HistoryType):
    if c.kind == "type2_open":
        return (c.index, c.index - 1)
    if c.kind == "type2_closed":
        return (c.index, c.index)
    return None


def _precedes(c1: HistoryType, c2: HistoryType) -> bool:
    """The predicted strict order between two distinct level positions."""
    if c1.kind == "type1":
        return True
    k1, k2 = _order_key(c1), _order_key(c2)
    return k1 is not None and k2 is not None and k1 < k2


def verify_construction(rc: ReductionCgs, depth: int) -> ClaimReport:
    """Machine-check the structural and simulation laws of the compiled game.

    Saturates the tree under the simulating strategy and verifies, per
    level, four groups of properties:

    1. history-pair equivalences: which branch shapes may look alike to
       which agent;
    2. level structure: cardinality bound, branch-shape census, and a
       total left-to-right order matching the branch shapes;
    3. complete-level anatomy: downward completeness, the position-to-
       shape map, the equivalence chain between neighbouring branches,
       and the level-form grammar with its succession;
    4. level decoding: every complete odd level from 3 on reads as a
       configuration, and two levels later reads as its successor.

    Failures become report entries naming the offending level, never
    exceptions.  If an error node appears, the checks cover the levels
    before it and the report says where it surfaced.
    """
    if depth < 3:
        raise ValueError("depth must be at least 3")
    m = rc.machine
    g = rc.cgs
    t = simulation_tree(rc, depth)
    entries: list[ClaimEntry] = []

    err_level = None
    for n in range(depth + 1):
        if any(t.label(v) == S_ERR for v in t.nodes_at_depth(n)):
            err_level = n
            break
    limit = depth if err_level is None else err_level - 1
    entries.append(
        ClaimEntry(
            0,
            "ok-states",
            err_level,
            err_level is None,
            f"no error nodes to depth {depth}"
            if err_level is None
            else f"error state first reached at level {err_level}; "
            f"checks cover levels up to {limit}",
        )
    )

    hists: dict[int, list[History]] = {}
    types: dict[int, list[HistoryType]] = {}
    orders: dict[int, list] = {}
    order_fail: dict[int, str] = {}
    for n in range(limit + 1):
        nodes = t.nodes_at_depth(n)
        hists[n] = [t.history(v) for v in nodes]
        types[n] = [classify_history(h) for h in hists[n]]
        try:
            orders[n] = level(t, n, RIGHTMOST_LABELS)
        except OrderingNotTotal as exc:
            order_fail[n] = str(exc)

    _check_pair_equivalences(g, hists, types, limit, entries)
    _check_level_structure(t, types, orders, order_fail, limit, entries)
    complete = {n for n in range(1, limit + 1) if len(t.nodes_at_depth(n)) == n + 1}
    forms = _check_level_anatomy(rc, t, orders, order_fail, complete, entries)
    _check_form_succession(forms, complete, limit, entries)
    _check_decoding(rc, t, complete, order_fail, limit, entries)

    return ClaimReport(depth=depth, checked_levels=limit, entries=entries)


def _check_pair_equivalences(g, hists, types, limit, entries):
    for n in range(1, limit + 1):
        ok = {k: True for k in ("1.1", "1.2", "1.3", "1.4")}
        why = {k: "" for k in ok}
        rows = list(zip(hists[n], types[n]))
        for h1, c1 in rows:
            for h2, c2 in rows:
                if h1 == h2:
                    continue
                if c1.kind == "type1" and starts_generator_branch(h2):
                    if obs_equiv_histories(g, 1, h1, h2):
                        ok["1.1"], why["1.1"] = False, f"reference branch ~1 {c2}"
                    if obs_equiv_histories(g, 2, h1, h2) and c2 != type2_open(1):
                        ok["1.2"], why["1.2"] = False, f"reference branch ~2 {c2}"
                if starts_generator_branch(h1) and starts_generator_branch(h2):
                    counts1 = (h1.count(S_GEN), h1.count(S_TR))
                    counts2 = (h2.count(S_GEN), h2.count(S_TR))
                    if counts1 == counts2:
                        continue
                    if obs_equiv_histories(g, 1, h1, h2):
                        fine = (
                            c1.is_refined_type2
                            and c2.is_refined_type2
                            and c1.index == c2.index
                            and {c1.kind, c2.kind} == {"type2_open", "type2_closed"}
                        )
                        if not fine:
                            ok["1.3"], why["1.3"] = False, f"{c1} ~1 {c2}"
                    if obs_equiv_histories(g, 2, h1, h2):
                        fine = (
                            c1.kind == "type2_closed"
                            and c2.kind == "type2_open"
                            and c2.index == c1.index + 1
                        ) or (
                            c2.kind == "type2_closed"
                            and c1.kind == "type2_open"
                            and c1.index == c2.index + 1
                        )
                        if not fine:
                            ok["1.4"], why["1.4"] = False, f"{c1} ~2 {c2}"
        for k in ("1.1", "1.2", "1.3", "1.4"):
            entries.append(ClaimEntry(1, k, n, ok[k], why[k]))


def _check_level_structure(t, types, orders, order_fail, limit, entries):
    for n in range(1, limit + 1):
        cs = types[n]
        shapes_ok = len(cs) <= n + 1 and all(
            c.kind in ("type1", "type2_open", "type2_closed") for c in cs
        )
        entries.append(
            ClaimEntry(
                2,
                "2.1",
                n,
                shapes_ok,
                f"{len(cs)} nodes"
                if shapes_ok
                else f"{len(cs)} nodes, shapes {[str(c) for c in cs]}",
            )
        )
        n_ref = sum(1 for c in cs if c.kind == "type1")
        entries.append(ClaimEntry(2, "2.2", n, n_ref <= 1, f"{n_ref} reference nodes"))

        census_ok, detail = True, ""
        for kind, bound in (("type2_open", (n + 1) // 2), ("type2_closed", n // 2)):
            seen = [c.index for c in cs if c.kind == kind]
            if len(seen) != len(set(seen)) or any(i > bound for i in seen):
                census_ok, detail = False, f"{kind} census {sorted(seen)}"
        entries.append(ClaimEntry(2, "2.3", n, census_ok, detail))

        if n in order_fail:
            entries.append(ClaimEntry(2, "2.4", n, False, order_fail[n]))
            entries.append(ClaimEntry(2, "2.5", n, False, order_fail[n]))
            continue
        ordered = [classify_history(t.history(v)) for v in orders[n]]
        char_ok, detail = True, ""
        for a in range(len(ordered)):
            for b in range(a + 1, len(ordered)):
                if not _precedes(ordered[a], ordered[b]) or _precedes(ordered[b], ordered[a]):
                    char_ok = False
                    detail = f"positions {a + 1},{b + 1}: {ordered[a]} vs {ordered[b]}"
                    break
            if not char_ok:
                break
        entries.append(ClaimEntry(2, "2.4", n, char_ok, detail))
        entries.append(ClaimEntry(2, "2.5", n, True, "total order"))


def _check_level_anatomy(rc, t, orders, order_fail, complete, entries):
    g = rc.cgs
    forms: dict[int, str] = {}
    for n in sorted(complete):
        if n in order_fail:
            continue
        labels = [t.label(v) for v in orders[n]]
        paths = [t.history(v) for v in orders[n]]

        down_ok = all(len(t.nodes_at_depth(k)) == k + 1 for k in range(1, n))
        entries.append(ClaimEntry(3, "3.1", n, down_ok, ""))

        pos_ok, detail = True, ""
        for k, p in enumerate(paths, start=1):
            c = classify_history(p)
            if k == 1:
                want = c.kind == "type1"
            elif k % 2 == 0:
                want = c == type2_open(k // 2)
            else:
                want = c == type2_closed(k // 2)
            if not want:
                pos_ok, detail = False, f"position {k} is {c}"
                break
        entries.append(ClaimEntry(3, "3.2", n, pos_ok, detail))

        adj_ok, detail = True, ""
        if len(paths) >= 2 and not obs_equiv_histories(g, 2, paths[0], paths[1]):
            adj_ok, detail = False, "positions 1,2 not alike for agent 2"
        for i in range(1, (n + 1) // 2 + 1):
            a, b = 2 * i - 1, 2 * i  # 0-based: positions 2i and 2i+1
            if b < len(paths) and not obs_equiv_histories(g, 1, paths[a], paths[b]):
                adj_ok, detail = False, f"positions {a + 1},{b + 1} not alike for agent 1"
            c, d = 2 * i, 2 * i + 1  # 0-based: positions 2i+1 and 2i+2
            if d < len(paths) and not obs_equiv_histories(g, 2, paths[c], paths[d]):
                adj_ok, detail = False, f"positions {c + 1},{d + 1} not alike for agent 2"
        entries.append(ClaimEntry(3, "3.3", n, adj_ok, detail))

        form, why = _level_form(rc, n, labels)
        if form is not None:
            forms[n] = form
        entries.append(ClaimEntry(3, "3.4", n, form is not None, why))
    return forms


def _check_form_succession(forms, complete, limit, entries):
    succession = {"a": "b", "b": "c", "c": "d", "d": "c"}
    for n in sorted(complete):
        if n + 1 > limit:
            continue
        want = succession.get(forms.get(n))
        got = forms.get(n + 1)
        ok = (n + 1) in complete and want is not None and got == want
        entries.append(
            ClaimEntry(
                3,
                "3.5",
                n,
                ok,
                f"form {forms.get(n)} -> {got}"
                if ok
                else f"level {n + 1}: complete={(n + 1) in complete}, "
                f"form {forms.get(n)} -> {got}, wanted {want}",
            )
        )


def _check_decoding(rc, t, complete, order_fail, limit, entries):
    m = rc.machine
    for n in sorted(complete):
        if n < 3 or n % 2 == 0 or n in order_fail:
            continue
        word = decode_level(rc, t, n)
        heads = [k for k, x in enumerate(word) if x in m.states]
        shape_ok = (
            len(heads) == 1
            and heads[0] < len(word) - 1
            and all(x in m.alphabet for k, x in enumerate(word) if k != heads[0])
        )
        entries.append(ClaimEntry(4, "4.1", n, shape_ok, "".join(word)))
        if n + 2 in complete and n + 2 <= limit and (n + 2) not in order_fail:
            nxt = step(m, parse_configuration(m, word))
            got = decode_level(rc, t, n + 2)
            ok = isinstance(nxt, Configuration) and nxt.word == got
            entries.append(
                ClaimEntry(
                    4,
                    "4.2",
                    n,
                    ok,
                    f"{''.join(word)} => {''.join(got)}"
                    if ok
                    else f"step({''.join(word)}) = "
                    f"{''.join(nxt.word) if isinstance(nxt, Configuration) else nxt}"
                    f", level {n + 2} decodes to {''.join(got)}",
                )
            )


def _level_form(rc: ReductionCgs, n: int, labels: list[str]):
    """Match an ordered complete level against the four level forms.

    Returns ``(form, detail)`` with form one of "a".."d" on a match and
    ``(None, why)`` otherwise.  Form "a" is the two branch entries, "b"
    the first full border/cell/spawner row, "c" a configuration row
    (cells and separators, one scanned cell, fresh cell spawner at the
    right), "d" a transfer row (one move carrier in a separator slot,
    fresh blank cell and separator spawner at the right).
    """
    m = rc.machine
    if n == 1:
        ok = labels == [S_INIT2, S_GEN]
        return ("a", "") if ok else (None, f"level 1 is {labels}")
    if n == 2:
        ok = labels == [S_LB, rc.cell_states[m.blank], S_TR]
        return ("b", "") if ok else (None, f"level 2 is {labels}")
    if n % 2 == 1:
        if labels[0] != S_LB2 or labels[-1] != S_GEN:
            return None, f"borders are {labels[0]}, {labels[-1]}"
        scanned = 0
        for k in range(1, n):
            if k % 2 == 1:
                if labels[k] in rc.head_of:
                    scanned += 1
                elif labels[k] not in rc.cell_of:
                    return None, f"position {k + 1} is {labels[k]}, not a cell"
            elif labels[k] != S_TR2:
                return None, f"position {k + 1} is {labels[k]}, not a separator"
        if scanned != 1:
            return None, f"{scanned} scanned cells, expected 1"
        return "c", f"{(n - 1) // 2} cells"
    if labels[0] != S_LB2 or labels[-1] != S_TR or labels[-2] != rc.cell_states[m.blank]:
        return None, f"border {labels[0]}, tail {labels[-2:]}"
    carriers = 0
    carrier_names = set(rc.carrier_states.values())
    for k in range(1, n - 1):
        if k % 2 == 1:
            if labels[k] not in rc.cell_of:
                return None, f"position {k + 1} is {labels[k]}, not a cell"
        else:
            if labels[k] in carrier_names:
                carriers += 1
            elif labels[k] != S_TR2:
                return None, f"position {k + 1} is {labels[k]}"
    if carriers != 1:
        return None, f"{carriers} move carriers, expected 1"
    return "d", ""
