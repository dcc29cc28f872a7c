import pytest

from machines import FIVE_MACHINES, LOOP3

from atlir.cgs import validate_cgs
from atlir.reduction import (
    BR1,
    BR2,
    IDLE,
    OTHER,
    ROOT,
    S_ERR,
    S_GEN,
    S_INIT,
    S_INIT2,
    S_LB,
    S_LB2,
    S_TR,
    S_TR2,
    TYPE1,
    IncompleteLevel,
    build_cgs,
    classify_history,
    decode_level,
    horizon,
    simulating_strategy,
    simulation_tree,
    type2_closed,
    type2_open,
    verify_construction,
)
from atlir.strategies import is_uniform
from atlir.turing import TuringMachine, halts_within


def test_build_counts(rc5):
    # 8 bookkeeping + 3 cells + 9 scanned-cell pairs + 2 realised moves
    assert len(rc5.cgs.states) == 22
    # idle, set-up, 2 moves, 2 branches
    assert len(rc5.cgs.actions) == 6
    assert validate_cgs(rc5.cgs) == []


def test_build_golden_transitions(rc5):
    g = rc5.cgs
    d = g.delta
    r_move = rc5.move_actions[("q0", "q1", "R")]
    l_move = rc5.move_actions[("q1", "q2", "L")]
    assert d[(S_INIT, (IDLE, IDLE, BR1))] == S_INIT2
    assert d[(S_INIT, (IDLE, IDLE, BR2))] == S_GEN
    assert d[(S_INIT2, (IDLE, IDLE, IDLE))] == S_LB
    assert d[(S_LB, (IDLE, rc5.init_action, IDLE))] == S_LB2
    assert d[(S_GEN, (IDLE, IDLE, BR1))] == "s_B"
    assert d[(S_GEN, (IDLE, IDLE, BR2))] == S_TR
    assert d[(S_TR, (IDLE, IDLE, BR1))] == S_TR2
    assert d[(S_TR, (IDLE, IDLE, BR2))] == S_GEN
    # separator picks up a move initiated by agent 1 (right) or 2 (left)
    assert d[(S_TR2, (r_move, IDLE, IDLE))] == "s_q0,q1,R"
    assert d[(S_TR2, (IDLE, l_move, IDLE))] == "s_q1,q2,L"
    assert d[("s_q0,q1,R", (IDLE, r_move, IDLE))] == S_TR2
    assert d[("s_q1,q2,L", (l_move, IDLE, IDLE))] == S_TR2
    # the scanned cell steps by the machine's rule
    assert d[("s_q0,B", (r_move, IDLE, IDLE))] == "s_a"
    assert d[("s_q1,B", (IDLE, l_move, IDLE))] == "s_b"
    # a neighbouring cell receives the head in the rule's target state
    assert d[("s_B", (IDLE, r_move, IDLE))] == "s_q1,B"
    assert d[("s_a", (l_move, IDLE, IDLE))] == "s_q2,a"
    assert d[("s_B", (IDLE, rc5.init_action, IDLE))] == "s_q0,B"
    # everything unlisted falls into the sink, which is absorbing
    assert d[("s_q0,B", (IDLE, IDLE, IDLE))] == S_ERR
    assert d[(S_ERR, (IDLE, IDLE, IDLE))] == S_ERR
    assert all(
        d[(S_ERR, a)] == S_ERR for a in g.joint_choices(S_ERR)
    )


def test_move_states_only_for_realised_rules(rc5):
    names = set(rc5.cgs.states)
    assert "s_q0,q1,R" in names and "s_q1,q2,L" in names
    assert "s_q0,q1,L" not in names and "s_q2,q1,R" not in names


def test_observation_structure(rc5):
    g = rc5.cgs
    assert g.label[S_GEN] == frozenset({"p1", "ok"})
    assert g.label[S_TR] == frozenset({"p2", "ok"})
    assert g.label[S_ERR] == frozenset()
    assert g.label[S_LB] == frozenset({"ok"})
    # agent 3 sees everything
    assert all(len(b) == 1 for b in g.obs[3])
    # agents 1/2 split the states by their proposition only
    assert sorted(map(len, g.obs[1])) == [1, 21]
    assert sorted(map(len, g.obs[2])) == [1, 21]


def test_classify_history():
    assert classify_history((S_INIT,)) == ROOT
    assert classify_history((S_INIT, S_INIT2, S_LB)) == TYPE1
    assert classify_history((S_INIT, S_GEN, S_TR, S_GEN, "s_B")) == type2_open(2)
    assert classify_history((S_INIT, S_GEN, "s_B")) == type2_open(1)
    assert classify_history((S_INIT, S_GEN, S_TR)) == type2_closed(1)
    assert classify_history((S_INIT, S_GEN, S_TR, S_TR2, "s_q0,q1,R")) == type2_closed(1)
    assert classify_history((S_LB,)) == OTHER
    assert classify_history((S_INIT, S_LB)) == OTHER
    # a spawn state in the tail disqualifies the refined shapes
    assert classify_history((S_INIT, S_GEN, "s_B", S_GEN)) == OTHER


def test_strategy_setup_clauses(rc5):
    team = simulating_strategy(rc5)
    s1, s2 = team.strategies[1], team.strategies[2]
    g = rc5.cgs
    assert s2.action(g, (S_INIT, S_INIT2, S_LB)) == rc5.init_action
    assert s2.action(g, (S_INIT, S_GEN, "s_B")) == rc5.init_action
    assert s1.action(g, (S_INIT,)) == IDLE
    assert s2.action(g, (S_INIT,)) == IDLE
    assert s1.action(g, (S_INIT, S_INIT2, S_LB, S_LB2)) == IDLE


def test_strategy_simulation_clauses(rc5):
    team = simulating_strategy(rc5)
    s1, s2 = team.strategies[1], team.strategies[2]
    g = rc5.cgs
    # scanned cell of the initial configuration steps right
    assert s1.action(g, (S_INIT, S_GEN, "s_B", "s_q0,B")) == rc5.move_actions[("q0", "q1", "R")]
    # the separator right of it plays the same (it cannot tell them apart)
    assert s1.action(g, (S_INIT, S_GEN, S_TR, S_TR2)) == rc5.move_actions[("q0", "q1", "R")]
    # agent 2 discharges the carrier one level later
    assert (
        s2.action(g, (S_INIT, S_GEN, S_TR, S_TR2, "s_q0,q1,R"))
        == rc5.move_actions[("q0", "q1", "R")]
    )
    # and hands the head to the fresh blank cell
    assert s2.action(g, (S_INIT, S_GEN, S_TR, S_GEN, "s_B")) == rc5.move_actions[("q0", "q1", "R")]
    # the left move one round later, initiated by agent 2 at the scanned cell
    assert (
        s2.action(g, (S_INIT, S_GEN, S_TR, S_GEN, "s_B", "s_q1,B"))
        == rc5.move_actions[("q1", "q2", "L")]
    )
    # and received by cell 1 through agent 1
    assert (
        s1.action(g, (S_INIT, S_GEN, "s_B", "s_q0,B", "s_a", "s_a", "s_a"))
        == rc5.move_actions[("q1", "q2", "L")]
    )


def test_strategy_is_uniform_to_depth_seven(rc5):
    team = simulating_strategy(rc5)
    assert is_uniform(rc5.cgs, team.strategies[1], S_INIT, 7)
    assert is_uniform(rc5.cgs, team.strategies[2], S_INIT, 7)


def test_decode_levels(rc5):
    t = simulation_tree(rc5, 7)
    assert "".join(decode_level(rc5, t, 3)) == "q0B"
    assert "".join(decode_level(rc5, t, 5)) == "aq1B"
    assert "".join(decode_level(rc5, t, 7)) == "q2ab"


def test_decode_requires_complete_level(rc5):
    t = simulation_tree(rc5, 3)
    with pytest.raises(IncompleteLevel):
        decode_level(rc5, t, 5)


def test_decode_initial_configuration_everywhere():
    for m in FIVE_MACHINES.values():
        rc = build_cgs(m)
        t = simulation_tree(rc, 3)
        assert "".join(decode_level(rc, t, 3)) == m.q0 + m.blank


def test_simulation_tree_has_no_err_for_nonhalting(rc_ext):
    t = simulation_tree(rc_ext, 8)
    assert all(
        t.label(v) != S_ERR for n in range(9) for v in t.nodes_at_depth(n)
    )


def test_err_appears_after_halting_frontier(rc5):
    t = simulation_tree(rc5, 8)
    labels8 = [t.label(v) for v in t.nodes_at_depth(8)]
    assert S_ERR in labels8
    t7 = simulation_tree(rc5, 7)
    assert all(
        t7.label(v) != S_ERR for n in range(8) for v in t7.nodes_at_depth(n)
    )


def test_horizon_soundness():
    for name, m in FIVE_MACHINES.items():
        for depth in (3, 5, 7, 9):
            if not halts_within(m, horizon(depth)):
                rc = build_cgs(m)
                t = simulation_tree(rc, depth)
                assert all(
                    t.label(v) != S_ERR
                    for n in range(depth + 1)
                    for v in t.nodes_at_depth(n)
                ), f"{name} at depth {depth}"


def test_verify_construction_nonhalting(rc_ext):
    report = verify_construction(rc_ext, 9)
    assert report.all_pass, report.failures()[:5]
    assert report.checked_levels == 9


def test_verify_construction_m5_depth7(rc5):
    report = verify_construction(rc5, 7)
    assert report.all_pass, report.failures()[:5]
    # decoding rows are present for the odd configuration levels
    rows = [e for e in report.entries if e.claim == 4 and e.subclaim == "4.2"]
    assert sorted(e.level for e in rows) == [3, 5]


def test_verify_construction_reports_halting_frontier(rc5):
    report = verify_construction(rc5, 8)
    assert not report.all_pass
    noted = [e for e in report.entries if e.claim == 0]
    assert noted and noted[0].level == 8
    # everything before the frontier still passes
    assert all(e.passed for e in report.entries if e.claim != 0)


def test_verify_construction_depth_guard(rc5):
    with pytest.raises(ValueError):
        verify_construction(rc5, 2)


def test_pair_equivalence_properties(rc_ext):
    # reference-branch histories never look like generator-branch ones
    # to agent 1; shape census per level stays within one of each kind
    report = verify_construction(rc_ext, 9)
    by_sub = {}
    for e in report.entries:
        by_sub.setdefault(e.subclaim, []).append(e)
    for sub in ("1.1", "1.2", "1.3", "1.4", "2.3", "3.3"):
        assert by_sub[sub] and all(e.passed for e in by_sub[sub])


def test_lint_surfaced_for_reentrant_machines():
    m = TuringMachine(
        {"q0"}, {"B"}, "q0", "B", {("q0", "B"): ("q0", "B", "R")}
    )
    rc = build_cgs(m)
    assert rc.lint
    # compilation still succeeds and validates
    assert validate_cgs(rc.cgs) == []


def test_loop3_claims_hold_deeper():
    rc = build_cgs(LOOP3)
    report = verify_construction(rc, 11)
    assert report.all_pass, report.failures()[:5]


def test_blank_writing_zigzag_decodes_correctly():
    # writes blanks in both directions and then rides right over them,
    # exercising the padding-stripping on every kind of level
    zigzag = TuringMachine(
        states={"q0", "q1", "q2", "q3", "q4", "q5"},
        alphabet={"B", "x", "y"},
        q0="q0",
        blank="B",
        delta={
            ("q0", "B"): ("q1", "x", "R"),
            ("q1", "B"): ("q2", "y", "R"),
            ("q2", "B"): ("q3", "B", "L"),
            ("q3", "y"): ("q4", "B", "L"),
            ("q4", "x"): ("q5", "x", "R"),
            ("q5", "B"): ("q5", "B", "R"),
        },
    )
    rc = build_cgs(zigzag)
    report = verify_construction(rc, 15)
    assert report.all_pass, report.failures()[:5]
    t = simulation_tree(rc, 11)
    decoded = ["".join(decode_level(rc, t, n)) for n in (3, 5, 7, 9, 11)]
    assert decoded == ["q0B", "xq1B", "xyq2B", "xq3y", "q4x"]
