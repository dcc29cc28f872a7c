import random

import pytest

from atlir.cgs import Cgs
from atlir.comptree import (
    DuplicateAction,
    IncompatibleAction,
    OrderingNotTotal,
    UndefinedSuccessor,
    extend,
    is_complete_level,
    level,
    levels_to_json,
    saturate,
    single_node,
    to_dot,
)
from atlir.reduction import (
    BR1,
    BR2,
    IDLE,
    RIGHTMOST_LABELS,
    S_GEN,
    S_INIT,
    simulating_strategy,
    simulation_tree,
)
from atlir.strategies import AgentStrategy, TeamStrategy


def test_extend_adds_leaf(rc5):
    team = simulating_strategy(rc5)
    t = single_node(S_INIT)
    t2 = extend(rc5.cgs, team, t, (), (IDLE, IDLE, BR2))
    assert t2.label(((IDLE, IDLE, BR2),)) == S_GEN
    assert len(t2) == 2
    assert len(t) == 1  # persistent value, original untouched


def test_extend_duplicate_action(rc5):
    team = simulating_strategy(rc5)
    t = extend(rc5.cgs, team, single_node(S_INIT), (), (IDLE, IDLE, BR2))
    with pytest.raises(DuplicateAction):
        extend(rc5.cgs, team, t, (), (IDLE, IDLE, BR2))


def test_extend_incompatible_action(rc5):
    team = simulating_strategy(rc5)
    with pytest.raises(IncompatibleAction):
        extend(rc5.cgs, team, single_node(S_INIT), (), (rc5.init_action, IDLE, BR1))


def test_extend_undefined_successor():
    # 'b' is available at x but the (invalid) structure has no transition
    g = Cgs(
        agents=1,
        states=["r", "x"],
        props=["p"],
        label={},
        obs={1: [["r", "x"]]},
        actions=["a", "b"],
        avail={1: {"r": ["a", "b"], "x": ["a", "b"]}},
        delta={("r", ("a",)): "x", ("r", ("b",)): "x", ("x", ("a",)): "x"},
    )
    team = TeamStrategy.of(AgentStrategy.from_procedure(1, lambda h: "b"))
    with pytest.raises(UndefinedSuccessor):
        extend(g, team, single_node("x"), (), ("b",))


def test_extend_head_step(rc5):
    # scanned-cell nodes step by the machine's move action
    team = simulating_strategy(rc5)
    t = simulation_tree(rc5, 3)
    leaf = next(v for v in t.nodes_at_depth(3) if t.label(v) == "s_q0,B")
    act = (rc5.move_actions[("q0", "q1", "R")], IDLE, IDLE)
    t2 = extend(rc5.cgs, team, t, leaf, act)
    assert t2.label(leaf + (act,)) == "s_a"


def test_saturate_depth_zero(rc5):
    t = saturate(rc5.cgs, S_INIT, simulating_strategy(rc5), 0)
    assert len(t) == 1 and t.root_label == S_INIT


def test_saturate_matches_fig5_shape(rc5):
    t = simulation_tree(rc5, 7)
    for n in range(8):
        assert len(t.nodes_at_depth(n)) == n + 1
    by_label = sorted(t.label(v) for v in t.nodes_at_depth(7))
    assert by_label == sorted(
        ["s_lb'", "s_q2,a", "s_tr'", "s_b", "s_tr'", "s_B", "s_tr'", "s_gen"]
    )


def test_level_ordering_fig5(rc5):
    t = simulation_tree(rc5, 7)
    ordered = [t.label(v) for v in level(t, 3, RIGHTMOST_LABELS)]
    assert ordered == ["s_lb'", "s_q0,B", "s_tr'", "s_gen"]
    ordered7 = [t.label(v) for v in level(t, 7, RIGHTMOST_LABELS)]
    assert ordered7 == [
        "s_lb'", "s_q2,a", "s_tr'", "s_b", "s_tr'", "s_B", "s_tr'", "s_gen"
    ]


def test_level_beyond_depth_is_empty(rc5):
    t = simulation_tree(rc5, 3)
    assert level(t, 9, RIGHTMOST_LABELS) == []


def test_level_ordering_not_total_without_rightmost_labels():
    # two siblings, neither carrying a rightmost label: incomparable
    from atlir.comptree import ComputationTree

    t = ComputationTree("r", {(("a",),): "x", (("b",),): "y"})
    with pytest.raises(OrderingNotTotal):
        level(t, 1)
    assert [t.label(v) for v in level(t, 1, {"y"})] == ["x", "y"]


def test_is_complete_level(rc5):
    t = simulation_tree(rc5, 7)
    assert is_complete_level(t, 3)
    assert is_complete_level(t, 1)
    t0 = _single_path_tree()
    assert not is_complete_level(t0, 1)


def _single_path_tree():
    from atlir.comptree import ComputationTree

    return ComputationTree("r", {(("a",),): "x", (("a",), ("a",)): "x"})


def test_confluence_random_extension_order(rc5):
    g = rc5.cgs
    team = simulating_strategy(rc5)
    want = simulation_tree(rc5, 4)
    rng = random.Random(7)
    for _ in range(3):
        t = single_node(S_INIT)
        pending = [()]
        while pending:
            rng.shuffle(pending)
            v = pending.pop()
            if len(v) >= 4:
                continue
            from atlir.strategies import compatible_tuples

            tuples = sorted(compatible_tuples(g, team, t.history(v)))
            rng.shuffle(tuples)
            for a in tuples:
                if g.delta.get((t.label(v), a)) is None:
                    continue
                t = extend(g, team, t, v, a)
                pending.append(v + (a,))
        assert t == want


def test_trees_embed_in_saturation(rc5):
    g = rc5.cgs
    team = simulating_strategy(rc5)
    big = simulation_tree(rc5, 5)
    t = single_node(S_INIT)
    from atlir.strategies import compatible_tuples

    for v in list(big.nodes()):
        if len(v) < 3:
            for a in sorted(compatible_tuples(g, team, big.history(v)))[:1]:
                child = v + (a,)
                if child in big and child not in t and v in t:
                    t = extend(g, team, t, v, a)
    assert all(v in big and big.label(v) == t.label(v) for v in t.nodes())


def test_dot_export(rc5):
    t = simulation_tree(rc5, 1)
    dot = to_dot(rc5.cgs, t)
    assert dot.startswith("digraph")
    assert "s_init | ok" in dot
    assert "(idle,idle,br1)" in dot


def test_levels_json(rc5):
    t = simulation_tree(rc5, 3)
    doc = levels_to_json(t, RIGHTMOST_LABELS)
    assert doc["level_0"] == [S_INIT]
    assert doc["level_3"] == ["s_lb'", "s_q0,B", "s_tr'", "s_gen"]
