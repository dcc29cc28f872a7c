"""Computation trees grown one (node, joint action) extension at a time.

Nodes are identified structurally by the sequence of edge labels from
the root, so a node id is a tuple of joint actions and the tree is a
mapping from node ids to state labels.  This gives canonical equality:
two trees built by the same extensions in any order are equal values.

Levels can be ordered left-to-right.  The ordering is generated by two
rules: nodes carrying a designated "rightmost" label sort after every
other node of their level, and order is inherited from ancestors.  On
levels where the rules leave nodes incomparable (or force a cycle) the
ordering query raises instead of inventing a tie-break.
"""

from __future__ import annotations

import itertools
from typing import AbstractSet, Iterable, Mapping

from .cgs import Cgs, History, JointAction, successor
from .strategies import TeamStrategy, compatible_tuples

NodeId = tuple[JointAction, ...]


class TreeError(Exception):
    pass


class DuplicateAction(TreeError):
    pass


class IncompatibleAction(TreeError):
    pass


class UndefinedSuccessor(TreeError):
    pass


class OrderingNotTotal(TreeError):
    pass


class ComputationTree:
    """An immutable rooted tree of states with joint-action edge labels."""

    def __init__(self, root_label: str, labels: Mapping[NodeId, str] | None = None):
        lab = {(): root_label}
        if labels:
            lab.update(labels)
            lab[()] = root_label
        self._labels: dict[NodeId, str] = lab
        self._children: dict[NodeId, list[NodeId]] = {v: [] for v in lab}
        for v in lab:
            if v:
                parent = v[:-1]
                if parent not in lab:
                    raise TreeError(f"node {v!r} has no parent in the tree")
                self._children[parent].append(v)
        for v in self._children:
            self._children[v].sort()
        self._by_depth: dict[int, list[NodeId]] = {}
        for v in sorted(lab):
            self._by_depth.setdefault(len(v), []).append(v)
        self._order_cache: dict[tuple, dict[int, set]] = {}

    @property
    def root_label(self) -> str:
        return self._labels[()]

    @property
    def max_depth(self) -> int:
        return max(self._by_depth)

    def nodes(self) -> Iterable[NodeId]:
        return self._labels.keys()

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, v: NodeId) -> bool:
        return tuple(v) in self._labels

    def label(self, v: NodeId) -> str:
        try:
            return self._labels[tuple(v)]
        except KeyError:
            raise TreeError(f"node {v!r} not in the tree") from None

    def labels(self) -> Mapping[NodeId, str]:
        return dict(self._labels)

    def children(self, v: NodeId) -> list[NodeId]:
        return list(self._children.get(tuple(v), ()))

    def nodes_at_depth(self, n: int) -> list[NodeId]:
        return list(self._by_depth.get(n, ()))

    def history(self, v: NodeId) -> History:
        """State labels along the path from the root to ``v``, inclusive."""
        v = tuple(v)
        return tuple(self._labels[v[:k]] for k in range(len(v) + 1))

    def __eq__(self, other):
        if not isinstance(other, ComputationTree):
            return NotImplemented
        return self._labels == other._labels

    def __repr__(self):
        return f"ComputationTree({self.root_label!r}, {len(self._labels)} nodes)"


def single_node(s: str) -> ComputationTree:
    return ComputationTree(s)


def extend(
    g: Cgs, team: TeamStrategy, t: ComputationTree, v: NodeId, a: JointAction
) -> ComputationTree:
    """One extension step: add the ``a``-successor of node ``v``.

    The action must be compatible with the team strategy on the path to
    ``v``, must lead somewhere, and must not duplicate an existing edge
    label at ``v``.
    """
    v = tuple(v)
    a = tuple(a)
    if v not in t:
        raise TreeError(f"node {v!r} not in the tree")
    child = v + (a,)
    if child in t:
        raise DuplicateAction(f"node {v!r} already has an edge labeled {a!r}")
    h = t.history(v)
    if a not in compatible_tuples(g, team, h):
        raise IncompatibleAction(f"{a!r} is not compatible with the team strategy at {v!r}")
    s2 = successor(g, t.label(v), a)
    if s2 is None:
        raise UndefinedSuccessor(f"no transition from {t.label(v)!r} under {a!r}")
    labels = t.labels()
    labels[child] = s2
    return ComputationTree(t.root_label, labels)


def saturate(g: Cgs, s: str, team: TeamStrategy, depth: int) -> ComputationTree:
    """The maximal tree of extension steps with paths of at most depth+1 nodes.

    Extensions at distinct (node, action) pairs commute, so the result
    does not depend on the order in which they are applied.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    g.check_state(s)
    labels: dict[NodeId, str] = {(): s}
    histories: dict[NodeId, History] = {(): (s,)}
    frontier: list[NodeId] = [()]
    for _ in range(depth):
        nxt: list[NodeId] = []
        for v in frontier:
            h = histories[v]
            for a in sorted(compatible_tuples(g, team, h)):
                s2 = g.delta.get((h[-1], a))
                if s2 is None:
                    continue
                child = v + (a,)
                labels[child] = s2
                histories[child] = h + (s2,)
                nxt.append(child)
        frontier = nxt
    return ComputationTree(s, labels)


def is_complete_level(t: ComputationTree, n: int) -> bool:
    """Whether level ``n`` holds the maximum of n+1 nodes."""
    if n < 0:
        raise ValueError("level index must be non-negative")
    return len(t.nodes_at_depth(n)) == n + 1


def _transitive_closure(pairs: set, items: list) -> set:
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closed):
            for c in items:
                if (b, c) in closed and (a, c) not in closed:
                    closed.add((a, c))
                    changed = True
    return closed


def _orderings(
    t: ComputationTree, last_labels: frozenset[str], upto: int
) -> dict[int, set]:
    key = (last_labels, upto)
    cached = t._order_cache.get(key)
    if cached is not None:
        return cached
    rels: dict[int, set] = {0: set()}
    for n in range(1, upto + 1):
        nodes = t.nodes_at_depth(n)
        rel: set = set()
        prev = rels[n - 1]
        for v, w in itertools.permutations(nodes, 2):
            if t.label(w) in last_labels:
                rel.add((v, w))
            if v[:-1] != w[:-1] and (v[:-1], w[:-1]) in prev:
                rel.add((v, w))
        rels[n] = _transitive_closure(rel, nodes)
    t._order_cache[key] = rels
    return rels


def level(
    t: ComputationTree, n: int, last_labels: AbstractSet[str] = frozenset()
) -> list[NodeId]:
    """Nodes at depth ``n`` sorted left to right.

    Nodes whose label is in ``last_labels`` sort after all others of the
    level; otherwise order is inherited from ancestors.  Raises
    :class:`OrderingNotTotal` when the rules leave two nodes unordered or
    order them both ways.
    """
    if n < 0:
        raise ValueError("level index must be non-negative")
    nodes = t.nodes_at_depth(n)
    if len(nodes) <= 1:
        return nodes
    rel = _orderings(t, frozenset(last_labels), n)[n]
    for v, w in itertools.combinations(nodes, 2):
        fwd, bwd = (v, w) in rel, (w, v) in rel
        if fwd and bwd:
            raise OrderingNotTotal(
                f"level {n}: nodes labeled {t.label(v)!r} and {t.label(w)!r} "
                f"are ordered both ways"
            )
        if not fwd and not bwd:
            raise OrderingNotTotal(
                f"level {n}: nodes labeled {t.label(v)!r} and {t.label(w)!r} "
                f"are incomparable"
            )
    return sorted(nodes, key=lambda v: sum(1 for w in nodes if (w, v) in rel))


# -- exports -----------------------------------------------------------------


def to_dot(g: Cgs, t: ComputationTree) -> str:
    """GraphViz rendering: nodes as ``state | props``, edges as tuples."""
    ids = {v: f"n{k}" for k, v in enumerate(sorted(t.nodes(), key=lambda v: (len(v), v)))}
    lines = ["digraph computation_tree {", "  rankdir=TB;"]
    for v, name in ids.items():
        props = ",".join(sorted(g.label.get(t.label(v), ()))) or "-"
        lines.append(f'  {name} [label="{t.label(v)} | {props}"];')
    for v, name in ids.items():
        for c in t.children(v):
            tup = "(" + ",".join(c[-1]) + ")"
            lines.append(f'  {name} -> {ids[c]} [label="{tup}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def levels_to_json(
    t: ComputationTree, last_labels: AbstractSet[str] = frozenset()
) -> dict[str, list[str]]:
    """Level-annotated export: state ids per level, left to right."""
    return {
        f"level_{n}": [t.label(v) for v in level(t, n, last_labels)]
        for n in range(t.max_depth + 1)
    }
