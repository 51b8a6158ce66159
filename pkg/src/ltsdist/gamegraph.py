"""Turn-based path-building games derived from two transition systems.

Nodes are tagged tuples carrying their provenance:

  ("pair", s, s')           maximizer node, one state per system;
  ("move", t, s', a)        minimizer node of a simulation game: the
                            maximizer moved s -a-> t, the minimizer now
                            answers from s';
  ("move", t, s', a, 1)     bisimulation variant, maximizer moved in the
                            first system;
  ("move", s, t', a', 2)    bisimulation variant, maximizer moved in the
                            second system, the minimizer answers from s.

Maximizer edges always weigh 0; minimizer edges carry the per-step
weight f_weight(kind, a, a') where a is always the first system's label.
Only nodes reachable from the initial pair are materialized.
"""

import json
from collections import deque
from fractions import Fraction

from .lts import Lts, fmt_label, label_key, validate
from .tracedist import DistanceKind, Kind, KindError, f_weight
from .values import fmt_value

MAX_OWNER = "max"
MIN_OWNER = "min"


def node_key(node):
    """Deterministic sort key over game nodes."""
    if node[0] == "pair":
        return (0, node[1], node[2], (0, Fraction(0), ""), 0)
    return (1, node[1], node[2], label_key(node[3]), node[4] if len(node) == 5 else 0)


def fmt_node(node) -> str:
    parts = [fmt_label(x) if isinstance(x, Fraction) else str(x) for x in node[1:]]
    return "(" + ",".join(parts) + ")"


class GameGraph:
    """Bipartite weighted turn-based game between maximizer and minimizer.

    edges maps every node to its ordered (weight, target) pairs; the set
    of nodes is exactly edges.keys().  Instances are immutable after
    construction and safe to share across solver runs.
    """

    def __init__(self, mode, kind: DistanceKind, initial, edges):
        self.mode = mode
        self.kind = kind
        self.initial = initial
        self.edges = edges

    def owner(self, node) -> str:
        return MAX_OWNER if node[0] == "pair" else MIN_OWNER

    @property
    def nodes(self):
        return self.edges.keys()

    @property
    def max_nodes(self):
        return [n for n in self.edges if n[0] == "pair"]

    @property
    def min_nodes(self):
        return [n for n in self.edges if n[0] != "pair"]

    @property
    def num_edges(self):
        return sum(len(out) for out in self.edges.values())

    def min_edge_weights(self):
        """Sorted distinct weights on minimizer edges."""
        ws = {w for n, out in self.edges.items() if n[0] != "pair" for (w, _) in out}
        return sorted(ws)

    def structure_diagnostics(self):
        """Alternation or non-blocking violations, as human-readable strings."""
        problems = []
        for node, out in self.edges.items():
            if not out:
                problems.append("blocking node %s" % fmt_node(node))
            me = self.owner(node)
            for w, tgt in out:
                if tgt not in self.edges:
                    problems.append("dangling edge %s -> %s" % (fmt_node(node), fmt_node(tgt)))
                elif self.owner(tgt) == me:
                    problems.append("non-alternating edge %s -> %s" % (fmt_node(node), fmt_node(tgt)))
                if me == MAX_OWNER and w != 0:
                    problems.append("weighted maximizer edge at %s" % fmt_node(node))
        if self.initial not in self.edges or self.owner(self.initial) != MAX_OWNER:
            problems.append("initial node %s is not a maximizer node" % fmt_node(self.initial))
        return problems

    def __repr__(self):
        return "GameGraph(%s/%s, %d nodes, %d edges)" % (
            self.mode, self.kind.selector.value, len(self.edges), self.num_edges)


def _check_inputs(A: Lts, B: Lts, kind: DistanceKind):
    for which, lts in (("first", A), ("second", B)):
        diags = validate(lts)
        if diags:
            raise ValueError("%s LTS is invalid: %s" % (which, diags[0].message))
    if A.label_kind != B.label_kind:
        raise KindError("label variants differ: %s labels vs %s labels" % (A.label_kind, B.label_kind))
    if kind.selector is Kind.MAXLEAD and A.label_kind != "numeric":
        raise KindError("maxlead distance needs numeric labels")


def _build(A: Lts, B: Lts, kind: DistanceKind, mode: str) -> GameGraph:
    _check_inputs(A, B, kind)
    zero = Fraction(0)
    initial = ("pair", A.initial, B.initial)
    edges = {}
    seen = {initial}
    queue = deque([initial])
    while queue:
        node = queue.popleft()
        if node[0] == "pair":
            _, s, sp = node
            if mode == "sim":
                outs = [(zero, ("move", t, sp, a)) for a, t in A.out(s)]
            else:
                outs = [(zero, ("move", t, sp, a, 1)) for a, t in A.out(s)]
                outs += [(zero, ("move", s, tp, ap, 2)) for ap, tp in B.out(sp)]
        elif len(node) == 5 and node[4] == 2:
            _, s, tp, ap, _ = node
            outs = [(f_weight(kind, a, ap), ("pair", t, tp)) for a, t in A.out(s)]
        else:
            _, t, sp, a = node[:4]
            outs = [(f_weight(kind, a, ap), ("pair", t, tp)) for ap, tp in B.out(sp)]
        outs = sorted(set(outs), key=lambda e: (e[0], node_key(e[1])))
        edges[node] = tuple(outs)
        for _, tgt in outs:
            if tgt not in seen:
                seen.add(tgt)
                queue.append(tgt)
    game = GameGraph(mode, kind, initial, edges)
    problems = game.structure_diagnostics()
    if problems:
        raise AssertionError("malformed game: " + "; ".join(problems))
    return game


def build_sim_game(A: Lts, B: Lts, kind: DistanceKind) -> GameGraph:
    """Game whose value is the simulation distance from A to B."""
    return _build(A, B, kind, "sim")


def build_bisim_game(A: Lts, B: Lts, kind: DistanceKind) -> GameGraph:
    """Game whose value is the bisimulation distance between A and B.

    The maximizer may challenge on either side; the side tag on the
    minimizer nodes restricts her answers to the opposite system.
    """
    return _build(A, B, kind, "bisim")


def to_dot(G: GameGraph) -> str:
    """Deterministic DOT rendering: maximizer boxes, minimizer ellipses."""
    lines = ["digraph game {", "  rankdir=LR;"]
    order = sorted(G.edges, key=node_key)
    for node in order:
        shape = "box" if G.owner(node) == MAX_OWNER else "ellipse"
        init = ", peripheries=2" if node == G.initial else ""
        lines.append('  "%s" [shape=%s%s];' % (fmt_node(node), shape, init))
    for node in order:
        for w, tgt in G.edges[node]:
            lines.append('  "%s" -> "%s" [label="%s"];' % (fmt_node(node), fmt_node(tgt), fmt_value(w)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(G: GameGraph) -> str:
    """Deterministic JSON dump of nodes and edges, stable field order."""
    order = sorted(G.edges, key=node_key)
    nodes = []
    for node in order:
        payload = [fmt_label(x) if isinstance(x, Fraction) else x for x in node[1:]]
        nodes.append({"id": fmt_node(node), "owner": G.owner(node), "payload": payload})
    edges = []
    for node in order:
        for w, tgt in G.edges[node]:
            edges.append({"from": fmt_node(node), "weight": fmt_value(w), "to": fmt_node(tgt)})
    doc = {
        "mode": G.mode,
        "distance": G.kind.selector.value,
        "initial": fmt_node(G.initial),
        "nodes": nodes,
        "edges": edges,
    }
    return json.dumps(doc, indent=2)
