"""Independent ground truth for validating builders and solvers.

Nothing here shares machinery with the solvers: classical simulation
and bisimulation are plain relation refinements on the two systems, the
positional oracle enumerates memoryless strategies and scores the
single lasso play each pair induces, and the bounded oracle is an
explicit minimax over a fixed number of rounds with per-kind tail
bounds.  All are deliberately restricted to desk-scale instances.
"""

from fractions import Fraction
from itertools import product

from .gamegraph import GameGraph
from .lts import Lts
from .tracedist import DistanceKind, Kind, KindError, Lasso, val_on_steps
from .values import INF, is_inf


class GuardError(ValueError):
    """The instance exceeds an oracle's deliberate size guard."""


def classical_simulation(A: Lts, B: Lts) -> bool:
    """True iff A is simulated by B (greatest simulation relation)."""
    rel = {(s, sp) for s in A.states for sp in B.states}
    changed = True
    while changed:
        changed = False
        for s, sp in sorted(rel):
            ok = all(
                any(a == ap and (t, tp) in rel for (ap, tp) in B.out(sp))
                for (a, t) in A.out(s)
            )
            if not ok:
                rel.discard((s, sp))
                changed = True
    return (A.initial, B.initial) in rel


def classical_bisimulation(A: Lts, B: Lts) -> bool:
    """True iff the initial states are related by a bisimulation."""
    rel = {(s, sp) for s in A.states for sp in B.states}
    changed = True
    while changed:
        changed = False
        for s, sp in sorted(rel):
            forth = all(
                any(a == ap and (t, tp) in rel for (ap, tp) in B.out(sp))
                for (a, t) in A.out(s)
            )
            back = all(
                any(a == ap and (t, tp) in rel for (a, t) in A.out(s))
                for (ap, tp) in B.out(sp)
            )
            if not (forth and back):
                rel.discard((s, sp))
                changed = True
    return (A.initial, B.initial) in rel


def _plays_for(G: GameGraph, strat_max: dict):
    """All weight lassos the fixed maximizer strategy can yield, one per
    class of minimizer positional strategies (choices are only
    enumerated at minimizer nodes the play actually reaches)."""
    plays = []

    def go(node, pos, weights, assign):
        if node in pos:
            i = pos[node]
            plays.append(Lasso(weights[:i], weights[i:]))
            return
        if node[0] == "pair":
            e = strat_max[node]
        else:
            e = assign.get(node)
            if e is None:
                for cand in G.edges[node]:
                    assign[node] = cand
                    go(node, pos, weights, assign)
                del assign[node]
                return
        go(e[1], {**pos, node: len(weights)}, weights + [e[0]], assign)

    go(G.initial, {}, [], {})
    return plays


def enumerate_positional_value(G: GameGraph, kind: DistanceKind = None,
                               node_guard=12, pair_guard=300000):
    """Game value under positional strategies on both sides.

    max over maximizer strategies of min over minimizer strategies of
    the play valuation.  Unsound for maxlead, where optimal play needs
    the accumulated lead as memory; guarded to small games."""
    kind = G.kind if kind is None else kind
    if kind.selector is not G.kind.selector:
        raise KindError("game was built for %s, not %s" % (G.kind.selector.value, kind.selector.value))
    if kind.selector is Kind.MAXLEAD:
        raise KindError("positional enumeration is unsound for maxlead")
    if len(G.edges) > node_guard:
        raise GuardError("game has %d nodes, guard is %d" % (len(G.edges), node_guard))
    combos = 1
    for out in G.edges.values():
        combos *= len(out)
    if combos > pair_guard:
        raise GuardError("%d strategy pairs, guard is %d" % (combos, pair_guard))
    maxs = G.max_nodes
    best = None
    for combo in product(*(G.edges[u] for u in maxs)):
        strat = dict(zip(maxs, combo))
        worst = None
        for lasso in _plays_for(G, strat):
            v = val_on_steps(kind, lasso)
            worst = v if worst is None else min(worst, v)
        best = worst if best is None else max(best, worst)
    return best


def bounded_minimax(G: GameGraph, kind: DistanceKind = None, horizon: int = 3):
    """Exact minimax over `horizon` rounds, returning (lower, upper)
    bounds on the game value.

    The tail beyond the horizon is bounded per kind: discounted by the
    discounted worst-case tail, pointwise by the largest reply weight,
    cantor by the value of the earliest still-possible mismatch,
    discrete by infinity, limavg trivially, maxlead lower bound only."""
    kind = G.kind if kind is None else kind
    if kind.selector is not G.kind.selector:
        raise KindError("game was built for %s, not %s" % (G.kind.selector.value, kind.selector.value))
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    sel = kind.selector
    wtop = max(G.min_edge_weights())
    if sel in (Kind.DISCOUNTED, Kind.LIMAVG) and is_inf(wtop):
        raise KindError("%s needs finite weights" % sel.value)
    zero = Fraction(0)

    if sel is Kind.DISCRETE:
        state0 = False
        update = lambda st, w, k: st or w != 0
        leaf = lambda st: (INF, INF) if st else (zero, INF)
    elif sel is Kind.POINTWISE:
        state0 = zero
        update = lambda st, w, k: max(st, w)
        leaf = lambda st: (st, max(st, wtop))
    elif sel is Kind.DISCOUNTED:
        lam = kind.lam
        state0 = (zero, Fraction(1))
        update = lambda st, w, k: (st[0] + st[1] * w, st[1] * lam)
        leaf = lambda st: (st[0], st[0] + st[1] * wtop / (1 - lam))
    elif sel is Kind.LIMAVG:
        state0 = None
        update = lambda st, w, k: None
        leaf = lambda st: (zero, wtop)
    elif sel is Kind.CANTOR:
        state0 = None
        update = lambda st, w, k: st if st is not None else (k if w != 0 else None)
        leaf = lambda st: ((zero, Fraction(1, 1 + horizon)) if st is None
                           else (Fraction(1, 1 + st), Fraction(1, 1 + st)))
    else:  # maxlead: track lead and best |lead|; no useful upper bound
        state0 = (zero, zero)
        update = lambda st, w, k: (st[0] + w, max(st[1], abs(st[0] + w)))
        leaf = lambda st: (st[1], INF)

    def at_max(node, k, st):
        if k == horizon:
            return leaf(st)
        lo = hi = None
        for _, m in G.edges[node]:
            l2, h2 = at_min(m, k, st)
            lo = l2 if lo is None else max(lo, l2)
            hi = h2 if hi is None else max(hi, h2)
        return lo, hi

    def at_min(node, k, st):
        lo = hi = None
        for w, t in G.edges[node]:
            l2, h2 = at_max(t, k + 1, update(st, w, k))
            lo = l2 if lo is None else min(lo, l2)
            hi = h2 if hi is None else min(hi, h2)
        return lo, hi

    return at_max(G.initial, 0, state0)
