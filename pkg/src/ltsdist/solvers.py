"""Per-kind engines computing the value of a built game.

All arithmetic is exact rational; the only approximate result is the
discounted kind, which reports the tolerance it was solved to.  The
reachability-flavored kinds (discrete, pointwise, cantor) run on
forced-reachability fixed points (the controllable-predecessor operator
extended so that a heavy reply edge wins outright); limavg runs
total-payoff value iteration on integer-scaled weights until the value
interval pins a unique rational of small denominator; maxlead searches
for the least bound under which the minimizer wins a lead-bounded
safety game.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd, lcm

from .gamegraph import GameGraph, node_key
from .tracedist import DistanceKind, Kind, KindError
from .values import INF, Value, is_inf


@dataclass
class SolveResult:
    """Solver outcome: value, tolerance (None when exact), optional
    positional strategy sketch for the maximizer, and a solver-specific
    iteration count (attractor additions, thresholds tried, iteration
    sweeps, or bound-decision games)."""

    value: Value
    epsilon: Fraction | None = None
    witness: dict | None = None
    iterations: int = 0

    @property
    def exact(self) -> bool:
        return self.epsilon is None


def _require(G: GameGraph, selector: Kind):
    if G.kind.selector is not selector:
        raise KindError("game was built for %s, not %s" % (G.kind.selector.value, selector.value))


def _cpre_moves(G: GameGraph, target) -> dict:
    """cpre with the forcing move: maximizer nodes that have a move into
    a minimizer node all of whose replies land in `target`."""
    found = {}
    for u, out in G.edges.items():
        if u[0] != "pair":
            continue
        for e in out:
            if all(t in target for (_, t) in G.edges[e[1]]):
                found[u] = e
                break
    return found


def cpre(G: GameGraph, nodes) -> set:
    """One controllable-predecessor step over a set of maximizer nodes."""
    return set(_cpre_moves(G, set(nodes)))


def cpre_star(G: GameGraph, nodes) -> set:
    """Least fixed point of X -> nodes | cpre(X), via a worklist.

    Terminates after at most one addition per maximizer node."""
    inside = set(nodes)
    succ_count = {}
    max_preds = {}
    min_preds = {}
    for u, out in G.edges.items():
        if u[0] == "pair":
            for _, v in out:
                max_preds.setdefault(v, set()).add(u)
        else:
            succ_count[u] = len({t for (_, t) in out})
            for _, t in out:
                min_preds.setdefault(t, set()).add(u)
    queue = deque(sorted(inside, key=node_key))
    while queue:
        u = queue.popleft()
        for v in sorted(min_preds.get(u, ()), key=node_key):
            succ_count[v] -= 1
            if succ_count[v] == 0:
                for w in sorted(max_preds.get(v, ()), key=node_key):
                    if w not in inside:
                        inside.add(w)
                        queue.append(w)
    return inside


def _forced_attractor(G: GameGraph, edge_wins):
    """Maximizer nodes from which she can force a winning minimizer edge.

    Least fixed point of X -> { u | exists a move of u such that every
    reply either wins outright (edge_wins on its weight) or lands in X }.
    A reply that takes a winning edge loses for the minimizer even when
    its target is safe, so winning edges never block the forcing; the
    plain target-set cpre would miss exactly those replies."""
    inside = set()
    strategy = {}
    max_preds = {}
    min_preds = {}
    count = {}
    for u, out in G.edges.items():
        if u[0] == "pair":
            for _, v in out:
                max_preds.setdefault(v, set()).add(u)
        else:
            blockers = {t for (w, t) in out if not edge_wins(w)}
            count[u] = len(blockers)
            for t in blockers:
                min_preds.setdefault(t, set()).add(u)
    queue = deque()

    def force(v):
        for u in sorted(max_preds.get(v, ()), key=node_key):
            if u not in inside:
                inside.add(u)
                strategy[u] = (Fraction(0), v)
                queue.append(u)

    for v in sorted(count, key=node_key):
        if count[v] == 0:
            force(v)
    while queue:
        u = queue.popleft()
        for v in sorted(min_preds.get(u, ()), key=node_key):
            count[v] -= 1
            if count[v] == 0:
                force(v)
    return inside, strategy


def solve_discrete(G: GameGraph) -> SolveResult:
    """0 when the minimizer can match forever, else infinity.

    The maximizer wins by forcing the play through some infinite-weight
    edge in finitely many rounds: either every reply of a reachable
    minimizer node weighs infinity, or all its finite replies lead back
    into already-winning territory."""
    _require(G, Kind.DISCRETE)
    star, strategy = _forced_attractor(G, is_inf)
    value = INF if G.initial in star else Fraction(0)
    return SolveResult(value, witness=strategy or None, iterations=len(star))


def solve_pointwise(G: GameGraph) -> SolveResult:
    """Greatest minimizer-edge weight the maximizer can eventually force.

    Thresholds are scanned downwards; the least one is always forceable
    because every reply carries at least the least weight."""
    _require(G, Kind.POINTWISE)
    tried = 0
    for w in reversed(G.min_edge_weights()):
        tried += 1
        star, strategy = _forced_attractor(G, lambda x: x >= w)
        if G.initial in star:
            return SolveResult(w, witness=strategy or None, iterations=tried)
    raise AssertionError("threshold scan exhausted on a non-blocking game")


def solve_discounted(G: GameGraph, lam=None, epsilon=Fraction(1, 10**6)) -> SolveResult:
    """Value iteration with per-round discount; stops once the remaining
    tail is below epsilon."""
    _require(G, Kind.DISCOUNTED)
    lam = Fraction(G.kind.lam if lam is None else lam)
    epsilon = Fraction(epsilon)
    if not 0 <= lam < 1:
        raise ValueError("discount factor must satisfy 0 <= lambda < 1")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    weights = G.min_edge_weights()
    if any(is_inf(w) for w in weights):
        raise KindError("discounted solving needs finite weights")
    wmax = max(weights)
    if wmax == 0:
        return SolveResult(Fraction(0))
    maxs = G.max_nodes
    v = {u: Fraction(0) for u in maxs}
    err = wmax / (1 - lam)
    rounds = 0
    choice = {}
    while err >= epsilon:
        rounds += 1
        nv = {}
        for u in maxs:
            best = pick = None
            for e in G.edges[u]:
                reply = min(w + lam * v[t] for (w, t) in G.edges[e[1]])
                if best is None or reply > best:
                    best, pick = reply, e
            nv[u] = best
            choice[u] = pick
        v = nv
        err *= lam
    eps = None if err == 0 else epsilon
    return SolveResult(v[G.initial], epsilon=eps, witness=choice or None, iterations=rounds)


def _unique_small_rational(total: int, steps: int, n: int, wmax: int):
    """The single rational with denominator <= n inside the value
    interval [total/steps - 2*n*wmax/steps, ... + 2*n*wmax/steps],
    or None if the interval still holds several."""
    lo = Fraction(total - 2 * n * wmax, steps)
    hi = Fraction(total + 2 * n * wmax, steps)
    found = set()
    for q in range(1, n + 1):
        p = ceil(lo * q)
        while Fraction(p, q) <= hi:
            found.add(Fraction(p, q))
            if len(found) > 1:
                return None
            p += 1
    return found.pop() if found else None


def solve_limavg(G: GameGraph) -> SolveResult:
    """Exact mean payoff over game edges (maximizer edges weigh 0).

    Runs total-payoff iteration on integer-scaled weights; the average
    after k steps is within 2*N*Wmax/k of the value, and the value is a
    rational with denominator at most N, so iteration can stop as soon
    as the interval isolates one such rational (guaranteed by
    k = 4*N^3*Wmax + 1)."""
    _require(G, Kind.LIMAVG)
    if any(is_inf(w) for w in G.min_edge_weights()):
        raise KindError("limavg solving needs finite weights")
    order = list(G.edges)
    index = {node: i for i, node in enumerate(order)}
    denom = 1
    for out in G.edges.values():
        for w, _ in out:
            denom = lcm(denom, w.denominator)
    adj = [[(int(w * denom), index[t]) for (w, t) in G.edges[node]] for node in order]
    nonzero = [abs(w) for row in adj for (w, _) in row if w]
    if not nonzero:
        return SolveResult(Fraction(0))
    unit = gcd(*nonzero) if len(nonzero) > 1 else nonzero[0]
    adj = [[(w // unit, t) for (w, t) in row] for row in adj]
    wmax = max(abs(w) for row in adj for (w, _) in row)
    n = len(order)
    is_max = [node[0] == "pair" for node in order]
    start = index[G.initial]
    cap = 4 * n**3 * wmax + 1
    check_at = 1
    while check_at < 4 * n * wmax:
        check_at *= 2
    v = [0] * n
    k = 0
    while True:
        k += 1
        v = [
            (max if is_max[i] else min)(w + v[t] for (w, t) in adj[i])
            for i in range(n)
        ]
        if k >= check_at or k >= cap:
            val = _unique_small_rational(v[start], k, n, wmax)
            if val is not None:
                return SolveResult(val * Fraction(unit, denom), iterations=k)
            if k >= cap:
                raise AssertionError("mean value failed to isolate below the step cap")
            check_at *= 2


def _forced_cpre(G: GameGraph, target, edge_wins) -> dict:
    """One step of the forced attractor, with the forcing moves."""
    found = {}
    for u, out in G.edges.items():
        if u[0] != "pair":
            continue
        for e in out:
            if all(edge_wins(w) or t in target for (w, t) in G.edges[e[1]]):
                found[u] = e
                break
    return found


def solve_cantor(G: GameGraph) -> SolveResult:
    """1/p where p is the earliest round by which the maximizer can
    force a mismatch reply, or 0 when she never can.

    Layer i holds the nodes from which a mismatch is forceable within i
    rounds; a reply that itself takes a mismatch edge counts no matter
    where it lands."""
    _require(G, Kind.CANTOR)
    wins = lambda w: w == 1
    layer = set()
    strategy = {}
    p = 0
    while True:
        p += 1
        grown = _forced_cpre(G, layer, wins)
        new = [u for u in grown if u not in layer]
        for u in new:
            layer.add(u)
            strategy[u] = grown[u]
        if G.initial in layer:
            return SolveResult(Fraction(1, p), witness=strategy or None, iterations=p)
        if not new:
            return SolveResult(Fraction(0), iterations=p)


def _lead_bound_decision(G: GameGraph, adj_units, bound_units: int) -> bool:
    """Can the minimizer keep the accumulated lead within the bound
    forever, starting from the initial node with lead 0?

    Explores the reachable (node, lead) space and removes states the
    maximizer can doom: a maximizer state is lost when any successor is
    lost, a minimizer state when all in-bound successors are."""
    start = (G.initial, 0)
    succs = {}
    stack = [start]
    seen = {start}
    while stack:
        state = stack.pop()
        node, lead = state
        if node[0] == "pair":
            nxt = {(t, lead) for (_, t) in G.edges[node]}
        else:
            nxt = set()
            for w, t in adj_units[node]:
                nl = lead + w
                if -bound_units <= nl <= bound_units:
                    nxt.add((t, nl))
        succs[state] = nxt
        for t in nxt:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    preds = {}
    count = {}
    lost = set()
    queue = deque()
    for state, nxt in succs.items():
        for t in nxt:
            preds.setdefault(t, []).append(state)
        if state[0][0] != "pair":
            count[state] = len(nxt)
            if not nxt:
                lost.add(state)
                queue.append(state)
    while queue:
        state = queue.popleft()
        for p in preds.get(state, ()):
            if p in lost:
                continue
            if p[0][0] == "pair":
                lost.add(p)
                queue.append(p)
            else:
                count[p] -= 1
                if count[p] == 0:
                    lost.add(p)
                    queue.append(p)
    return start not in lost


def solve_maxlead(G: GameGraph) -> SolveResult:
    """Least lead bound the minimizer can maintain forever, or infinity.

    Candidate bounds live on the grid spanned by the gcd of the scaled
    weights, capped at node-count * max-|weight| (a play the minimizer
    can bound at all can be bounded within that); monotonicity in the
    bound admits binary search."""
    _require(G, Kind.MAXLEAD)
    denom = 1
    for out in G.edges.values():
        for w, _ in out:
            if is_inf(w):
                raise KindError("maxlead solving needs finite weights")
            denom = lcm(denom, w.denominator)
    scaled = {
        node: [(int(w * denom), t) for (w, t) in out]
        for node, out in G.edges.items()
    }
    nonzero = [abs(w) for row in scaled.values() for (w, _) in row if w]
    if not nonzero:
        return SolveResult(Fraction(0))
    unit = gcd(*nonzero) if len(nonzero) > 1 else nonzero[0]
    adj_units = {
        node: [(w // unit, t) for (w, t) in row] for node, row in scaled.items()
    }
    wmax = max(abs(w) for row in adj_units.values() for (w, _) in row)
    cap = len(G.edges) * wmax
    decisions = 1
    if not _lead_bound_decision(G, adj_units, cap):
        return SolveResult(INF, iterations=decisions)
    lo, hi = 0, cap
    while lo < hi:
        mid = (lo + hi) // 2
        decisions += 1
        if _lead_bound_decision(G, adj_units, mid):
            hi = mid
        else:
            lo = mid + 1
    return SolveResult(Fraction(lo * unit, denom), iterations=decisions)


def lead_bound_wins(G: GameGraph, bound) -> bool:
    """Decision form of the maxlead game: can the minimizer keep every
    accumulated lead within [-bound, bound] forever?"""
    _require(G, Kind.MAXLEAD)
    bound = Fraction(bound)
    denom = 1
    for out in G.edges.values():
        for w, _ in out:
            denom = lcm(denom, w.denominator)
    denom = lcm(denom, bound.denominator)
    adj_units = {
        node: [(int(w * denom), t) for (w, t) in out]
        for node, out in G.edges.items()
    }
    return _lead_bound_decision(G, adj_units, int(bound * denom))


def solve(G: GameGraph, kind: DistanceKind = None, epsilon=Fraction(1, 10**6)) -> SolveResult:
    """Dispatch to the engine for the game's kind."""
    kind = G.kind if kind is None else kind
    if kind.selector is not G.kind.selector:
        raise KindError("game was built for %s, not %s" % (G.kind.selector.value, kind.selector.value))
    sel = kind.selector
    if sel is Kind.DISCRETE:
        return solve_discrete(G)
    if sel is Kind.POINTWISE:
        return solve_pointwise(G)
    if sel is Kind.DISCOUNTED:
        return solve_discounted(G, kind.lam, epsilon)
    if sel is Kind.LIMAVG:
        return solve_limavg(G)
    if sel is Kind.CANTOR:
        return solve_cantor(G)
    return solve_maxlead(G)
