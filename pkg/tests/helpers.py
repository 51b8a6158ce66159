"""Shared generators and independent reference computations.

The ref_* functions evaluate distances by unrolling sequences rather
than by closed form, so tests can check the library's formulas against
a second route.
"""

from fractions import Fraction
from math import lcm

from ltsdist import INF, LabelDistance, Lasso, Lts

HALF = Fraction(1, 2)
D_VALUES = (Fraction(0), HALF, Fraction(1), Fraction(2))


def random_lts(rng, max_states=3, labels=("a", "b"), max_out=2, min_states=1):
    n = rng.randint(min_states, max_states)
    states = ["s%d" % i for i in range(n)]
    transitions = set()
    for s in states:
        for _ in range(rng.randint(1, max_out)):
            transitions.add((s, rng.choice(labels), rng.choice(states)))
    return Lts(states, states[0], transitions)


def random_numeric_lts(rng, max_states=3, values=(0, 1, 2), max_out=2):
    return random_lts(rng, max_states, tuple(Fraction(v) for v in values), max_out)


def random_label_distance(rng, alphabet, values=D_VALUES):
    """Arbitrary directional table with the diagonal pinned to zero."""
    table = {}
    for a in alphabet:
        for b in alphabet:
            if a != b and rng.random() < 0.7:
                table[(a, b)] = rng.choice(values)
    return LabelDistance(table)


def hemimetric_label_distance(rng, alphabet, points=(0, HALF, 1, 2, 3)):
    """A genuine (pseudo)metric: labels embedded on the rational line."""
    spot = {a: Fraction(rng.choice(points)) for a in alphabet}
    table = {(a, b): abs(spot[a] - spot[b]) for a in alphabet for b in alphabet}
    return LabelDistance(table)


def random_lasso(rng, alphabet, max_prefix=4, max_cycle=4):
    prefix = [rng.choice(alphabet) for _ in range(rng.randint(0, max_prefix))]
    cycle = [rng.choice(alphabet) for _ in range(rng.randint(1, max_cycle))]
    return Lasso(tuple(prefix), tuple(cycle))


def aligned_window(s, t):
    """Window length after which the aligned pair sequence repeats."""
    return len(s.prefix) + len(t.prefix), lcm(len(s.cycle), len(t.cycle))


def ref_pointwise(s, t, d):
    p, c = aligned_window(s, t)
    return max(d(s.at(i), t.at(i)) for i in range(p + c))


def ref_discrete(s, t):
    p, c = aligned_window(s, t)
    return Fraction(0) if all(s.at(i) == t.at(i) for i in range(p + c)) else INF


def ref_cantor(s, t):
    p, c = aligned_window(s, t)
    for i in range(p + c):
        if s.at(i) != t.at(i):
            return Fraction(1, 1 + i)
    return Fraction(0)


def ref_limavg_bracket(s, t, d, periods=200):
    """Average over many aligned periods, plus a slack the true limit
    average must lie within."""
    p, c = aligned_window(s, t)
    n = p + periods * c
    values = [d(s.at(i), t.at(i)) for i in range(n)]
    avg = sum(values, Fraction(0)) / n
    slack = 2 * p * (max(values) + 1) / Fraction(n)
    return avg - slack, avg + slack


def ref_discounted_bracket(s, t, d, lam, steps=80):
    partial = Fraction(0)
    factor = Fraction(1)
    top = Fraction(0)
    for i in range(steps):
        x = d(s.at(i), t.at(i))
        top = max(top, x)
        partial += factor * x
        factor *= lam
    return partial, partial + factor * top / (1 - lam) + factor


def ref_maxlead(s, t):
    """Divergence detected as nonzero drift over one full period."""
    p, c = aligned_window(s, t)
    run = Fraction(0)
    sums = []
    for i in range(p + 2 * c):
        run += s.at(i) - t.at(i)
        sums.append(run)
    if sums[p + 2 * c - 1] - sums[p + c - 1] != 0:
        return INF
    return max(abs(x) for x in sums)


def full_sim_game(A, B, kind):
    """Unpruned variant: every pair and every (state, state, label)
    triple materialized, not just the reachable ones."""
    from ltsdist import GameGraph
    from ltsdist import f_weight
    from ltsdist.gamegraph import node_key

    zero = Fraction(0)
    edges = {}
    for s in sorted(A.states):
        for sp in sorted(B.states):
            outs = {(zero, ("move", t, sp, a)) for (a, t) in A.out(s)}
            edges[("pair", s, sp)] = tuple(sorted(outs, key=lambda e: (e[0], node_key(e[1]))))
    for t in sorted(A.states):
        for sp in sorted(B.states):
            for a in sorted(A.labels, key=str):
                outs = {(f_weight(kind, a, ap), ("pair", t, tp)) for (ap, tp) in B.out(sp)}
                edges[("move", t, sp, a)] = tuple(sorted(outs, key=lambda e: (e[0], node_key(e[1]))))
    return GameGraph("sim", kind, ("pair", A.initial, B.initial), edges)


def full_bisim_game(A, B, kind):
    from ltsdist import GameGraph
    from ltsdist import f_weight
    from ltsdist.gamegraph import node_key

    zero = Fraction(0)
    edges = {}
    for s in sorted(A.states):
        for sp in sorted(B.states):
            outs = {(zero, ("move", t, sp, a, 1)) for (a, t) in A.out(s)}
            outs |= {(zero, ("move", s, tp, ap, 2)) for (ap, tp) in B.out(sp)}
            edges[("pair", s, sp)] = tuple(sorted(outs, key=lambda e: (e[0], node_key(e[1]))))
    for t in sorted(A.states):
        for sp in sorted(B.states):
            for a in sorted(A.labels, key=str):
                outs = {(f_weight(kind, a, ap), ("pair", t, tp)) for (ap, tp) in B.out(sp)}
                edges[("move", t, sp, a, 1)] = tuple(sorted(outs, key=lambda e: (e[0], node_key(e[1]))))
    for s in sorted(A.states):
        for tp in sorted(B.states):
            for ap in sorted(B.labels, key=str):
                outs = {(f_weight(kind, a, ap), ("pair", t, tp)) for (a, t) in A.out(s)}
                edges[("move", s, tp, ap, 2)] = tuple(sorted(outs, key=lambda e: (e[0], node_key(e[1]))))
    return GameGraph("bisim", kind, ("pair", A.initial, B.initial), edges)


def random_deterministic_lts(rng, n_states, labels):
    """Exactly one outgoing transition per state: forces unique plays."""
    states = ["s%d" % i for i in range(n_states)]
    transitions = {(s, rng.choice(labels), rng.choice(states)) for s in states}
    return Lts(states, states[0], transitions)


def forced_play(game):
    """Weight lasso of the unique play of a choice-free game."""
    node = game.initial
    pos = {}
    weights = []
    while node not in pos:
        pos[node] = len(weights)
        out = game.edges[node]
        assert len(out) == 1, "game is not choice-free"
        w, node = out[0]
        weights.append(w)
    i = pos[node]
    return Lasso(tuple(weights[:i]), tuple(weights[i:]))
