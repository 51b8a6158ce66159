"""The six trace distances and their evaluation on lasso-shaped words.

An infinite trace is represented as a Lasso: a finite prefix followed by
a cycle repeated forever.  Every distance kind comes in two computable
forms that this module keeps consistent:

  * trace_distance       -- the defining formula, applied directly to a
                            pair of label lassos;
  * val_on_lasso         -- the valuation of a weight sequence, applied
                            to the interleaved per-step weights produced
                            by `interleave`.

For every kind, val_on_lasso(interleave(kind, s, t)) equals
trace_distance(kind, s, t); game solving relies on exactly this
decomposition into a per-step weight (f_weight) and a sequence
valuation.

Discounting convention: the discounted kind scores one weight per round
with factor lambda**round, so `interleave` emits one weight per aligned
label pair for it instead of the alternating (0, w, 0, w, ...) shape
used by the other kinds.  This keeps all arithmetic rational.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .lts import Label, LabelDistance
from .values import INF, Value, is_inf


class Kind(enum.Enum):
    DISCRETE = "discrete"
    POINTWISE = "pointwise"
    DISCOUNTED = "discounted"
    LIMAVG = "limavg"
    CANTOR = "cantor"
    MAXLEAD = "maxlead"


# Kinds whose per-step weight is derived from a label distance table.
D_KINDS = frozenset({Kind.POINTWISE, Kind.DISCOUNTED, Kind.LIMAVG})


class KindError(ValueError):
    """A distance kind is incompatible with the given labels or game."""


@dataclass(frozen=True)
class DistanceKind:
    """A distance selector plus its parameters.

    lam is the discount factor (discounted only, 0 <= lam < 1);
    label_dist is the label distance table (pointwise, discounted and
    limavg only; defaults to the 0-if-equal-else-1 table).
    """

    selector: Kind
    lam: Fraction | None = None
    label_dist: LabelDistance | None = None

    def __post_init__(self):
        if self.selector is Kind.DISCOUNTED:
            if self.lam is None:
                raise ValueError("discounted distance needs a discount factor")
            lam = Fraction(self.lam)
            if not 0 <= lam < 1:
                raise ValueError("discount factor must satisfy 0 <= lambda < 1, got %s" % lam)
            object.__setattr__(self, "lam", lam)
        elif self.lam is not None:
            raise ValueError("discount factor only applies to the discounted distance")
        if self.selector in D_KINDS:
            if self.label_dist is None:
                object.__setattr__(self, "label_dist", LabelDistance())
        elif self.label_dist is not None:
            raise ValueError("label distance only applies to pointwise, discounted, limavg")

    @classmethod
    def discrete(cls):
        return cls(Kind.DISCRETE)

    @classmethod
    def pointwise(cls, label_dist=None):
        return cls(Kind.POINTWISE, label_dist=label_dist)

    @classmethod
    def discounted(cls, lam, label_dist=None):
        return cls(Kind.DISCOUNTED, lam=Fraction(lam), label_dist=label_dist)

    @classmethod
    def limit_average(cls, label_dist=None):
        return cls(Kind.LIMAVG, label_dist=label_dist)

    @classmethod
    def cantor(cls):
        return cls(Kind.CANTOR)

    @classmethod
    def max_lead(cls):
        return cls(Kind.MAXLEAD)


@dataclass(frozen=True)
class Lasso:
    """The eventually periodic sequence prefix . cycle^omega."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    def at(self, n):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def unroll(self, n):
        return tuple(self.at(i) for i in range(n))

    @property
    def entries(self):
        return self.prefix + self.cycle


def zip_lassos(s: Lasso, t: Lasso) -> Lasso:
    """Align two lassos pointwise into one lasso of pairs.

    The combined prefix has length |s.prefix| + |t.prefix| and the cycle
    length lcm(|s.cycle|, |t.cycle|), which is enough for the pairing to
    be periodic from the end of the prefix on.
    """
    n0 = len(s.prefix) + len(t.prefix)
    c = lcm(len(s.cycle), len(t.cycle))
    return Lasso(tuple((s.at(i), t.at(i)) for i in range(n0)),
                 tuple((s.at(n0 + i), t.at(n0 + i)) for i in range(c)))


def subsample(w: Lasso, start: int, step: int) -> Lasso:
    """The lasso of entries at positions start, start+step, start+2*step, ..."""
    p, c = len(w.prefix), len(w.cycle)
    npre = max(0, -((start - p) // step))
    first = start + npre * step
    clen = c // gcd(c, step)
    return Lasso(tuple(w.at(start + k * step) for k in range(npre)),
                 tuple(w.at(first + k * step) for k in range(clen)))


def f_weight(kind: DistanceKind, a: Label, b: Label) -> Value:
    """Per-step game weight for one pair of labels.

    Signed only for maxlead (a - b); infinite only for discrete
    mismatches and infinite pointwise table entries.
    """
    sel = kind.selector
    if sel is Kind.DISCRETE:
        return Fraction(0) if a == b else INF
    if sel is Kind.CANTOR:
        return Fraction(0) if a == b else Fraction(1)
    if sel is Kind.MAXLEAD:
        if not isinstance(a, Fraction) or not isinstance(b, Fraction):
            raise KindError("maxlead distance needs numeric labels, got %r, %r" % (a, b))
        return a - b
    d = kind.label_dist(a, b)
    if sel is Kind.POINTWISE:
        return d
    if is_inf(d):
        raise KindError("infinite label distance d(%s, %s) is not usable with %s" % (a, b, sel.value))
    return d if sel is Kind.DISCOUNTED else 2 * d


def interleave(kind: DistanceKind, s: Lasso, t: Lasso) -> Lasso:
    """The weight lasso a game play over (s, t) produces.

    One entry pair (0, f_weight) per aligned label pair; for discounted
    just the round weight, matching its per-round valuation.
    """
    pairs = zip_lassos(s, t)
    pre = [f_weight(kind, a, b) for (a, b) in pairs.prefix]
    cyc = [f_weight(kind, a, b) for (a, b) in pairs.cycle]
    if kind.selector is Kind.DISCOUNTED:
        return Lasso(pre, cyc)
    zero = Fraction(0)
    return Lasso(tuple(x for f in pre for x in (zero, f)),
                 tuple(x for f in cyc for x in (zero, f)))


def _discounted_sum(lam: Fraction, prefix, cycle) -> Fraction:
    total = Fraction(0)
    factor = Fraction(1)
    for x in prefix:
        total += factor * x
        factor *= lam
    csum = Fraction(0)
    cfac = Fraction(1)
    for x in cycle:
        csum += cfac * x
        cfac *= lam
    return total + factor * csum / (1 - cfac)


def _abs_sup(prefix, cycle) -> Value:
    # sup_n |sum of the first n+1 entries| of prefix . cycle^omega
    if sum(cycle) != 0:
        return INF
    run = Fraction(0)
    best = Fraction(0)
    for x in list(prefix) + list(cycle):
        run += x
        best = max(best, abs(run))
    return best


def val_on_lasso(kind: DistanceKind, w: Lasso) -> Value:
    """Evaluate a kind's sequence valuation on a weight lasso.

    For all kinds but discounted the lasso holds one weight per game
    step (maximizer steps weigh 0); for discounted it holds one weight
    per round.
    """
    sel = kind.selector
    if sel not in (Kind.DISCRETE, Kind.POINTWISE) and any(is_inf(x) for x in w.entries):
        raise ValueError("infinite weights are only meaningful for discrete and pointwise")
    if sel is Kind.DISCRETE:
        return INF if any(x != 0 for x in w.entries) else Fraction(0)
    if sel is Kind.POINTWISE:
        return max(w.entries)
    if sel is Kind.DISCOUNTED:
        return _discounted_sum(kind.lam, w.prefix, w.cycle)
    if sel is Kind.LIMAVG:
        # liminf of running averages of an eventually periodic sequence
        return sum(w.cycle, Fraction(0)) / len(w.cycle)
    if sel is Kind.CANTOR:
        for n, x in enumerate(w.entries):
            if x != 0:
                return Fraction(2, 1 + n)
        return Fraction(0)
    return _abs_sup(w.prefix, w.cycle)


def val_on_steps(kind: DistanceKind, w: Lasso) -> Value:
    """Valuation of raw per-step game weights (alternating 0 / f shape).

    Identical to val_on_lasso except for discounted, where the round
    weights are the entries at odd step positions.
    """
    if kind.selector is Kind.DISCOUNTED:
        return val_on_lasso(kind, subsample(w, 1, 2))
    return val_on_lasso(kind, w)


def trace_distance(kind: DistanceKind, s: Lasso, t: Lasso) -> Value:
    """The defining formula of each distance, on a pair of label lassos."""
    pairs = zip_lassos(s, t)
    sel = kind.selector
    if sel is Kind.DISCRETE:
        return Fraction(0) if all(a == b for (a, b) in pairs.entries) else INF
    if sel is Kind.CANTOR:
        for n, (a, b) in enumerate(pairs.entries):
            if a != b:
                return Fraction(1, 1 + n)
        return Fraction(0)
    if sel is Kind.MAXLEAD:
        diffs = [f_weight(kind, a, b) for (a, b) in pairs.entries]
        return _abs_sup(diffs[:len(pairs.prefix)], diffs[len(pairs.prefix):])
    d = kind.label_dist
    if sel is Kind.POINTWISE:
        return max(d(a, b) for (a, b) in pairs.entries)
    values = [d(a, b) for (a, b) in pairs.entries]
    if any(is_inf(x) for x in values):
        raise KindError("infinite label distances are not usable with %s" % sel.value)
    if sel is Kind.DISCOUNTED:
        return _discounted_sum(kind.lam, values[:len(pairs.prefix)], values[len(pairs.prefix):])
    return sum(values[len(pairs.prefix):], Fraction(0)) / len(pairs.cycle)
