import random
from fractions import Fraction

import pytest

from ltsdist import (
    INF,
    DistanceKind,
    Kind,
    KindError,
    LabelDistance,
    Lasso,
    f_weight,
    interleave,
    subsample,
    trace_distance,
    val_on_lasso,
    val_on_steps,
    zip_lassos,
)

import helpers
from helpers import (
    hemimetric_label_distance,
    random_label_distance,
    random_lasso,
)

HALF = Fraction(1, 2)
D1 = LabelDistance({("a", "b"): Fraction(1), ("b", "a"): Fraction(1)})

ALL_KINDS = [
    DistanceKind.discrete(),
    DistanceKind.pointwise(D1),
    DistanceKind.discounted(HALF, D1),
    DistanceKind.limit_average(D1),
    DistanceKind.cantor(),
]


def lasso(prefix, cycle):
    return Lasso(tuple(prefix), tuple(cycle))


def wlasso(prefix, cycle):
    return Lasso(tuple(Fraction(x) for x in prefix), tuple(Fraction(x) for x in cycle))


def test_kind_parameter_validation():
    with pytest.raises(ValueError):
        DistanceKind(Kind.DISCOUNTED)  # missing lambda
    with pytest.raises(ValueError):
        DistanceKind.discounted(1)  # lambda out of range
    with pytest.raises(ValueError):
        DistanceKind(Kind.POINTWISE, lam=HALF)
    with pytest.raises(ValueError):
        DistanceKind(Kind.CANTOR, label_dist=D1)
    assert DistanceKind.pointwise().label_dist("x", "y") == 1  # default table


def test_lasso_shape():
    with pytest.raises(ValueError):
        Lasso((), ())
    w = lasso("ab", "cd")
    assert w.unroll(7) == ("a", "b", "c", "d", "c", "d", "c")


def test_f_weight_discrete():
    k = DistanceKind.discrete()
    assert f_weight(k, "a", "a") == 0
    assert f_weight(k, "a", "b") == INF


def test_f_weight_maxlead_signed():
    k = DistanceKind.max_lead()
    assert f_weight(k, Fraction(3), Fraction(1)) == 2
    assert f_weight(k, Fraction(1), Fraction(3)) == -2
    with pytest.raises(KindError):
        f_weight(k, "a", "b")


def test_f_weight_limavg_doubles():
    k = DistanceKind.limit_average(D1)
    assert f_weight(k, "a", "b") == 2
    assert f_weight(k, "a", "a") == 0


def test_f_weight_rejects_infinite_table_for_sums():
    dinf = LabelDistance({("a", "b"): INF})
    assert f_weight(DistanceKind.pointwise(dinf), "a", "b") == INF
    with pytest.raises(KindError):
        f_weight(DistanceKind.discounted(HALF, dinf), "a", "b")
    with pytest.raises(KindError):
        f_weight(DistanceKind.limit_average(dinf), "a", "b")


def test_val_discounted_geometric():
    # round weights all 1 at lambda 1/2: sum of (1/2)^k = 2
    k = DistanceKind.discounted(HALF, D1)
    assert val_on_lasso(k, wlasso([], [1])) == 2
    # and the partial-sum route agrees
    partial = sum(HALF**i for i in range(40))
    assert partial < 2 <= partial + HALF**40 * 2


def test_val_limavg_is_cycle_mean():
    k = DistanceKind.limit_average(D1)
    assert val_on_lasso(k, wlasso([5], [1, 3])) == 2
    # running averages over a long unrolling approach the same number
    w = wlasso([5], [1, 3])
    n = 4001
    avg = sum(w.unroll(n), Fraction(0)) / n
    assert abs(avg - 2) < Fraction(1, 100)


def test_val_maxlead_partial_sums():
    k = DistanceKind.max_lead()
    w = wlasso([1, -2], [1, -1])
    assert val_on_lasso(k, w) == 1
    # brute partial sums over a long window agree
    run, best = Fraction(0), Fraction(0)
    for x in w.unroll(100):
        run += x
        best = max(best, abs(run))
    assert best == 1


def test_val_maxlead_diverges_iff_cycle_drifts():
    k = DistanceKind.max_lead()
    assert val_on_lasso(k, wlasso([], [1])) == INF
    assert val_on_lasso(k, wlasso([7], [1, -1])) == 8
    rng = random.Random(5)
    for _ in range(100):
        w = wlasso(
            [rng.randint(-2, 2) for _ in range(rng.randint(0, 3))],
            [rng.randint(-2, 2) for _ in range(rng.randint(1, 4))],
        )
        diverges = val_on_lasso(k, w) == INF
        assert diverges == (sum(w.cycle) != 0)


def test_val_cantor():
    k = DistanceKind.cantor()
    assert val_on_lasso(k, wlasso([0, 0], [0])) == 0
    assert val_on_lasso(k, wlasso([0, 1], [0])) == Fraction(2, 2)
    assert val_on_lasso(k, wlasso([], [0, 0, 1])) == Fraction(2, 3)


def test_val_discrete_and_pointwise_allow_infinity():
    assert val_on_lasso(DistanceKind.discrete(), Lasso((), (INF,))) == INF
    assert val_on_lasso(DistanceKind.pointwise(D1), Lasso((Fraction(1),), (INF,))) == INF
    with pytest.raises(ValueError):
        val_on_lasso(DistanceKind.limit_average(D1), Lasso((), (INF,)))


def test_subsample():
    w = wlasso([10, 11, 12], [1, 2])
    assert subsample(w, 1, 2).prefix == (Fraction(11),)
    assert subsample(w, 1, 2).unroll(5) == wlasso([11], [1]).unroll(5)
    assert subsample(wlasso([], [1, 2, 3]), 0, 3).unroll(4) == (1, 1, 1, 1)


def test_trace_distance_identity():
    rng = random.Random(11)
    for kind in ALL_KINDS:
        for _ in range(20):
            s = random_lasso(rng, "abc")
            assert trace_distance(kind, s, s) == 0
    for _ in range(20):
        s = random_lasso(rng, (Fraction(0), Fraction(1), Fraction(2)))
        assert trace_distance(DistanceKind.max_lead(), s, s) == 0


def test_trace_distance_cantor_first_mismatch():
    s = lasso("a", "b")   # a b b b ...
    t = lasso("", "a")    # a a a a ...
    assert trace_distance(DistanceKind.cantor(), s, t) == HALF


def test_trace_distance_pointwise_constant():
    s = lasso("", "a")
    t = lasso("", "b")
    assert trace_distance(DistanceKind.pointwise(D1), s, t) == 1


def test_trace_distance_against_unrolled_references():
    rng = random.Random(13)
    for _ in range(150):
        alphabet = "abc"[: rng.randint(2, 3)]
        s = random_lasso(rng, alphabet)
        t = random_lasso(rng, alphabet)
        d = random_label_distance(rng, alphabet)
        assert trace_distance(DistanceKind.discrete(), s, t) == helpers.ref_discrete(s, t)
        assert trace_distance(DistanceKind.cantor(), s, t) == helpers.ref_cantor(s, t)
        assert trace_distance(DistanceKind.pointwise(d), s, t) == helpers.ref_pointwise(s, t, d)
        lo, hi = helpers.ref_limavg_bracket(s, t, d)
        assert lo <= trace_distance(DistanceKind.limit_average(d), s, t) <= hi
        lo, hi = helpers.ref_discounted_bracket(s, t, d, HALF)
        assert lo <= trace_distance(DistanceKind.discounted(HALF, d), s, t) <= hi
    for _ in range(150):
        nums = (Fraction(0), Fraction(1), Fraction(2))
        s = random_lasso(rng, nums)
        t = random_lasso(rng, nums)
        assert trace_distance(DistanceKind.max_lead(), s, t) == helpers.ref_maxlead(s, t)


def test_interleave_shapes():
    k = DistanceKind.discrete()
    s = lasso("", "a")
    assert interleave(k, s, s).unroll(4) == (0, 0, 0, 0)
    kp = DistanceKind.pointwise(D1)
    w = interleave(kp, lasso("", "a"), lasso("", "b"))
    assert w.cycle == (Fraction(0), Fraction(1))
    km = DistanceKind.max_lead()
    w = interleave(km, Lasso((), (Fraction(2),)), Lasso((), (Fraction(1),)))
    assert w.cycle == (Fraction(0), Fraction(1))
    # discounted interleaving is per round, not per step
    kd = DistanceKind.discounted(HALF, D1)
    w = interleave(kd, lasso("", "a"), lasso("", "b"))
    assert w.cycle == (Fraction(1),)


def test_val_on_steps_discounted_uses_round_weights():
    kd = DistanceKind.discounted(HALF, D1)
    steps = wlasso([], [0, 1])  # alternating game steps
    assert val_on_steps(kd, steps) == 2
    assert val_on_lasso(kd, wlasso([], [1])) == 2


def test_eq1_consistency_all_kinds():
    # val_on_lasso(interleave(...)) must equal the direct formula
    rng = random.Random(17)
    for _ in range(120):
        alphabet = "abc"[: rng.randint(2, 3)]
        s = random_lasso(rng, alphabet)
        t = random_lasso(rng, alphabet)
        d = random_label_distance(rng, alphabet)
        for kind in (
            DistanceKind.discrete(),
            DistanceKind.pointwise(d),
            DistanceKind.discounted(HALF, d),
            DistanceKind.limit_average(d),
            DistanceKind.cantor(),
        ):
            assert val_on_lasso(kind, interleave(kind, s, t)) == trace_distance(kind, s, t)
    nums = (Fraction(0), Fraction(1), Fraction(2))
    for _ in range(120):
        s = random_lasso(rng, nums)
        t = random_lasso(rng, nums)
        k = DistanceKind.max_lead()
        assert val_on_lasso(k, interleave(k, s, t)) == trace_distance(k, s, t)


def test_triangle_inequality_with_hemimetric_table():
    rng = random.Random(19)
    for _ in range(80):
        alphabet = "abc"
        d = hemimetric_label_distance(rng, alphabet)
        kinds = [
            DistanceKind.discrete(),
            DistanceKind.pointwise(d),
            DistanceKind.discounted(HALF, d),
            DistanceKind.limit_average(d),
            DistanceKind.cantor(),
        ]
        s, t, u = (random_lasso(rng, alphabet) for _ in range(3))
        for kind in kinds:
            assert (trace_distance(kind, s, t) + trace_distance(kind, t, u)
                    >= trace_distance(kind, s, u))
    nums = (Fraction(0), Fraction(1), Fraction(2))
    for _ in range(80):
        s, t, u = (random_lasso(rng, nums) for _ in range(3))
        k = DistanceKind.max_lead()
        assert trace_distance(k, s, t) + trace_distance(k, t, u) >= trace_distance(k, s, u)


def test_zip_lassos_is_pointwise_pairing():
    s = lasso("x", "ab")
    t = lasso("", "cde")
    pairs = zip_lassos(s, t)
    for i in range(20):
        assert pairs.at(i) == (s.at(i), t.at(i))
