import itertools

import numpy as np
import pytest

from evoc.actionspace import Action, PartState, decode, encode, enumerate_all
from evoc.errors import ConfigError
from evoc.fitness import (
    Need, NeedConfig, evaluate, fitness_combined, fitness_f1, fitness_f2, fitness_table,
    optimal_ids, optimum,
)

S, U, D = PartState.STATIONARY, PartState.UP, PartState.DOWN


# Independent oracles, written from activations rather than digits.
def f2_oracle(acts):
    la, ra, ll, rl, h, hip = acts
    L = 1 if ll == -0.5 else 0
    R = 1 if rl == -0.5 else 0
    H = 1 if h != 0 else 0
    return 2.5 * (L + R + 2 * H)


def f1_oracle(acts):
    la, ra, ll, rl, h, hip = acts
    M = sum(1 for a in acts if a != 0)
    SA = 1 if la != 0 and la == ra else 0
    SL = 1 if ll != 0 and ll == rl else 0
    return 0.5 * M + 2 * SA + 2 * SL + 2 * (h != 0) + (hip != 0)


ALL_ACTS = list(itertools.product((0.0, 0.5, -0.5), repeat=6))
TO_STATE = {0.0: S, 0.5: U, -0.5: D}


def test_oracles_agree_with_implementation():
    for acts in ALL_ACTS:
        a = Action(*(TO_STATE[x] for x in acts))
        assert fitness_f2(a) == f2_oracle(acts)
        assert fitness_f1(a) == f1_oracle(acts)
        assert fitness_f2(encode(a)) == fitness_f2(a)


def test_f2_examples():
    assert fitness_f2(Action()) == 0
    for la, ra, hip in itertools.product(PartState, repeat=3):
        assert fitness_f2(Action(la, ra, D, D, U, hip)) == 10
    assert fitness_f2(Action(left_leg=D)) == 2.5


def test_brute_force_optimum_counts():
    f2 = [f2_oracle(a) for a in ALL_ACTS]
    f1 = [f1_oracle(a) for a in ALL_ACTS]
    both = [0.5 * (x + y) for x, y in zip(f1, f2)]
    assert (max(f2), f2.count(10)) == (10, 54)
    assert (max(f1), f1.count(10)) == (10, 16)
    assert (max(both), both.count(10)) == (10, 8)
    assert len(optimal_ids(NeedConfig(Need.F2))) == 54
    assert len(optimal_ids(NeedConfig(Need.F1))) == 16
    assert len(optimal_ids(NeedConfig(Need.BOTH))) == 8
    assert optimum(NeedConfig(Need.BOTH)) == 10


def test_f1_examples():
    assert fitness_f1(Action()) == 0
    assert fitness_f1(Action(*[U] * 6)) == 10


def test_combined_examples():
    cfg = NeedConfig(Need.BOTH, 1, 1)
    assert fitness_combined(Action(U, U, D, D, U, U), cfg) == 10
    half = NeedConfig(Need.BOTH, 1, 0)
    for a in enumerate_all():
        assert fitness_combined(a, half) == 0.5 * fitness_f1(a)
    with pytest.raises(ConfigError):
        NeedConfig(Need.BOTH, 0, 0)
    with pytest.raises(ConfigError):
        NeedConfig(Need.F2, -1, 1)
    with pytest.raises(ConfigError):
        NeedConfig(Need.F2, float("nan"), 1)


def test_evaluate_dispatch():
    assert evaluate(Action(), NeedConfig(Need.F2)) == 0
    assert evaluate(Action(*[U] * 6), NeedConfig(Need.F1)) == 10
    assert evaluate(Action(), NeedConfig(Need.BOTH, 1, 1)) == 0
    for i in (0, 17, 400, 728):
        for cfg in (NeedConfig("f1"), NeedConfig("f2"), NeedConfig("both", 0.3, 2.0)):
            assert evaluate(i, cfg) == evaluate(decode(i), cfg) == fitness_table(cfg)[i]


def test_bounds_exhaustive():
    for a in enumerate_all():
        assert 0 <= fitness_f1(a) <= 10
        assert 0 <= fitness_f2(a) <= 10


def test_f2_ignores_arms_and_hips():
    for a in enumerate_all():
        for la, ra, hip in itertools.product(PartState, repeat=3):
            b = a._replace(left_arm=la, right_arm=ra, hips=hip)
            assert fitness_f2(a) == fitness_f2(b)


def _additive_residual(values):
    # least-squares fit of a per-part, per-state additive model (one-hot design)
    X = np.zeros((729, 18))
    for i, a in enumerate(enumerate_all()):
        for k, p in enumerate(a):
            X[i, 3 * k + int(p)] = 1
    y = np.asarray(values, dtype=float)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return float(np.abs(X @ coef - y).max())


def test_epistasis_f1_not_f2():
    acts = enumerate_all()
    assert _additive_residual([fitness_f1(a) for a in acts]) > 0.1
    assert _additive_residual([fitness_f2(a) for a in acts]) < 1e-9


def test_f1_arm_contribution_reverses():
    # right arm Up is worth more with left arm Up than with left arm Down, and vice versa
    gain = lambda left, right: fitness_f1(Action(left, right)) - fitness_f1(Action(left, S))
    assert gain(U, U) > gain(U, D)
    assert gain(D, D) > gain(D, U)
