from fractions import Fraction as F

import pytest

from ogd_forge.engine import (
    BoundaryViolation,
    DenseRelu,
    DenseReluDense,
    HingeSvm,
    OgdState,
    TrainingExample,
    decide_first_coordinate_positive,
    decide_fixed_point,
    model_from_json,
    model_to_json,
    run_sequence,
    step,
)
from ogd_forge.rationals import SparseVec


def ex(x, y, tag=""):
    return TrainingExample(x=SparseVec(x), y=F(y), gadget=tag)


HINGE = HingeSvm()


def test_hinge_no_update_branch():
    state = OgdState(w=(F(-1),))
    out = step(state, ex({0: -2}, 1), HINGE)
    assert out.w == (F(-1),)
    assert out.step == 1


def test_hinge_update_branch():
    state = OgdState(w=(F(1),))
    out = step(state, ex({0: -2}, 1), HINGE)
    assert out.w == (F(-1),)


def test_hinge_raise_example():
    out = step(OgdState(w=(F(-1),)), ex({0: 4}, 1), HINGE)
    assert out.w == (F(3),)


def test_hinge_boundary_is_error():
    # w=1, x=1, y=1 gives margin exactly 1
    with pytest.raises(BoundaryViolation) as info:
        step(OgdState(w=(F(1),)), ex({0: 1}, 1), HINGE)
    assert info.value.kind == "hinge"


def test_hinge_decay():
    model = HingeSvm(eta=F(1), lam=F(1, 5))  # alpha = 4/5
    out = step(OgdState(w=(F(-1),)), ex({0: F(1, 2)}, 1), model)
    # margin -1/2 < 1: w <- (4/5)(-1) + 1/2 = -3/10
    assert out.w == (F(-3, 10),)


def test_hinge_lambda_range_checked():
    with pytest.raises(ValueError):
        HingeSvm(lam=F(1, 2))  # alpha = 1/2 fails 2*alpha^2 > 1
    HingeSvm(lam=F(1, 5))  # fine


def test_relu_branches():
    model = DenseRelu()
    out = step(OgdState(w=(F(1),)), ex({0: 1}, 0), model)
    assert out.w == (F(-1),)
    out = step(OgdState(w=(F(-1),)), ex({0: 1}, 0), model)
    assert out.w == (F(-1),)


def test_relu_boundary_is_error():
    with pytest.raises(BoundaryViolation) as info:
        step(OgdState(w=(F(0),)), ex({0: 1}, 1), DenseRelu())
    assert info.value.kind == "relu"


def test_drd_no_update_when_negative():
    state = OgdState(w=(F(-1), F(1)), v=F(1))
    out = step(state, ex({0: 1}, F(3, 4)), DenseReluDense())
    assert out.w == (F(-1), F(1)) and out.v == F(1)


def test_drd_simultaneous_update():
    # both partials use the pre-update (w, v)
    state = OgdState(w=(F(1), F(1)), v=F(1))
    out = step(state, ex({0: 1}, F(3, 4)), DenseReluDense())
    assert out.w == (F(1, 2), F(1)) and out.v == F(1, 2)


def test_drd_requires_v():
    with pytest.raises(ValueError):
        step(OgdState(w=(F(1),), v=None), ex({0: 1}, 0), DenseReluDense())


def test_regularized_collapse_example():
    # alpha=4/5, eps=1: x = 1/(2*eps*alpha^2) = 25/32; from w=-1 the margin
    # is below 1, so w <- alpha*w + x = 25/32 - 4/5 = -3/160
    model = HingeSvm(lam=F(1, 5))
    out = step(OgdState(w=(F(-1),)), ex({0: F(25, 32)}, 1), model)
    assert out.w == (F(25, 32) - F(4, 5),)
    assert out.w == (F(-3, 160),)


def test_run_sequence_empty():
    state = OgdState(w=(F(5), F(-2)))
    out, traj = run_sequence(state, [], HINGE)
    assert out.w == state.w and traj == []


def test_run_sequence_reset_pair():
    seq = [ex({0: -2}, 1, "a"), ex({0: 1}, 1, "b")]
    out, traj = run_sequence(OgdState(w=(F(1),)), seq, HINGE)
    assert out.w == (F(0),)
    assert [p.w for p in traj] == [(F(-1),), (F(0),)]
    assert [p.gadget for p in traj] == ["a", "b"]
    assert [p.step for p in traj] == [1, 2]


def test_run_sequence_determinism():
    seq = [ex({0: -2}, 1), ex({0: 1}, 1), ex({0: 4}, 1)]
    a = run_sequence(OgdState(w=(F(1),)), seq, HINGE)
    b = run_sequence(OgdState(w=(F(1),)), seq, HINGE)
    assert a == b


def test_boundary_reports_step_index():
    seq = [ex({0: 1}, 1, "first"), ex({0: 1}, 1, "second")]
    with pytest.raises(BoundaryViolation) as info:
        run_sequence(OgdState(w=(F(0),)), seq, HINGE)
    assert info.value.step == 1  # second example, 0-based step counter


def test_decide_first_coordinate():
    # one example raises coordinate 0 from 0 to 1 on the first pass
    seq = [ex({0: 1}, 1)]
    decision = decide_first_coordinate_positive(seq, HINGE, 3, 1)
    assert (decision.answer, decision.hit_pass, decision.hit_step) == (True, 1, 1)


def test_decide_false_with_cycle_detection():
    # flips coordinate 1 forever, never touching the flag
    seq = [ex({1: -2}, 1), ex({1: 4}, 1), ex({1: -2}, 1)]
    decision = decide_first_coordinate_positive(seq, HINGE, 10_000, 2)
    assert decision.answer is False


def test_decide_fixed_point_empty():
    decision = decide_fixed_point([], HINGE, 3, 2)
    assert decision.answer is True and decision.hit_pass == 1


def test_decide_fixed_point_absorbing():
    # write-false sequence: 0 maps to -1 on the first pass and -1 maps to
    # itself afterwards, so pass 2 ends where it started
    seq = [ex({0: x}, 1) for x in (F(-1, 4), F(-1), F(-3), F(9, 4), F(4), F(-2))]
    decision = decide_fixed_point(seq, HINGE, 5, 1)
    assert decision.answer is True and decision.hit_pass == 2


def test_model_json_roundtrip():
    for model in (HingeSvm(), HingeSvm(eta=F(4), bias_dims=(5, 6)), DenseRelu(), DenseReluDense()):
        assert model_from_json(model_to_json(model)) == model
