import itertools
from fractions import Fraction as F

import pytest

from ogd_forge.engine import HingeSvm, OgdState, run_sequence
from ogd_forge.gadgets import regularized as reg
from ogd_forge.gadgets.base import GadgetContractError, check_table, require_table

ALPHAS = (F(4, 5), F(5, 6), F(9, 10))


def model(alpha):
    return HingeSvm(eta=F(1), lam=1 - alpha)


def run(seq, w0, alpha):
    state, _ = run_sequence(OgdState(w=tuple(F(x) for x in w0)), seq, model(alpha))
    return state.w


def eps_choices(alpha):
    return (alpha, alpha**3, alpha**4)


def test_tables_exact_at_acceptance_alphas():
    for a in ALPHAS:
        for e1 in eps_choices(a):
            for table in (
                reg.rreset_table(a, e1),
                reg.rcopy_table(a, e1),
                reg.rinput_false_table(a, e1),
                reg.rset_if_true_table(a, e1),
            ):
                assert check_table(table, a) == [], (table.name, a, e1)
            for e2 in eps_choices(a):
                table = reg.rdnand_table(a, e1, e2)
                assert check_table(table, a) == [], ("rdnand", a, e1, e2)


def test_returned_magnitudes_match_api():
    for a in ALPHAS:
        e1 = a**3
        assert reg.rcopy_table(a, e1).returns == {"i2": a**4, "i3": a**4}
        assert reg.rdnand_table(a, e1, a**4).returns == {"i3": a**12}
        assert reg.rinput_false_table(a, e1).returns == {"i1": e1 * a**3 / 2}
        table = reg.rset_if_true_table(a, e1)
        assert table.returns["i1"] == e1 * a**3 / 2
        assert table.returns[("conditional", "i2")] == a**2


def test_rreset_zeroes_both_signs():
    a = F(4, 5)
    for sign in (-1, 1):
        e1 = a**2
        seq = reg.emit_rreset(0, e1, a)
        w = run(seq, [sign * e1], a)
        assert w == (F(0),)


def test_rcopy_final_states():
    a = F(4, 5)
    e1 = a**3
    seq, e2, e3 = reg.emit_rcopy(0, 1, 2, e1, a)
    assert (e2, e3) == (a**4, a**4)
    for sign in (-1, 1):
        w = run(seq, [sign * e1, 0, 0], a)
        assert w == (F(0), sign * a**4, sign * a**4)


def test_rdnand_truth_table():
    a = F(5, 6)
    e1, e2 = a**3, a**4
    seq, e3 = reg.emit_rdnand(0, 1, 2, e1, e2, a)
    assert e3 == a**12
    for s1, s2 in itertools.product((-1, 1), repeat=2):
        w = run(seq, [s1 * e1, s2 * e2, 0], a)
        out = -1 if (s1 == 1 and s2 == 1) else 1
        assert w == (F(0), F(0), out * a**12)


def test_rinput_false_three_states():
    a = F(9, 10)
    e1 = a**4
    seq, e_new = reg.emit_rinput_false(0, e1, a)
    assert e_new == e1 * a**3 / 2
    assert run(seq, [-e1], a) == (-e_new,)
    assert run(seq, [0], a) == (-e_new,)
    assert run(seq, [e1], a) == (e_new,)


def test_rset_if_true_isolation_and_write():
    a = F(4, 5)
    e1 = a**5
    seq, e_new, e_flag = reg.emit_rset_if_true(0, 1, e1, a)
    # false case: flag stays exactly 0 at every intermediate step
    state, traj = run_sequence(OgdState(w=(-e1, F(0))), seq, model(a))
    assert all(p.w[1] == 0 for p in traj)
    assert state.w == (-e_new, F(0))
    # true case: flag lands at alpha^2
    w = run(seq, [e1, 0], a)
    assert w == (e_new, e_flag) and e_flag == a**2


def test_frame_decay_exact():
    # coordinates a gadget does not name decay by exactly alpha per example
    a = F(4, 5)
    e1 = a**3
    seq, _, _ = reg.emit_rcopy(0, 1, 2, e1, a)
    w = run(seq, [e1, 0, 0, F(7), F(-2)], a)
    factor = a ** len(seq)
    assert w[3] == 7 * factor and w[4] == -2 * factor


def test_normalized_input_false_lands_on_alpha_power():
    a = F(4, 5)
    for e1 in (a**2, F(3, 7)):
        seq, e_final = reg.emit_rinput_false_normalized(0, 1, 2, e1, a)
        assert e_final == a**7  # power of alpha regardless of the input magnitude
        for start, sign in ((-e1, -1), (F(0), -1), (e1, 1)):
            w = run(seq, [start, 0, 0], a)
            assert w == (sign * e_final, F(0), F(0))


def test_alpha_range_rejected():
    for bad in (F(1, 2), F(7, 10), F(1), F(6, 5)):
        with pytest.raises(ValueError):
            reg.check_alpha(bad)
    with pytest.raises(ValueError):
        reg.emit_rreset(0, F(1, 2), F(7, 10))


def test_branch_violating_magnitude_rejected():
    # eps = 1 breaks the no-update branch of the read example (needs eps^2 < alpha)
    a = F(4, 5)
    with pytest.raises(ValueError):
        reg.emit_rinput_false(0, F(1), a)
    with pytest.raises(ValueError):
        reg.emit_rset_if_true(0, 1, F(1), a)
    with pytest.raises(ValueError):
        reg.emit_rreset(0, F(0), a)
    # and the full-table check sees the same violation as a cell diff
    with pytest.raises(GadgetContractError):
        require_table(reg.rinput_false_table(a, F(1)), a)


def test_sparsity_at_most_three():
    a = F(4, 5)
    seq = reg.emit_rreset(0, a**2, a)
    seq += reg.emit_rcopy(0, 1, 2, a**2, a)[0]
    seq += reg.emit_rdnand(0, 1, 2, a**2, a**3, a)[0]
    seq += reg.emit_rinput_false(0, a**2, a)[0]
    seq += reg.emit_rset_if_true(0, 1, a**2, a)[0]
    assert all(ex.x.nnz() <= 3 for ex in seq)
