import itertools
from fractions import Fraction as F

from ogd_forge.engine import DenseRelu, DenseReluDense, OgdState, run_sequence
from ogd_forge.gadgets import drd, relu
from ogd_forge.gadgets.base import check_table
from ogd_forge.verify import confirm_discrepancies, known_discrepancies


def run_dr(seq, w0):
    state, _ = run_sequence(OgdState(w=tuple(F(x) for x in w0)), seq, DenseRelu())
    return state.w


def run_drd(seq, w0, v0=F(1)):
    state, _ = run_sequence(OgdState(w=tuple(F(x) for x in w0), v=F(v0)), seq, DenseReluDense())
    return state.w, state.v


def test_all_dr_tables_exact():
    for table in relu.all_tables():
        assert check_table(table) == [], table.name


def test_all_drd_tables_exact():
    for table in drd.all_tables():
        assert check_table(table) == [], table.name


def test_dr_reset():
    for start in (-1, 1):
        assert run_dr(relu.emit_dr_reset(0), [start]) == (F(0),)


def test_dr_not():
    for start in (-1, 1):
        assert run_dr(relu.emit_dr_not(0), [start]) == (F(-start),)


def test_dr_copy_final():
    assert run_dr(relu.emit_dr_copy(0, 1), [-1, 0]) == (F(-1), F(-1))
    assert run_dr(relu.emit_dr_copy(0, 1), [1, 0]) == (F(1), F(1))


def test_dr_dnand_restores_helper():
    for a, b in itertools.product((-1, 1), repeat=2):
        w = run_dr(relu.emit_dr_destructive_nand(0, 1, 2, 3), [a, b, 0, 1])
        out = -1 if (a, b) == (1, 1) else 1
        assert w == (F(0), F(0), F(out), F(1))


def test_dr_set_false_if_unset():
    for start, end in ((-1, -1), (0, -1), (1, 1)):
        w = run_dr(relu.emit_dr_set_false_if_unset(0, 1), [start, 1])
        assert w == (F(end), F(1))


def test_dr_set_if_true_isolation():
    state, traj = run_sequence(
        OgdState(w=(F(-1), F(0))), relu.emit_dr_set_if_true(0, 1), DenseRelu()
    )
    assert state.w == (F(-1), F(0))
    assert all(p.w[1] == 0 for p in traj)
    assert run_dr(relu.emit_dr_set_if_true(0, 1), [1, 0]) == (F(1), F(1))


def test_drd_reset_first_row_unchanged_case():
    # negative stored bit gives a negative pre-activation: no update
    (w, v) = run_drd(drd.emit_drd_reset(0, 1)[:1], [-1, 1])
    assert w == (F(-1), F(1)) and v == F(1)


def test_drd_reset_contract():
    for start in (-1, 1):
        w, v = run_drd(drd.emit_drd_reset(0, 1), [start, 1])
        assert w == (F(0), F(1)) and v == F(1)


def test_drd_not_contract():
    for start in (-1, 1):
        w, v = run_drd(drd.emit_drd_not(0, 1), [start, 1])
        assert w == (F(-start), F(1)) and v == F(1)


def test_drd_copy_contract():
    for start in (-1, 1):
        w, v = run_drd(drd.emit_drd_copy(0, 1, 2), [start, 0, 1])
        assert w == (F(start), F(start), F(1)) and v == F(1)


def test_drd_dnand_contract():
    for a, b in itertools.product((-1, 1), repeat=2):
        w, v = run_drd(drd.emit_drd_destructive_nand(0, 1, 2, 3), [a, b, 0, 1])
        out = -1 if (a, b) == (1, 1) else 1
        assert w == (F(0), F(0), F(out), F(1)) and v == F(1)


def test_drd_set_false_if_unset_contract():
    for start, end in ((-1, -1), (0, -1), (1, 1)):
        w, v = run_drd(drd.emit_drd_set_false_if_unset(0, 1), [start, 1])
        assert w == (F(end), F(1)) and v == F(1)


def test_drd_set_if_true_contract_and_isolation():
    w, v = run_drd(drd.emit_drd_set_if_true(0, 1, 2), [1, 0, 1])
    assert w == (F(1), F(1), F(1)) and v == F(1)
    state, traj = run_sequence(
        OgdState(w=(F(-1), F(0), F(1)), v=F(1)), drd.emit_drd_set_if_true(0, 1, 2),
        DenseReluDense(),
    )
    assert state.w == (F(-1), F(0), F(1)) and state.v == F(1)
    assert all(p.w[1] == 0 for p in traj)


def test_drd_v_restored_between_gadgets():
    seq = (
        drd.emit_drd_copy(0, 1, 3)
        + drd.emit_drd_not(0, 3)
        + drd.emit_drd_reset(1, 3)
    )
    state, traj = run_sequence(
        OgdState(w=(F(1), F(0), F(0), F(1)), v=F(1)), seq, DenseReluDense()
    )
    boundaries = {len(drd.emit_drd_copy(0, 1, 3))}
    boundaries.add(len(drd.emit_drd_copy(0, 1, 3)) + len(drd.emit_drd_not(0, 3)))
    for p in traj:
        if p.step in boundaries:
            assert p.v == 1 and p.w[3] == 1  # rest state between API calls


def test_rho_exact_value():
    # forced by the update chain: all upstream values are dyadic
    assert drd.RHO_EXACT == F(48545, 1024)
    assert drd.RHO_EXACT.denominator == 1024
    assert drd.RHO_PRINTED != drd.RHO_EXACT
    assert abs(drd.RHO_PRINTED - drd.RHO_EXACT) < F(1, 10**8)  # an 8-decimal rounding


def test_known_discrepancies_inventory():
    names = {d["name"] for d in known_discrepancies()}
    # three labels in the not table, one each in dnand and set-false, plus
    # the rho template and effect cells of the copy table
    assert "drd_not: example 7, y" in names
    assert "drd_not: example 8, y" in names
    assert "drd_not: example 14, y" in names
    assert "drd_destructive_nand: example 10, y" in names
    assert "drd_set_false_if_unset: example 9, y" in names
    assert any(n.startswith("drd_copy: effect row") for n in names)
    assert len(names) == 29


def test_published_labels_break_the_tables():
    confirmations = confirm_discrepancies()
    # 3 labels in not, 1 in dnand, 1 in set-false, 4 rho labels in copy
    assert len(confirmations) == 9
    assert all(c["published_breaks_table"] for c in confirmations)


def test_sparsity_at_most_four():
    seqs = []
    seqs += relu.emit_dr_destructive_nand(0, 1, 2, 3)
    seqs += drd.emit_drd_destructive_nand(0, 1, 2, 3)
    seqs += drd.emit_drd_copy(0, 1, 2)
    seqs += drd.emit_drd_set_if_true(0, 1, 2)
    assert all(ex.x.nnz() <= 4 for ex in seqs)
