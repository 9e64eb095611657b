"""Gadget set for the dense-layer + ReLU model under squared loss.

Updates fire only when w.x > 0, so every gadget needs a positive handle on
the state it wants to move; the destructive NAND and the set-false gadget
borrow a reserved helper coordinate that is +1 between gadget calls (the
compiler passes it as i4 / i2 respectively and the tables restore it).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache

from ..engine import TrainingExample
from .base import GadgetTable, TableRow, emit

F = Fraction


def _row(x: dict[str, Fraction], y: Fraction, after) -> TableRow:
    return TableRow(((x, y),), tuple(tuple(s) for s in after))


@cache
def reset_table() -> GadgetTable:
    return GadgetTable(
        name="dr_reset",
        family="dense-relu",
        slots=("i1",),
        before=((F(-1),), (F(1),)),
        rows=(
            _row({"i1": F(1)}, F(0), [(F(-1),), (F(-1),)]),
            _row({"i1": F(-1)}, F(1, 2), [(F(0),), (F(0),)]),
        ),
    )


@cache
def not_table() -> GadgetTable:
    return GadgetTable(
        name="dr_not",
        family="dense-relu",
        slots=("i1",),
        before=((F(-1),), (F(1),)),
        rows=(
            _row({"i1": F(1)}, F(-2), [(F(-1),), (F(-5),)]),
            _row({"i1": F(-1, 2)}, F(-3, 2), [(F(1),), (F(-1),)]),
        ),
    )


@cache
def copy_table() -> GadgetTable:
    return GadgetTable(
        name="dr_copy",
        family="dense-relu",
        slots=("i1", "i2"),
        before=((F(-1), F(0)), (F(1), F(0))),
        rows=(
            _row({"i1": F(1), "i2": F(-1)}, F(7, 8),
                 [(F(-1), F(0)), (F(3, 4), F(1, 4))]),
            _row({"i1": F(-1), "i2": F(1)}, F(7, 8),
                 [(F(-3, 4), F(-1, 4)), (F(3, 4), F(1, 4))]),
            _row({"i1": F(-1)}, F(7, 8),
                 [(F(-1), F(-1, 4)), (F(3, 4), F(1, 4))]),
            _row({"i1": F(1)}, F(7, 8),
                 [(F(-1), F(-1, 4)), (F(1), F(1, 4))]),
            _row({"i2": F(-1)}, F(5, 8),
                 [(F(-1), F(-1)), (F(1), F(1, 4))]),
            _row({"i2": F(1)}, F(5, 8),
                 [(F(-1), F(-1)), (F(1), F(1))]),
        ),
    )


@cache
def dnand_table() -> GadgetTable:
    """NAND into i3, zeroing i1 and i2; i4 is the +1 helper and is restored."""
    one = F(1)
    return GadgetTable(
        name="dr_destructive_nand",
        family="dense-relu",
        slots=("i1", "i2", "i3", "i4"),
        before=(
            (F(-1), F(-1), F(0), one),
            (F(-1), F(1), F(0), one),
            (F(1), F(-1), F(0), one),
            (F(1), F(1), F(0), one),
        ),
        rows=(
            _row({"i1": F(-1)}, F(3, 2), [
                (F(-2), F(-1), F(0), one),
                (F(-2), F(1), F(0), one),
                (F(1), F(-1), F(0), one),
                (F(1), F(1), F(0), one),
            ]),
            _row({"i2": F(-1)}, F(3, 2), [
                (F(-2), F(-2), F(0), one),
                (F(-2), F(1), F(0), one),
                (F(1), F(-2), F(0), one),
                (F(1), F(1), F(0), one),
            ]),
            _row({"i1": F(1), "i2": F(1), "i3": F(1)}, F(1, 2), [
                (F(-2), F(-2), F(0), one),
                (F(-2), F(1), F(0), one),
                (F(1), F(-2), F(0), one),
                (F(-2), F(-2), F(-3), one),
            ]),
            _row({"i1": F(-1)}, F(1, 2), [
                (F(1), F(-2), F(0), one),
                (F(1), F(1), F(0), one),
                (F(1), F(-2), F(0), one),
                (F(1), F(-2), F(-3), one),
            ]),
            _row({"i1": F(1)}, F(1, 2), [
                (F(0), F(-2), F(0), one),
                (F(0), F(1), F(0), one),
                (F(0), F(-2), F(0), one),
                (F(0), F(-2), F(-3), one),
            ]),
            _row({"i2": F(-1)}, F(1, 2), [
                (F(0), F(1), F(0), one),
                (F(0), F(1), F(0), one),
                (F(0), F(1), F(0), one),
                (F(0), F(1), F(-3), one),
            ]),
            _row({"i2": F(1)}, F(1, 2), [
                (F(0), F(0), F(0), one),
                (F(0), F(0), F(0), one),
                (F(0), F(0), F(0), one),
                (F(0), F(0), F(-3), one),
            ]),
            _row({"i3": F(1), "i4": F(1)}, F(-3, 2), [
                (F(0), F(0), F(-5), F(-4)),
                (F(0), F(0), F(-5), F(-4)),
                (F(0), F(0), F(-5), F(-4)),
                (F(0), F(0), F(-3), one),
            ]),
            _row({"i3": F(-1)}, F(2), [
                (F(0), F(0), F(1), F(-4)),
                (F(0), F(0), F(1), F(-4)),
                (F(0), F(0), F(1), F(-4)),
                (F(0), F(0), F(-1), one),
            ]),
            _row({"i4": F(-1)}, F(3, 2), [
                (F(0), F(0), F(1), one),
                (F(0), F(0), F(1), one),
                (F(0), F(0), F(1), one),
                (F(0), F(0), F(-1), one),
            ]),
        ),
    )


@cache
def set_false_if_unset_table() -> GadgetTable:
    """Phase-1 gadget: unset becomes false, set bits keep their value.
    i2 is the +1 helper; it supplies the positive w.x the unset case needs."""
    one = F(1)
    return GadgetTable(
        name="dr_set_false_if_unset",
        family="dense-relu",
        slots=("i1", "i2"),
        before=((F(-1), one), (F(0), one), (F(1), one)),
        rows=(
            _row({"i1": F(1), "i2": F(1, 2)}, F(0), [
                (F(-1), one),
                (F(-1), F(1, 2)),
                (F(-2), F(-1, 2)),
            ]),
            _row({"i2": F(1)}, F(0), [
                (F(-1), F(-1)),
                (F(-1), F(-1, 2)),
                (F(-2), F(-1, 2)),
            ]),
            _row({"i2": F(-2)}, F(3, 2), [
                (F(-1), one),
                (F(-1), F(-5, 2)),
                (F(-2), F(-5, 2)),
            ]),
            _row({"i2": F(-1)}, F(3, 4), [
                (F(-1), one),
                (F(-1), one),
                (F(-2), one),
            ]),
            _row({"i1": F(-1)}, F(3, 4), [
                (F(-1, 2), one),
                (F(-1, 2), one),
                (F(1, 2), one),
            ]),
            _row({"i1": F(-1)}, F(3, 4), [
                (F(-1), one),
                (F(-1), one),
                (F(1, 2), one),
            ]),
            _row({"i1": F(1)}, F(3, 4), [
                (F(-1), one),
                (F(-1), one),
                (F(1), one),
            ]),
        ),
    )


@cache
def set_if_true_table() -> GadgetTable:
    """Copy-if-true: raises i2 to +1 only when i1 is true; a false i1 leaves
    i2 untouched at every intermediate step."""
    return GadgetTable(
        name="dr_set_if_true",
        family="dense-relu",
        slots=("i1", "i2"),
        before=((F(-1), F(0)), (F(1), F(0))),
        rows=(
            _row({"i1": F(1), "i2": F(-2)}, F(3, 4),
                 [(F(-1), F(0)), (F(1, 2), F(1))]),
            _row({"i1": F(1)}, F(3, 4),
                 [(F(-1), F(0)), (F(1), F(1))]),
        ),
    )


def emit_dr_reset(i1: int) -> list[TrainingExample]:
    return emit(reset_table(), {"i1": i1}, f"dr_reset({i1})")


def emit_dr_not(i1: int) -> list[TrainingExample]:
    return emit(not_table(), {"i1": i1}, f"dr_not({i1})")


def emit_dr_copy(i1: int, i2: int) -> list[TrainingExample]:
    return emit(copy_table(), {"i1": i1, "i2": i2}, f"dr_copy({i1},{i2})")


def emit_dr_destructive_nand(i1: int, i2: int, i3: int, i4: int) -> list[TrainingExample]:
    return emit(
        dnand_table(),
        {"i1": i1, "i2": i2, "i3": i3, "i4": i4},
        f"dr_destructive_nand({i1},{i2},{i3},{i4})",
    )


def emit_dr_set_false_if_unset(i1: int, i2: int) -> list[TrainingExample]:
    return emit(set_false_if_unset_table(), {"i1": i1, "i2": i2},
                f"dr_set_false_if_unset({i1},{i2})")


def emit_dr_set_if_true(i1: int, i2: int) -> list[TrainingExample]:
    return emit(set_if_true_table(), {"i1": i1, "i2": i2}, f"dr_set_if_true({i1},{i2})")


def all_tables() -> list[GadgetTable]:
    return [
        reset_table(),
        not_table(),
        copy_table(),
        dnand_table(),
        set_false_if_unset_table(),
        set_if_true_table(),
    ]
