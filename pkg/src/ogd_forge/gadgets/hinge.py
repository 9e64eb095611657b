"""Plain soft-margin-SVM gadget set (eta = 1, lambda = 0, no bias).

States follow the +1 true / -1 false / 0 unset convention.  Every x
template here has at most 3 non-zero coordinates and every label is +1
except the second half of the bias-correction pair.

The workhorse move is a single example whose sign structure guarantees the
hinge branch taken, shifting a weight by a known amount; several rows below
are exactly that.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache

from ..engine import TrainingExample
from .base import GadgetTable, TableRow, emit

F = Fraction
_ONE = F(1)


@cache
def reset_table() -> GadgetTable:
    """Collapse a +/-1 weight to a single state, then push it to 0."""
    return GadgetTable(
        name="reset",
        family="hinge",
        slots=("i1",),
        before=((F(-1),), (F(1),)),
        rows=(
            TableRow((({"i1": F(-2)}, _ONE),), ((F(-1),), (F(-1),))),
            TableRow((({"i1": F(1)}, _ONE),), ((F(0),), (F(0),))),
        ),
    )


@cache
def not_table() -> GadgetTable:
    """Swap the high and low states keeping a gap of 2, then lower both."""
    return GadgetTable(
        name="not",
        family="hinge",
        slots=("i1",),
        before=((F(-1),), (F(1),)),
        rows=(
            TableRow((({"i1": F(4)}, _ONE),), ((F(3),), (F(1),))),
            TableRow((({"i1": F(-2)}, _ONE),), ((F(1),), (F(-1),))),
        ),
    )


def _not_examples() -> tuple[tuple[dict[str, Fraction], Fraction], ...]:
    return tuple(
        (dict(x), y) for row in not_table().rows for x, y in row.examples
    )


@cache
def copy_table() -> GadgetTable:
    """Read i1 and write its value into an unset i2, restoring i1.

    The first example writes to both coordinates, then a flip of i1 and two
    single-coordinate shifts tidy the states back to +/-1.
    """
    flip = tuple((({"i1": x["i1"]}, y) for x, y in _not_examples()))
    return GadgetTable(
        name="copy",
        family="hinge",
        slots=("i1", "i2"),
        before=((F(-1), F(0)), (F(1), F(0))),
        rows=(
            TableRow(
                (({"i1": F(-4), "i2": F(2)}, _ONE),),
                ((F(-1), F(0)), (F(-3), F(2))),
            ),
            TableRow(
                (({"i1": F(2)}, _ONE),),
                ((F(1), F(0)), (F(-1), F(2))),
            ),
            TableRow(flip, ((F(-1), F(0)), (F(1), F(2))), label="not(i1)"),
            TableRow(
                (({"i2": F(-1)}, _ONE),),
                ((F(-1), F(-1)), (F(1), F(1))),
            ),
        ),
    )


def _reset_examples(slot: str) -> tuple[tuple[dict[str, Fraction], Fraction], ...]:
    return tuple(
        (({slot: x["i1"]}, y)) for row in reset_table().rows for x, y in row.examples
    )


@cache
def dnand_table() -> GadgetTable:
    """NAND of i1,i2 written into an unset i3; i1 and i2 end up unset.

    After the opening shift the three weights sum to -3, -1 or +1; training
    values of magnitude 2 spread those sums to -6, -2, +2, so the hinge
    threshold of +1 separates the all-true case from the rest.
    """
    return GadgetTable(
        name="destructive_nand",
        family="hinge",
        slots=("i1", "i2", "i3"),
        before=(
            (F(-1), F(-1), F(0)),
            (F(-1), F(1), F(0)),
            (F(1), F(-1), F(0)),
            (F(1), F(1), F(0)),
        ),
        rows=(
            TableRow(
                (({"i3": F(-1)}, _ONE),),
                (
                    (F(-1), F(-1), F(-1)),
                    (F(-1), F(1), F(-1)),
                    (F(1), F(-1), F(-1)),
                    (F(1), F(1), F(-1)),
                ),
            ),
            TableRow(
                (({"i1": F(-2), "i2": F(-2), "i3": F(-2)}, _ONE),),
                (
                    (F(-1), F(-1), F(-1)),
                    (F(-1), F(1), F(-1)),
                    (F(1), F(-1), F(-1)),
                    (F(-1), F(-1), F(-3)),
                ),
            ),
            TableRow(
                _reset_examples("i1"),
                (
                    (F(0), F(-1), F(-1)),
                    (F(0), F(1), F(-1)),
                    (F(0), F(-1), F(-1)),
                    (F(0), F(-1), F(-3)),
                ),
                label="reset(i1)",
            ),
            TableRow(
                _reset_examples("i2"),
                (
                    (F(0), F(0), F(-1)),
                    (F(0), F(0), F(-1)),
                    (F(0), F(0), F(-1)),
                    (F(0), F(0), F(-3)),
                ),
                label="reset(i2)",
            ),
            TableRow(
                (({"i3": F(2)}, _ONE),),
                (
                    (F(0), F(0), F(1)),
                    (F(0), F(0), F(1)),
                    (F(0), F(0), F(1)),
                    (F(0), F(0), F(-1)),
                ),
            ),
        ),
    )


@cache
def input_false_table() -> GadgetTable:
    """Write false into an unset weight; leave an already-set weight's value."""
    flip = tuple((({"i1": x["i1"]}, y) for x, y in _not_examples()))
    return GadgetTable(
        name="input_false",
        family="hinge",
        slots=("i1",),
        before=((F(-1),), (F(0),), (F(1),)),
        rows=(
            TableRow(
                (({"i1": F(-1, 4)}, _ONE),),
                ((F(-5, 4),), (F(-1, 4),), (F(3, 4),)),
            ),
            TableRow(
                (({"i1": F(-1)}, _ONE),),
                ((F(-5, 4),), (F(-5, 4),), (F(-1, 4),)),
            ),
            TableRow(
                (({"i1": F(-3)}, _ONE),),
                ((F(-5, 4),), (F(-5, 4),), (F(-13, 4),)),
            ),
            TableRow(
                (({"i1": F(9, 4)}, _ONE),),
                ((F(1),), (F(1),), (F(-1),)),
            ),
            TableRow(flip, ((F(-1),), (F(-1),), (F(1),)), label="not(i1)"),
        ),
    )


@cache
def set_if_true_table() -> GadgetTable:
    """Raise the target to +1 only when i1 is true; when i1 is false the
    target coordinate is untouched at every intermediate step, which is why
    this is the only gadget allowed to name the decision flag."""
    flip = tuple((({"i1": x["i1"]}, y) for x, y in _not_examples()))
    return GadgetTable(
        name="set_if_true",
        family="hinge",
        slots=("i1", "i2"),
        before=((F(-1), F(0)), (F(1), F(0))),
        rows=(
            TableRow(
                (({"i1": F(-4), "i2": F(1)}, _ONE),),
                ((F(-1), F(0)), (F(-3), F(1))),
            ),
            TableRow(
                (({"i1": F(2)}, _ONE),),
                ((F(1), F(0)), (F(-1), F(1))),
            ),
            TableRow(flip, ((F(-1), F(0)), (F(1), F(1))), label="not(i1)"),
        ),
    )


@cache
def bias_fix_table() -> GadgetTable:
    """Return the two mirrored bias coordinates to 0 whether or not the
    preceding base example updated them."""
    return GadgetTable(
        name="bias_fix",
        family="hinge",
        slots=("b1", "b2"),
        before=((F(0), F(0)), (F(-1), F(-1))),
        rows=(
            TableRow(
                (({"b1": F(-1), "b2": F(-1)}, _ONE),),
                ((F(-1), F(-1)), (F(-1), F(-1))),
            ),
            TableRow(
                (({"b1": F(-1), "b2": F(-1)}, F(-1)),),
                ((F(0), F(0)), (F(0), F(0))),
            ),
        ),
    )


def emit_reset(i1: int) -> list[TrainingExample]:
    return emit(reset_table(), {"i1": i1}, f"reset({i1})")


def emit_not(i1: int) -> list[TrainingExample]:
    return emit(not_table(), {"i1": i1}, f"not({i1})")


def emit_copy(i1: int, i2: int) -> list[TrainingExample]:
    return emit(copy_table(), {"i1": i1, "i2": i2}, f"copy({i1},{i2})")


def emit_destructive_nand(i1: int, i2: int, i3: int) -> list[TrainingExample]:
    return emit(
        dnand_table(), {"i1": i1, "i2": i2, "i3": i3}, f"destructive_nand({i1},{i2},{i3})"
    )


def emit_input_false(i1: int) -> list[TrainingExample]:
    return emit(input_false_table(), {"i1": i1}, f"input_false({i1})")


def emit_set_if_true(i1: int, i_target: int) -> list[TrainingExample]:
    return emit(set_if_true_table(), {"i1": i1, "i2": i_target}, f"set_if_true({i1},{i_target})")


def emit_bias_correction(b1: int, b2: int) -> list[TrainingExample]:
    return emit(bias_fix_table(), {"b1": b1, "b2": b2}, f"bias_fix({b1},{b2})")


def all_tables() -> list[GadgetTable]:
    return [
        reset_table(),
        not_table(),
        copy_table(),
        dnand_table(),
        input_false_table(),
        set_if_true_table(),
        bias_fix_table(),
    ]
