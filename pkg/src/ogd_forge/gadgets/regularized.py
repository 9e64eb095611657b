"""Regularized hinge gadget set (eta = 1, 0 < lambda < 1 - 1/sqrt(2)).

With an L2 term the weights decay by alpha = 1 - lambda at every step, so
a stored bit no longer sits at +/-1: each coordinate carries a current
magnitude eps and a true/false bit is +/-eps.  Every gadget takes the
magnitudes of the coordinates it reads and reports the magnitudes of the
coordinates it writes, valid at the moment its last example has been
consumed; callers must decay those by alpha per intervening example.

The tables only behave as written when the margins stay strictly off the
hinge boundary, which needs alpha in (1/sqrt(2), 1) and small magnitudes
(eps^2 < alpha whenever a gadget multiplies by 1/eps against a weight of
1/eps scale).  Emitters re-simulate their table at the concrete parameters
and reject instantiations that break any branch.

Two x entries are transcribed from the effect columns rather than the
published templates, which are misprints: the seventh destructive-NAND
example reads coordinate i2 so its entry is -2*a^6/eps2 (not /eps1), and
the third input-false example needs a^2/eps1 + eps1*a^3/2 (the published
numerator drops the square; the companion set-if-true table prints it).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..engine import TrainingExample
from .base import GadgetTable, TableRow, emit

F = Fraction
_ONE = F(1)


def check_alpha(alpha: Fraction) -> Fraction:
    alpha = Fraction(alpha)
    if not (2 * alpha * alpha > 1 and alpha < 1):
        raise ValueError(f"alpha must lie strictly in (1/sqrt(2), 1), got {alpha}")
    return alpha


def _pos(name: str, value: Fraction) -> Fraction:
    value = Fraction(value)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def rreset_table(alpha: Fraction, eps1: Fraction) -> GadgetTable:
    """Collapse +/-eps1 into one state, then cancel it to exactly 0.

    The first example is small enough that both signs update; the second
    multiplies the collapsed weight to straddle the threshold at 1 +/-
    2*eps1^2*a^3, merging the branches; the third cancels the remainder.
    """
    a = check_alpha(alpha)
    e = _pos("eps1", eps1)
    mid1_lo = 1 / (2 * e * a**2) - e * a
    mid1_hi = 1 / (2 * e * a**2) + e * a
    mid2 = 1 / (2 * e * a) + e * a**2
    return GadgetTable(
        name="rreset",
        family="hinge-reg",
        slots=("i1",),
        before=((-e,), (e,)),
        rows=(
            TableRow((({"i1": 1 / (2 * e * a**2)}, _ONE),), ((mid1_lo,), (mid1_hi,))),
            TableRow((({"i1": 2 * e * a**2}, _ONE),), ((mid2,), (mid2,))),
            TableRow((({"i1": -1 / (2 * e) - e * a**3}, _ONE),), ((F(0),), (F(0),))),
        ),
        returns={},
    )


def _expand(table: GadgetTable, rename: Mapping[str, str]):
    """Flatten a table's examples onto different slot names (nested calls)."""
    return tuple(
        ({rename[slot]: val for slot, val in x.items()}, y)
        for row in table.rows
        for x, y in row.examples
    )


def rcopy_table(alpha: Fraction, eps1: Fraction) -> GadgetTable:
    """Copy the sign of i1 into both i2 and i3 (magnitude a^4 each),
    destroying i1.  Making two copies is what lets the reduction keep a
    non-destructive copy primitive despite the destructive read."""
    a = check_alpha(alpha)
    e = _pos("eps1", eps1)
    mid = a / e - e * a**2
    nested = rreset_table(a, mid)
    return GadgetTable(
        name="rcopy",
        family="hinge-reg",
        slots=("i1", "i2", "i3"),
        before=((-e, F(0), F(0)), (e, F(0), F(0))),
        rows=(
            TableRow(
                (({"i1": 2 / e, "i2": F(-2), "i3": F(-2)}, _ONE),),
                ((2 / e - e * a, F(-2), F(-2)), (e * a, F(0), F(0))),
            ),
            TableRow(
                (({"i1": -a / e, "i2": a, "i3": a}, _ONE),),
                ((mid, -a, -a), (-mid, a, a)),
            ),
            TableRow(
                _expand(nested, {"i1": "i1"}),
                ((F(0), -(a**4), -(a**4)), (F(0), a**4, a**4)),
                label="rreset(i1)",
            ),
        ),
        returns={"i2": a**4, "i3": a**4},
    )


def rdnand_table(alpha: Fraction, eps1: Fraction, eps2: Fraction) -> GadgetTable:
    """NAND of sign(i1), sign(i2) into i3 at magnitude a^12; i1, i2 unset.

    The discriminating example only exceeds the threshold in the all-true
    case because 4*a^4 > 1 inside the allowed alpha range.
    """
    a = check_alpha(alpha)
    e1 = _pos("eps1", eps1)
    e2 = _pos("eps2", eps2)
    z = F(0)
    mid1 = 2 * a**2 / e1 - e1 * a**5
    mid2 = 2 * a**6 / e2 - e2 * a**9
    nested1 = rreset_table(a, mid1)
    nested2 = rreset_table(a, mid2)
    return GadgetTable(
        name="rdnand",
        family="hinge-reg",
        slots=("i1", "i2", "i3"),
        before=((-e1, -e2, z), (-e1, e2, z), (e1, -e2, z), (e1, e2, z)),
        rows=(
            TableRow(
                (({"i3": F(-1)}, _ONE),),
                (
                    (-e1 * a, -e2 * a, F(-1)),
                    (-e1 * a, e2 * a, F(-1)),
                    (e1 * a, -e2 * a, F(-1)),
                    (e1 * a, e2 * a, F(-1)),
                ),
            ),
            TableRow(
                (({"i1": -4 / (e1 * a), "i2": -4 / (e2 * a), "i3": -2 * a}, _ONE),),
                (
                    (-e1 * a**2, -e2 * a**2, -a),
                    (-e1 * a**2, e2 * a**2, -a),
                    (e1 * a**2, -e2 * a**2, -a),
                    (-4 / (e1 * a) + e1 * a**2, -4 / (e2 * a) + e2 * a**2, -3 * a),
                ),
            ),
            TableRow(
                (({"i1": 4 / e1}, _ONE),),
                (
                    (4 / e1 - e1 * a**3, -e2 * a**3, -(a**2)),
                    (4 / e1 - e1 * a**3, e2 * a**3, -(a**2)),
                    (e1 * a**3, -e2 * a**3, -(a**2)),
                    (e1 * a**3, -4 / e2 + e2 * a**3, -3 * a**2),
                ),
            ),
            TableRow(
                (({"i2": 4 * a / e2}, _ONE),),
                (
                    (4 * a / e1 - e1 * a**4, 4 * a / e2 - e2 * a**4, -(a**3)),
                    (4 * a / e1 - e1 * a**4, e2 * a**4, -(a**3)),
                    (e1 * a**4, 4 * a / e2 - e2 * a**4, -(a**3)),
                    (e1 * a**4, e2 * a**4, -3 * a**3),
                ),
            ),
            TableRow(
                (({"i1": -2 * a**2 / e1}, _ONE),),
                (
                    (mid1, 4 * a**2 / e2 - e2 * a**5, -(a**4)),
                    (mid1, e2 * a**5, -(a**4)),
                    (-mid1, 4 * a**2 / e2 - e2 * a**5, -(a**4)),
                    (-mid1, e2 * a**5, -3 * a**4),
                ),
            ),
            TableRow(
                _expand(nested1, {"i1": "i1"}),
                (
                    (z, 4 * a**5 / e2 - e2 * a**8, -(a**7)),
                    (z, e2 * a**8, -(a**7)),
                    (z, 4 * a**5 / e2 - e2 * a**8, -(a**7)),
                    (z, e2 * a**8, -3 * a**7),
                ),
                label="rreset(i1)",
            ),
            TableRow(
                (({"i2": -2 * a**6 / e2}, _ONE),),
                (
                    (z, mid2, -(a**8)),
                    (z, -mid2, -(a**8)),
                    (z, mid2, -(a**8)),
                    (z, -mid2, -3 * a**8),
                ),
            ),
            TableRow(
                _expand(nested2, {"i1": "i2"}),
                (
                    (z, z, -(a**11)),
                    (z, z, -(a**11)),
                    (z, z, -(a**11)),
                    (z, z, -3 * a**11),
                ),
                label="rreset(i2)",
            ),
            TableRow(
                (({"i3": 2 * a**12}, _ONE),),
                (
                    (z, z, a**12),
                    (z, z, a**12),
                    (z, z, a**12),
                    (z, z, -(a**12)),
                ),
            ),
        ),
        returns={"i3": a**12},
    )


def rinput_false_table(alpha: Fraction, eps1: Fraction) -> GadgetTable:
    """Write false into an unset weight, or rescale a set weight, landing on
    magnitude eps1*a^3/2 either way."""
    a = check_alpha(alpha)
    e = _pos("eps1", eps1)
    ret = e * a**3 / 2
    return GadgetTable(
        name="rinput_false",
        family="hinge-reg",
        slots=("i1",),
        before=((-e,), (F(0),), (e,)),
        rows=(
            TableRow(
                (({"i1": -1 / e - e * a}, _ONE),),
                ((-e * a,), (-1 / e - e * a,), (-1 / e,)),
            ),
            TableRow(
                (({"i1": -a / e}, _ONE),),
                ((-a / e - e * a**2,), (-a / e - e * a**2,), (-a / e,)),
            ),
            TableRow(
                (({"i1": a**2 / e + e * a**3 / 2}, _ONE),),
                ((-ret,), (-ret,), (ret,)),
            ),
        ),
        returns={"i1": ret},
    )


def rset_if_true_table(alpha: Fraction, eps1: Fraction) -> GadgetTable:
    """Raise the target to alpha^2 only when i1 is positive; when i1 is
    negative the target stays exactly 0 at every intermediate step."""
    a = check_alpha(alpha)
    e = _pos("eps1", eps1)
    ret1 = e * a**3 / 2
    z = F(0)
    return GadgetTable(
        name="rset_if_true",
        family="hinge-reg",
        slots=("i1", "i2"),
        before=((-e, z), (e, z)),
        rows=(
            TableRow(
                (({"i1": -1 / e - e * a, "i2": F(1)}, _ONE),),
                ((-e * a, z), (-1 / e, F(1))),
            ),
            TableRow(
                (({"i1": -a / e}, _ONE),),
                ((-a / e - e * a**2, z), (-a / e, a)),
            ),
            TableRow(
                (({"i1": a**2 / e + e * a**3 / 2}, _ONE),),
                ((-ret1, z), (ret1, a**2)),
            ),
        ),
        returns={"i1": ret1, ("conditional", "i2"): a**2},
    )


# --- emitters ----------------------------------------------------------------
#
# A parameter choice that flips any branch (alpha too close to 1/sqrt(2),
# magnitudes too big) must be rejected at emit time or it would corrupt the
# compiled sequence.  The branch margins reduce to the range conditions
# below; `check_table` validates this reduction by full simulation in the
# verification suite, so emitters only need the cheap checks.  Magnitudes
# are capped at 1: inside a compiled program every magnitude is a decayed
# fraction well under 1.


def _check_magnitude(name: str, eps: Fraction, alpha: Fraction, strict_sqrt: bool) -> None:
    if not 0 < eps <= 1:
        raise ValueError(f"{name} must lie in (0, 1], got {eps}")
    # the read examples multiply a 1/eps-scale weight against a 1/eps-scale
    # entry; the no-update branch needs alpha/eps^2 > 1
    if strict_sqrt and not eps * eps < alpha:
        raise ValueError(f"{name} too large: need {name}^2 < alpha, got {eps}, alpha={alpha}")


def emit_rreset(i1: int, eps1: Fraction, alpha: Fraction) -> list[TrainingExample]:
    check_alpha(alpha)
    _check_magnitude("eps1", eps1, alpha, strict_sqrt=False)
    return emit(rreset_table(alpha, eps1), {"i1": i1}, f"rreset({i1})")


def emit_rcopy(
    i1: int, i2: int, i3: int, eps1: Fraction, alpha: Fraction
) -> tuple[list[TrainingExample], Fraction, Fraction]:
    """Returns (examples, eps2, eps3): magnitudes of i2 and i3 at gadget end."""
    check_alpha(alpha)
    _check_magnitude("eps1", eps1, alpha, strict_sqrt=False)
    table = rcopy_table(alpha, eps1)
    seq = emit(table, {"i1": i1, "i2": i2, "i3": i3}, f"rcopy({i1},{i2},{i3})")
    return seq, table.returns["i2"], table.returns["i3"]


def emit_rdnand(
    i1: int, i2: int, i3: int, eps1: Fraction, eps2: Fraction, alpha: Fraction
) -> tuple[list[TrainingExample], Fraction]:
    """Returns (examples, eps3)."""
    check_alpha(alpha)  # 2*alpha^2 > 1 also gives the needed 4*alpha^4 > 1
    _check_magnitude("eps1", eps1, alpha, strict_sqrt=False)
    _check_magnitude("eps2", eps2, alpha, strict_sqrt=False)
    table = rdnand_table(alpha, eps1, eps2)
    seq = emit(table, {"i1": i1, "i2": i2, "i3": i3}, f"rdnand({i1},{i2},{i3})")
    return seq, table.returns["i3"]


def emit_rinput_false(
    i1: int, eps1: Fraction, alpha: Fraction
) -> tuple[list[TrainingExample], Fraction]:
    """Returns (examples, eps1')."""
    check_alpha(alpha)
    _check_magnitude("eps1", eps1, alpha, strict_sqrt=True)
    table = rinput_false_table(alpha, eps1)
    seq = emit(table, {"i1": i1}, f"rinput_false({i1})")
    return seq, table.returns["i1"]


def emit_rset_if_true(
    i1: int, i2: int, eps1: Fraction, alpha: Fraction
) -> tuple[list[TrainingExample], Fraction, Fraction]:
    """Returns (examples, eps1', eps2); eps2 applies only if the flag fired."""
    check_alpha(alpha)
    _check_magnitude("eps1", eps1, alpha, strict_sqrt=True)
    table = rset_if_true_table(alpha, eps1)
    seq = emit(table, {"i1": i1, "i2": i2}, f"rset_if_true({i1},{i2})")
    return seq, table.returns["i1"], table.returns[("conditional", "i2")]


def emit_rinput_false_normalized(
    i1: int, i2: int, i3: int, eps1: Fraction, alpha: Fraction
) -> tuple[list[TrainingExample], Fraction]:
    """input_false whose final magnitude is a power of alpha.

    The bare gadget returns eps1*a^3/2, which is not a power of alpha; a
    copy round-trip through two spare coordinates (i2, i3 must be unset)
    re-normalizes it.  Every intermediate magnitude is decayed by alpha per
    example while the later calls run.
    """
    a = check_alpha(alpha)
    seq: list[TrainingExample] = []

    part, e1p = emit_rinput_false(i1, eps1, a)
    seq += part
    part, e2, e3 = emit_rcopy(i1, i2, i3, e1p, a)  # i1 destroyed
    seq += part
    part = emit_rreset(i3, e3, a)
    seq += part
    e2 = e2 * a ** len(part)
    part, e1pp, e3p = emit_rcopy(i2, i1, i3, e2, a)  # i2 destroyed, i1 rewritten
    seq += part
    part = emit_rreset(i3, e3p, a)
    seq += part
    e1pp = e1pp * a ** len(part)
    return seq, e1pp


def all_tables(alpha: Fraction, eps1: Fraction, eps2: Fraction) -> list[GadgetTable]:
    return [
        rreset_table(alpha, eps1),
        rcopy_table(alpha, eps1),
        rdnand_table(alpha, eps1, eps2),
        rinput_false_table(alpha, eps1),
        rset_if_true_table(alpha, eps1),
    ]
