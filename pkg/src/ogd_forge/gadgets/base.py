"""Declarative gadget tables and the machinery to emit and verify them.

A gadget is a short fixed sequence of training examples that implements one
logical operation on designated weight coordinates.  Each gadget is stored
as data: its admissible precondition states and, row by row, the examples
it emits together with the state every precondition case must reach after
that row.  Emission and verification both read the same table, so a
transcription error in either the examples or the expected states shows up
as a row-level diff rather than silently skewing the compiler.

Rows may expand to more than one example when a gadget invokes another
gadget as a subroutine; the expectation then covers the subroutine's net
effect, matching the granularity the tables are specified at.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..engine import (
    BoundaryViolation,
    DenseRelu,
    DenseReluDense,
    HingeSvm,
    LossModel,
    TrainingExample,
    _apply_inplace,
)
from ..rationals import ONE, ZERO, SparseVec, format_rat

FAMILIES = ("hinge", "hinge-reg", "dense-relu", "drd")


@dataclass(frozen=True)
class TableRow:
    """Examples for one checkpoint plus the expected state per case."""

    examples: tuple[tuple[dict[str, Fraction], Fraction], ...]
    after: tuple[tuple[Fraction, ...], ...]
    label: str = ""  # non-empty when the row is a nested gadget call


@dataclass(frozen=True)
class GadgetTable:
    name: str
    family: str
    slots: tuple[str, ...]
    before: tuple[tuple[Fraction, ...], ...]
    rows: tuple[TableRow, ...]
    has_v: bool = False
    # written slot -> magnitude at gadget end (regularized family only);
    # slots written conditionally carry a ("conditional", slot) key instead.
    returns: Mapping[str, Fraction] | None = None
    # cells whose published value differs from what exact simulation forces:
    # (row index, case index, state column) -> published value
    printed_cells: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.slots) + (1 if self.has_v else 0)
        for state in self.before:
            assert len(state) == width, f"{self.name}: bad precondition width"
        for row in self.rows:
            assert len(row.after) == len(self.before), f"{self.name}: case count mismatch"
            for state in row.after:
                assert len(state) == width, f"{self.name}: bad row width"

    def n_examples(self) -> int:
        return sum(len(row.examples) for row in self.rows)


class GadgetContractError(AssertionError):
    """A gadget simulation diverged from its table."""


@dataclass(frozen=True)
class CellDiff:
    table: str
    row: int
    case: int
    column: str  # slot name or "v"
    expected: Fraction
    actual: Fraction

    def describe(self) -> str:
        return (
            f"{self.table}: row {self.row}, case {self.case}, {self.column}: "
            f"table says {format_rat(self.expected)}, simulation gives {format_rat(self.actual)}"
        )


def family_model(family: str, alpha: Fraction | None = None) -> LossModel:
    if family == "hinge":
        return HingeSvm()
    if family == "hinge-reg":
        if alpha is None:
            raise ValueError("regularized family needs alpha")
        return HingeSvm(eta=ONE, lam=ONE - alpha)
    if family == "dense-relu":
        return DenseRelu()
    if family == "drd":
        return DenseReluDense()
    raise ValueError(f"unknown family {family!r}")


def emit(table: GadgetTable, coords: Mapping[str, int], tag: str) -> list[TrainingExample]:
    """Instantiate the table's examples onto concrete coordinates."""
    values = list(coords.values())
    if len(set(values)) != len(values):
        raise ValueError(f"{table.name}: coordinates must be distinct, got {coords}")
    out = []
    for row in table.rows:
        for x_slots, y in row.examples:
            x = SparseVec({coords[slot]: val for slot, val in x_slots.items()})
            out.append(TrainingExample(x=x, y=y, gadget=tag))
    return out


def check_table(
    table: GadgetTable,
    alpha: Fraction | None = None,
    coords: Mapping[str, int] | None = None,
    bystanders: Mapping[int, Fraction] | None = None,
    against_printed: bool = False,
) -> list[CellDiff]:
    """Simulate the gadget from every admissible precondition and diff every
    row boundary against the table.  Returns the list of mismatching cells
    (empty when the table is faithful).

    ``bystanders`` places extra values on coordinates the gadget does not
    name; the frame property says they must come back unchanged (plain
    families) or exactly decayed (regularized).  ``against_printed``
    substitutes the published values for cells known to disagree with exact
    simulation, which is how those disagreements get re-detected and
    reported by name instead of silently resolved.
    """
    model = family_model(table.family, alpha)
    if coords is None:
        coords = {slot: i for i, slot in enumerate(table.slots)}
    bystanders = dict(bystanders or {})
    for idx in bystanders:
        if idx in coords.values():
            raise ValueError("bystander collides with a gadget coordinate")
    dim = max([*coords.values(), *bystanders.keys()], default=-1) + 1
    examples = emit(table, coords, table.name)
    decay = model.decay if isinstance(model, HingeSvm) else ONE

    diffs: list[CellDiff] = []
    columns = list(table.slots) + (["v"] if table.has_v else [])
    for case_idx, start in enumerate(table.before):
        w = [ZERO] * dim
        for slot, val in zip(table.slots, start):
            w[coords[slot]] = val
        for idx, val in bystanders.items():
            w[idx] = val
        v = start[-1] if table.has_v else None
        pos = 0
        steps_done = 0
        for row_idx, row in enumerate(table.rows):
            for _ in row.examples:
                ex = examples[pos]
                pos += 1
                v, _ = _apply_inplace(model, w, v, ex, steps_done)
                steps_done += 1
            expected = row.after[case_idx]
            if against_printed:
                expected = tuple(
                    table.printed_cells.get((row_idx, case_idx, col), val)
                    for col, val in enumerate(expected)
                )
            actual = tuple(w[coords[slot]] for slot in table.slots)
            if table.has_v:
                actual = actual + (v,)
            if actual != expected:
                for col, (exp_val, act_val) in enumerate(zip(expected, actual)):
                    if exp_val != act_val:
                        diffs.append(
                            CellDiff(table.name, row_idx, case_idx, columns[col], exp_val, act_val)
                        )
        # frame property at gadget end
        expected_frame = decay ** steps_done
        for idx, val in bystanders.items():
            if w[idx] != val * expected_frame:
                diffs.append(
                    CellDiff(table.name, len(table.rows) - 1, case_idx, f"bystander[{idx}]",
                             val * expected_frame, w[idx])
                )
    return diffs


def require_table(table: GadgetTable, alpha: Fraction | None = None) -> None:
    """Raise unless the table simulates exactly as written.

    Regularized tables only hold when the chosen alpha and magnitudes keep
    every margin strictly off the hinge boundary; instantiating with bad
    parameters shows up as a cell diff (or a BoundaryViolation) here.
    """
    try:
        diffs = check_table(table, alpha)
    except BoundaryViolation as exc:
        raise GadgetContractError(f"{table.name}: {exc}") from exc
    if diffs:
        raise GadgetContractError("; ".join(d.describe() for d in diffs[:4]))


def table_to_json(table: GadgetTable) -> dict:
    """Catalog form: contract states and example templates, wire-formatted."""

    def state(vals: Sequence[Fraction]) -> list[str]:
        return [format_rat(v) for v in vals]

    return {
        "name": table.name,
        "family": table.family,
        "slots": list(table.slots) + (["v"] if table.has_v else []),
        "preconditions": [state(s) for s in table.before],
        "rows": [
            {
                "label": row.label,
                "examples": [
                    {"x": {slot: format_rat(val) for slot, val in x.items()}, "y": format_rat(y)}
                    for x, y in row.examples
                ],
                "after": [state(s) for s in row.after],
            }
            for row in table.rows
        ],
        "returns": {k: format_rat(v) for k, v in (table.returns or {}).items()},
    }
