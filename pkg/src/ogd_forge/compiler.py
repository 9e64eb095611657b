"""Compile circuit-reachability instances into OGD training sequences.

The construction runs in five phases per pass over the data:

1. write false into any still-unset input weight;
2. per gate in topological order, copy its two operands into the scratch
   registers and NAND them destructively into the gate's weight;
3. test the target-check bit and raise the decision flag if it is true;
4. copy the circuit outputs back onto the input weights;
5. reset the gate weights for the next round.

One pass over the emitted sequence therefore simulates one application of
the circuit, with the weight vector's sign pattern tracking the circuit
state between passes.  The same skeleton drives all four model families;
they differ only in which gadget set implements the phase operations, in
the reserved-coordinate layout, and (for the regularized family) in the
magnitude bookkeeping threaded through every call.

Weight coordinate 0 is always the decision flag, followed by two scratch
registers, then the optional extra reserved coordinate (regularizer
scratch or the ReLU-family +1 helper), then one coordinate per circuit
input and one per gate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .circuits import (
    CircuitError,
    GeneralCircuit,
    NandCircuit,
    Src,
    augment_target,
    ensure_gate_outputs,
    lower_to_nand,
)
from .engine import (
    DenseRelu,
    DenseReluDense,
    HingeSvm,
    LossModel,
    TrainingExample,
    model_from_json,
    model_to_json,
)
from .gadgets import drd as drd_gadgets
from .gadgets import hinge as hinge_gadgets
from .gadgets import regularized as reg_gadgets
from .gadgets import relu as relu_gadgets
from .rationals import ONE, ZERO, format_rat, parse_rat

FLAG = 0
N_PHASES = 5


class CompileError(ValueError):
    """Invalid instance or unsupported flag/transform combination."""


@dataclass(frozen=True)
class Layout:
    """Where each reserved register and circuit wire lives in the weight vector."""

    flag: int
    scratch_a: int
    scratch_b: int
    reg_scratch: int | None
    one_helper: int | None
    inputs: tuple[int, ...]
    gates: tuple[int, ...]
    bias: tuple[int, int] | None
    d: int

    def to_json(self) -> dict:
        return {
            "flag": self.flag,
            "scratch_a": self.scratch_a,
            "scratch_b": self.scratch_b,
            "reg_scratch": self.reg_scratch,
            "one_helper": self.one_helper,
            "inputs": list(self.inputs),
            "gates": list(self.gates),
            "bias": list(self.bias) if self.bias else None,
            "d": self.d,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Layout":
        return cls(
            flag=obj["flag"],
            scratch_a=obj["scratch_a"],
            scratch_b=obj["scratch_b"],
            reg_scratch=obj.get("reg_scratch"),
            one_helper=obj.get("one_helper"),
            inputs=tuple(obj["inputs"]),
            gates=tuple(obj["gates"]),
            bias=tuple(obj["bias"]) if obj.get("bias") else None,
            d=obj["d"],
        )


def _make_layout(n: int, m: int, extra: str | None) -> Layout:
    base = 3 if extra is None else 4
    inputs = tuple(range(base, base + n))
    gates = tuple(range(base + n, base + n + m))
    return Layout(
        flag=0,
        scratch_a=1,
        scratch_b=2,
        reg_scratch=3 if extra == "reg" else None,
        one_helper=3 if extra == "helper" else None,
        inputs=inputs,
        gates=gates,
        bias=None,
        d=base + n + m,
    )


@dataclass(frozen=True)
class MagnitudeCheckpoint:
    """Expected |w| per coordinate right after one gadget call (regularized)."""

    step: int  # examples consumed so far when the check applies
    set_coords: dict[int, Fraction]  # coordinate -> exact magnitude
    conditional: dict[int, Fraction]  # magnitude if the coordinate fired, else 0


@dataclass
class CompiledProgram:
    sequence: list[TrainingExample]
    layout: Layout
    model: LossModel
    phase_spans: tuple[tuple[int, int], ...]  # 5 half-open [start, end) spans
    initial_weights: dict[int, Fraction] = field(default_factory=dict)
    initial_v: Fraction | None = None
    alpha: Fraction | None = None
    magnitude_checkpoints: list[MagnitudeCheckpoint] = field(default_factory=list)
    n_prime: int = 0  # input width of the augmented circuit

    @property
    def d(self) -> int:
        return self.layout.d

    def default_max_passes(self) -> int:
        # The circuit input is the only state carried between passes, so
        # 2**n distinct states bound any cycle; one extra pass detects it.
        return 2 ** self.n_prime + 1

    def header_json(self) -> dict:
        return {
            "kind": "compiled-program",
            "d": self.d,
            "n_prime": self.n_prime,
            "model": model_to_json(self.model),
            "layout": self.layout.to_json(),
            "phases": [list(span) for span in self.phase_spans],
            "initial_w": {str(i): format_rat(v) for i, v in self.initial_weights.items()},
            "initial_v": None if self.initial_v is None else format_rat(self.initial_v),
            "alpha": None if self.alpha is None else format_rat(self.alpha),
            "ledger": [
                {
                    "step": cp.step,
                    "set": {str(i): format_rat(v) for i, v in cp.set_coords.items()},
                    "conditional": {str(i): format_rat(v) for i, v in cp.conditional.items()},
                }
                for cp in self.magnitude_checkpoints
            ],
            "length": len(self.sequence),
        }

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(self.header_json()) + "\n")
            for ex in self.sequence:
                fh.write(json.dumps(ex.to_json()) + "\n")

    @classmethod
    def load(cls, path: str) -> "CompiledProgram":
        with open(path, "r", encoding="utf-8") as fh:
            header = json.loads(fh.readline())
            if header.get("kind") != "compiled-program":
                raise CompileError(f"not a compiled program: kind={header.get('kind')!r}")
            sequence = [TrainingExample.from_json(json.loads(line)) for line in fh if line.strip()]
        if len(sequence) != header.get("length", len(sequence)):
            raise CompileError("program file truncated: example count mismatch")
        return cls(
            sequence=sequence,
            layout=Layout.from_json(header["layout"]),
            model=model_from_json(header["model"]),
            phase_spans=tuple(tuple(span) for span in header["phases"]),
            initial_weights={int(k): parse_rat(v) for k, v in header.get("initial_w", {}).items()},
            initial_v=parse_rat(header["initial_v"]) if header.get("initial_v") else None,
            alpha=parse_rat(header["alpha"]) if header.get("alpha") else None,
            magnitude_checkpoints=[
                MagnitudeCheckpoint(
                    step=cp["step"],
                    set_coords={int(k): parse_rat(v) for k, v in cp["set"].items()},
                    conditional={int(k): parse_rat(v) for k, v in cp["conditional"].items()},
                )
                for cp in header.get("ledger", [])
            ],
            n_prime=header.get("n_prime", 0),
        )


def prepare_circuit(circuit: NandCircuit | GeneralCircuit, s_star: str) -> NandCircuit:
    """Lower to NAND, add the target-check input/output pair, and make every
    output gate-driven (phase 4 reads outputs from gate coordinates)."""
    nand_circuit = lower_to_nand(circuit) if isinstance(circuit, GeneralCircuit) else circuit
    return ensure_gate_outputs(augment_target(nand_circuit, s_star))


def _src_coord(layout: Layout, src: Src) -> int:
    kind, k = src
    return layout.inputs[k] if kind == "in" else layout.gates[k]


def _tag_phase(examples: list[TrainingExample], phase: int) -> list[TrainingExample]:
    return [replace(ex, phase=phase) for ex in examples]


def compile_cpath(circuit: NandCircuit | GeneralCircuit, s_star: str) -> CompiledProgram:
    """Theorem-style five-phase reduction for the plain hinge model."""
    cp = prepare_circuit(circuit, s_star)
    n, m = cp.n_inputs, cp.n_gates
    layout = _make_layout(n, m, extra=None)
    seq: list[TrainingExample] = []
    spans = []

    start = len(seq)
    for i in range(n):
        seq += _tag_phase(hinge_gadgets.emit_input_false(layout.inputs[i]), 1)
    spans.append((start, len(seq)))

    start = len(seq)
    for gi, (a, b) in enumerate(cp.gates):
        seq += _tag_phase(hinge_gadgets.emit_copy(_src_coord(layout, a), layout.scratch_a), 2)
        seq += _tag_phase(hinge_gadgets.emit_copy(_src_coord(layout, b), layout.scratch_b), 2)
        seq += _tag_phase(
            hinge_gadgets.emit_destructive_nand(
                layout.scratch_a, layout.scratch_b, layout.gates[gi]
            ),
            2,
        )
    spans.append((start, len(seq)))

    start = len(seq)
    check = _src_coord(layout, cp.outputs[-1])
    seq += _tag_phase(hinge_gadgets.emit_set_if_true(check, layout.flag), 3)
    spans.append((start, len(seq)))

    start = len(seq)
    for i in range(n):
        seq += _tag_phase(hinge_gadgets.emit_reset(layout.inputs[i]), 4)
        seq += _tag_phase(
            hinge_gadgets.emit_copy(_src_coord(layout, cp.outputs[i]), layout.inputs[i]), 4
        )
    spans.append((start, len(seq)))

    start = len(seq)
    for gi in range(m):
        seq += _tag_phase(hinge_gadgets.emit_reset(layout.gates[gi]), 5)
    spans.append((start, len(seq)))

    return CompiledProgram(
        sequence=seq,
        layout=layout,
        model=HingeSvm(),
        phase_spans=tuple(spans),
        n_prime=n,
    )


# --- extension transforms ----------------------------------------------------


def _require_plain_hinge(program: CompiledProgram, what: str) -> None:
    model = program.model
    if not (
        isinstance(model, HingeSvm)
        and model.eta == 1
        and model.lam == 0
        and model.bias_dims is None
    ):
        raise CompileError(
            f"unsupported combination: {what} applies only to plain hinge programs "
            "(eta=1, lambda=0, no bias); extensions are analyzed in isolation"
        )


def apply_bias_transform(program: CompiledProgram) -> CompiledProgram:
    """Add the two mirrored bias coordinates.

    Every base example gains forced entries x[b1] = x[b2] = -1, and the
    two-example correction gadget follows each base example so the bias
    weights are 0 again before the next one.  Sequence length triples.
    """
    _require_plain_hinge(program, "the bias transform")
    d = program.layout.d
    b1, b2 = d, d + 1
    layout = replace(program.layout, bias=(b1, b2), d=d + 2)
    forced = {b1: Fraction(-1), b2: Fraction(-1)}
    seq: list[TrainingExample] = []
    for ex in program.sequence:
        entries = dict(ex.x.items())
        entries.update(forced)
        seq.append(replace(ex, x=type(ex.x)(entries)))
        for fix in hinge_gadgets.emit_bias_correction(b1, b2):
            seq.append(replace(fix, phase=ex.phase))
    spans = tuple((3 * s, 3 * e) for s, e in program.phase_spans)
    return CompiledProgram(
        sequence=seq,
        layout=layout,
        model=HingeSvm(bias_dims=(b1, b2)),
        phase_spans=spans,
        n_prime=program.n_prime,
    )


def apply_eta_scaling(program: CompiledProgram, r: Fraction) -> CompiledProgram:
    """Set the learning rate to r**2 by dividing every training vector by r.

    Restricting eta to squares of rationals keeps sqrt(eta) = r exact.  The
    resulting trajectory is r times the eta=1 trajectory with identical
    margin branches, so decisions are unchanged.
    """
    r = Fraction(r)
    if r <= 0:
        raise CompileError("eta root must be positive")
    _require_plain_hinge(program, "learning-rate scaling")
    seq = [replace(ex, x=ex.x.scaled(1 / r)) for ex in program.sequence]
    return CompiledProgram(
        sequence=seq,
        layout=program.layout,
        model=HingeSvm(eta=r * r),
        phase_spans=program.phase_spans,
        n_prime=program.n_prime,
    )


# --- regularized compilation ---------------------------------------------------


class EpsilonLedger:
    """Tracks each coordinate's current stored magnitude during compilation.

    Every emitted example decays every live magnitude by alpha; gadget
    returns then pin the written coordinates' magnitudes at the values the
    tables guarantee.  A coordinate is either unset (no entry), set, or
    conditionally set (the decision flag, whose write depends on runtime
    data; only its magnitude-if-set is known).
    """

    def __init__(self, alpha: Fraction):
        self.alpha = alpha
        self.eps: dict[int, Fraction] = {}
        self.conditional: dict[int, Fraction] = {}

    def advance(self, n_examples: int) -> None:
        factor = self.alpha**n_examples
        for c in self.eps:
            self.eps[c] *= factor
        for c in self.conditional:
            self.conditional[c] *= factor

    def get(self, coord: int) -> Fraction:
        return self.eps[coord]

    def set(self, coord: int, value: Fraction) -> None:
        self.conditional.pop(coord, None)
        self.eps[coord] = value

    def set_conditional(self, coord: int, value: Fraction) -> None:
        self.eps.pop(coord, None)
        self.conditional[coord] = value

    def clear(self, coord: int) -> None:
        self.eps.pop(coord, None)
        self.conditional.pop(coord, None)

    def snapshot(self, step: int) -> MagnitudeCheckpoint:
        return MagnitudeCheckpoint(step, dict(self.eps), dict(self.conditional))


def _build_regularized(
    cp: NandCircuit,
    alpha: Fraction,
    phase1_eps: dict[int, Fraction],
) -> tuple[CompiledProgram, dict[int, int], dict[int, int]]:
    """One compilation pass.  Returns the program plus, per input position,
    where its phase-1 gadget starts and where its phase-4 rewrite ends."""
    n, m = cp.n_inputs, cp.n_gates
    layout = _make_layout(n, m, extra="reg")
    a = alpha
    A, B, C = layout.scratch_a, layout.scratch_b, layout.reg_scratch
    seq: list[TrainingExample] = []
    spans = []
    ledger = EpsilonLedger(a)
    checkpoints: list[MagnitudeCheckpoint] = []
    phase1_start: dict[int, int] = {}
    phase4_end: dict[int, int] = {}

    def run(examples: list[TrainingExample], phase: int) -> None:
        seq.extend(_tag_phase(examples, phase))
        ledger.advance(len(examples))

    def checkpoint() -> None:
        checkpoints.append(ledger.snapshot(len(seq)))

    def nd_copy(src: int, dst: int, spare: int, phase: int) -> None:
        """Non-destructive copy via the destructive primitive: fork src into
        dst+spare, clear dst, then fork spare back into src+dst."""
        examples, e_dst, e_spare = reg_gadgets.emit_rcopy(src, dst, spare, ledger.get(src), a)
        ledger.clear(src)
        run(examples, phase)
        ledger.set(dst, e_dst)
        ledger.set(spare, e_spare)
        checkpoint()
        examples = reg_gadgets.emit_rreset(dst, ledger.get(dst), a)
        ledger.clear(dst)
        run(examples, phase)
        checkpoint()
        examples, e_src, e_dst = reg_gadgets.emit_rcopy(spare, src, dst, ledger.get(spare), a)
        ledger.clear(spare)
        run(examples, phase)
        ledger.set(src, e_src)
        ledger.set(dst, e_dst)
        checkpoint()

    # phase 1
    start = len(seq)
    for i in range(n):
        coord = layout.inputs[i]
        phase1_start[i] = len(seq)
        examples, eps_new = reg_gadgets.emit_rinput_false(coord, phase1_eps[coord], a)
        run(examples, 1)
        ledger.set(coord, eps_new)
        checkpoint()
    spans.append((start, len(seq)))

    # phase 2
    start = len(seq)
    for gi, (sa, sb) in enumerate(cp.gates):
        nd_copy(_src_coord(layout, sa), A, C, 2)
        nd_copy(_src_coord(layout, sb), B, C, 2)
        gate = layout.gates[gi]
        examples, e_gate = reg_gadgets.emit_rdnand(A, B, gate, ledger.get(A), ledger.get(B), a)
        ledger.clear(A)
        ledger.clear(B)
        run(examples, 2)
        ledger.set(gate, e_gate)
        checkpoint()
    spans.append((start, len(seq)))

    # phase 3
    start = len(seq)
    check = _src_coord(layout, cp.outputs[-1])
    examples, e_check, e_flag = reg_gadgets.emit_rset_if_true(
        check, layout.flag, ledger.get(check), a
    )
    run(examples, 3)
    ledger.set(check, e_check)
    ledger.set_conditional(layout.flag, e_flag)
    checkpoint()
    spans.append((start, len(seq)))

    # phase 4: per input, reset it then pull the matching output across,
    # restoring the output gate for any later reader
    start = len(seq)
    for i in range(n):
        coord = layout.inputs[i]
        out = _src_coord(layout, cp.outputs[i])
        examples = reg_gadgets.emit_rreset(coord, ledger.get(coord), a)
        ledger.clear(coord)
        run(examples, 4)
        checkpoint()
        examples, e_in, e_A = reg_gadgets.emit_rcopy(out, coord, A, ledger.get(out), a)
        ledger.clear(out)
        run(examples, 4)
        ledger.set(coord, e_in)
        ledger.set(A, e_A)
        checkpoint()
        phase4_end[i] = len(seq)
        examples, e_out, e_B = reg_gadgets.emit_rcopy(A, out, B, ledger.get(A), a)
        ledger.clear(A)
        run(examples, 4)
        ledger.set(out, e_out)
        ledger.set(B, e_B)
        checkpoint()
        examples = reg_gadgets.emit_rreset(B, ledger.get(B), a)
        ledger.clear(B)
        run(examples, 4)
        checkpoint()
    spans.append((start, len(seq)))

    # phase 5
    start = len(seq)
    for gi in range(m):
        gate = layout.gates[gi]
        examples = reg_gadgets.emit_rreset(gate, ledger.get(gate), a)
        ledger.clear(gate)
        run(examples, 5)
        checkpoint()
    spans.append((start, len(seq)))

    program = CompiledProgram(
        sequence=seq,
        layout=layout,
        model=HingeSvm(eta=ONE, lam=ONE - a),
        phase_spans=tuple(spans),
        alpha=a,
        magnitude_checkpoints=checkpoints,
        n_prime=n,
    )
    return program, phase1_start, phase4_end


def compile_cpath_regularized(
    circuit: NandCircuit | GeneralCircuit, s_star: str, alpha: Fraction
) -> CompiledProgram:
    """Five-phase reduction with weight decay alpha = 1 - lambda per step.

    Phase-1 magnitudes refer to writes made by the *previous* pass's phase
    4, so compilation runs twice: a first pass with placeholder magnitudes
    fixes every gadget's position (gadget lengths never depend on the
    magnitudes), then the real pass uses the decayed write magnitudes read
    off those positions.
    """
    a = reg_gadgets.check_alpha(alpha)
    cp = prepare_circuit(circuit, s_star)
    layout = _make_layout(cp.n_inputs, cp.n_gates, extra="reg")
    # any branch-valid magnitude works for the position pass; alpha satisfies
    # eps^2 < alpha everywhere the tables need it
    placeholder = {coord: a for coord in layout.inputs}
    draft, p1_start, p4_end = _build_regularized(cp, a, placeholder)
    length = len(draft.sequence)

    # phase 4 leaves each input at the copy magnitude a^4 when its rewrite
    # gadget ends; it then decays once per example until its phase-1 gadget
    # starts on the next pass.
    resolved: dict[int, Fraction] = {}
    for i, coord in enumerate(layout.inputs):
        gap = (length - p4_end[i]) + p1_start[i]
        resolved[coord] = a**4 * a**gap

    program, p1_start_2, p4_end_2 = _build_regularized(cp, a, resolved)
    if len(program.sequence) != length or p1_start_2 != p1_start or p4_end_2 != p4_end:
        raise CompileError("magnitude resolution changed gadget positions; compiler bug")
    return program


# --- ReLU-family compilation ---------------------------------------------------


def compile_cpath_relu(circuit: NandCircuit | GeneralCircuit, s_star: str) -> CompiledProgram:
    """Five-phase reduction for the dense-ReLU model.

    The helper coordinate must already be +1 when the first example arrives:
    from the literal all-zero vector every first example has w.x = 0, the
    undefined ReLU point the construction promises to avoid, so compiled
    programs start at the gadget rest state (helper = +1, all else 0; the
    decision flag still starts at 0).
    """
    cp = prepare_circuit(circuit, s_star)
    n, m = cp.n_inputs, cp.n_gates
    layout = _make_layout(n, m, extra="helper")
    helper = layout.one_helper
    seq: list[TrainingExample] = []
    spans = []

    start = len(seq)
    for i in range(n):
        seq += _tag_phase(relu_gadgets.emit_dr_set_false_if_unset(layout.inputs[i], helper), 1)
    spans.append((start, len(seq)))

    start = len(seq)
    for gi, (a, b) in enumerate(cp.gates):
        seq += _tag_phase(relu_gadgets.emit_dr_copy(_src_coord(layout, a), layout.scratch_a), 2)
        seq += _tag_phase(relu_gadgets.emit_dr_copy(_src_coord(layout, b), layout.scratch_b), 2)
        seq += _tag_phase(
            relu_gadgets.emit_dr_destructive_nand(
                layout.scratch_a, layout.scratch_b, layout.gates[gi], helper
            ),
            2,
        )
    spans.append((start, len(seq)))

    start = len(seq)
    check = _src_coord(layout, cp.outputs[-1])
    seq += _tag_phase(relu_gadgets.emit_dr_set_if_true(check, layout.flag), 3)
    spans.append((start, len(seq)))

    start = len(seq)
    for i in range(n):
        seq += _tag_phase(relu_gadgets.emit_dr_reset(layout.inputs[i]), 4)
        seq += _tag_phase(
            relu_gadgets.emit_dr_copy(_src_coord(layout, cp.outputs[i]), layout.inputs[i]), 4
        )
    spans.append((start, len(seq)))

    start = len(seq)
    for gi in range(m):
        seq += _tag_phase(relu_gadgets.emit_dr_reset(layout.gates[gi]), 5)
    spans.append((start, len(seq)))

    return CompiledProgram(
        sequence=seq,
        layout=layout,
        model=DenseRelu(),
        phase_spans=tuple(spans),
        initial_weights={helper: ONE},
        n_prime=n,
    )


def compile_cpath_drd(circuit: NandCircuit | GeneralCircuit, s_star: str) -> CompiledProgram:
    """Five-phase reduction for dense-ReLU-dense; every gadget takes the +1
    helper as its final argument and restores v = +1.  Starts at the gadget
    rest state (helper = +1, v = +1) for the same reason as the DR model."""
    cp = prepare_circuit(circuit, s_star)
    n, m = cp.n_inputs, cp.n_gates
    layout = _make_layout(n, m, extra="helper")
    helper = layout.one_helper
    seq: list[TrainingExample] = []
    spans = []

    start = len(seq)
    for i in range(n):
        seq += _tag_phase(drd_gadgets.emit_drd_set_false_if_unset(layout.inputs[i], helper), 1)
    spans.append((start, len(seq)))

    start = len(seq)
    for gi, (a, b) in enumerate(cp.gates):
        seq += _tag_phase(
            drd_gadgets.emit_drd_copy(_src_coord(layout, a), layout.scratch_a, helper), 2
        )
        seq += _tag_phase(
            drd_gadgets.emit_drd_copy(_src_coord(layout, b), layout.scratch_b, helper), 2
        )
        seq += _tag_phase(
            drd_gadgets.emit_drd_destructive_nand(
                layout.scratch_a, layout.scratch_b, layout.gates[gi], helper
            ),
            2,
        )
    spans.append((start, len(seq)))

    start = len(seq)
    check = _src_coord(layout, cp.outputs[-1])
    seq += _tag_phase(drd_gadgets.emit_drd_set_if_true(check, layout.flag, helper), 3)
    spans.append((start, len(seq)))

    start = len(seq)
    for i in range(n):
        seq += _tag_phase(drd_gadgets.emit_drd_reset(layout.inputs[i], helper), 4)
        seq += _tag_phase(
            drd_gadgets.emit_drd_copy(_src_coord(layout, cp.outputs[i]), layout.inputs[i], helper),
            4,
        )
    spans.append((start, len(seq)))

    start = len(seq)
    for gi in range(m):
        seq += _tag_phase(drd_gadgets.emit_drd_reset(layout.gates[gi], helper), 5)
    spans.append((start, len(seq)))

    return CompiledProgram(
        sequence=seq,
        layout=layout,
        model=DenseReluDense(),
        phase_spans=tuple(spans),
        initial_weights={helper: ONE},
        initial_v=ONE,
        n_prime=n,
    )


COMPILERS: dict[str, Callable[..., CompiledProgram]] = {
    "hinge": compile_cpath,
    "hinge-reg": compile_cpath_regularized,
    "dense-relu": compile_cpath_relu,
    "drd": compile_cpath_drd,
}
