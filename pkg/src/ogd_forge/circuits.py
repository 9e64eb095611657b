"""Boolean circuits over the ±1 convention, NAND lowering, and the
iterated-application reachability oracle.

A true bit is +1 and a false bit is -1 throughout; weight coordinates in
the compiled programs encode the same convention.  NAND outputs -1 exactly
when both inputs are +1.

Wire sources are tagged pairs: ("in", k) for input k, ("g", k) for the
output of gate k.  Gate lists are topologically ordered (a gate may only
reference inputs or strictly earlier gates).  The JSON form spells sources
as "in:k" / "g:k".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence


class Bit(IntEnum):
    TRUE = 1
    FALSE = -1


class CircuitError(ValueError):
    """Malformed circuit or mismatched target string."""


Src = tuple[str, int]

GATE_OPS = ("NAND", "AND", "OR", "NOT")


def nand(a: Bit, b: Bit) -> Bit:
    return Bit.FALSE if (a is Bit.TRUE and b is Bit.TRUE) else Bit.TRUE


def bits_from_string(s: str) -> tuple[Bit, ...]:
    """'0'/'1' string to bits; '1' is TRUE."""
    out = []
    for ch in s:
        if ch == "1":
            out.append(Bit.TRUE)
        elif ch == "0":
            out.append(Bit.FALSE)
        else:
            raise CircuitError(f"bad bit character {ch!r}")
    return tuple(out)


def bits_to_string(bits: Iterable[Bit]) -> str:
    return "".join("1" if b is Bit.TRUE else "0" for b in bits)


def src_format(src: Src) -> str:
    return f"{src[0]}:{src[1]}"


def src_parse(text: str) -> Src:
    kind, _, num = text.partition(":")
    if kind not in ("in", "g") or not num:
        raise CircuitError(f"bad source {text!r}")
    return (kind, int(num))


def _check_src(src: Src, n_inputs: int, gate_index: int | None, n_gates: int) -> None:
    kind, k = src
    if kind == "in":
        if not 0 <= k < n_inputs:
            raise CircuitError(f"input source {k} out of range")
    elif kind == "g":
        limit = gate_index if gate_index is not None else n_gates
        if not 0 <= k < limit:
            raise CircuitError(f"gate source {k} not strictly earlier (limit {limit})")
    else:
        raise CircuitError(f"bad source kind {kind!r}")


@dataclass(frozen=True)
class NandCircuit:
    """Fan-in-2 NAND circuit mapping n bits to n bits."""

    n_inputs: int
    gates: tuple[tuple[Src, Src], ...]
    outputs: tuple[Src, ...]

    def __post_init__(self):
        if self.n_inputs < 1:
            raise CircuitError("need at least one input")
        for j, (a, b) in enumerate(self.gates):
            _check_src(a, self.n_inputs, j, len(self.gates))
            _check_src(b, self.n_inputs, j, len(self.gates))
        if len(self.outputs) != self.n_inputs:
            raise CircuitError(
                f"{len(self.outputs)} outputs for {self.n_inputs} inputs; must match"
            )
        for src in self.outputs:
            _check_src(src, self.n_inputs, None, len(self.gates))

    @property
    def n_gates(self) -> int:
        return len(self.gates)

    def eval(self, inputs: Sequence[Bit]) -> tuple[Bit, ...]:
        """Outputs under standard NAND semantics."""
        if len(inputs) != self.n_inputs:
            raise CircuitError(f"expected {self.n_inputs} input bits, got {len(inputs)}")
        values: list[Bit] = []

        def read(src: Src) -> Bit:
            kind, k = src
            return inputs[k] if kind == "in" else values[k]

        for a, b in self.gates:
            values.append(nand(read(a), read(b)))
        return tuple(read(s) for s in self.outputs)


@dataclass(frozen=True)
class GeneralCircuit:
    """Ingestion convenience: gates from {AND, OR, NOT, NAND}, NOT has fan-in 1."""

    n_inputs: int
    gates: tuple[tuple[str, tuple[Src, ...]], ...]
    outputs: tuple[Src, ...]

    def __post_init__(self):
        if self.n_inputs < 1:
            raise CircuitError("need at least one input")
        for j, (op, srcs) in enumerate(self.gates):
            if op not in GATE_OPS:
                raise CircuitError(f"unknown gate op {op!r}")
            arity = 1 if op == "NOT" else 2
            if len(srcs) != arity:
                raise CircuitError(f"{op} takes {arity} inputs, got {len(srcs)}")
            for src in srcs:
                _check_src(src, self.n_inputs, j, len(self.gates))
        if len(self.outputs) != self.n_inputs:
            raise CircuitError(
                f"{len(self.outputs)} outputs for {self.n_inputs} inputs; must match"
            )
        for src in self.outputs:
            _check_src(src, self.n_inputs, None, len(self.gates))

    def eval(self, inputs: Sequence[Bit]) -> tuple[Bit, ...]:
        if len(inputs) != self.n_inputs:
            raise CircuitError(f"expected {self.n_inputs} input bits, got {len(inputs)}")
        values: list[Bit] = []

        def read(src: Src) -> Bit:
            kind, k = src
            return inputs[k] if kind == "in" else values[k]

        for op, srcs in self.gates:
            vals = [read(s) for s in srcs]
            if op == "NAND":
                values.append(nand(vals[0], vals[1]))
            elif op == "AND":
                values.append(Bit(-nand(vals[0], vals[1])))
            elif op == "OR":
                out = Bit.TRUE if (vals[0] is Bit.TRUE or vals[1] is Bit.TRUE) else Bit.FALSE
                values.append(out)
            else:  # NOT
                values.append(Bit(-vals[0]))
        return tuple(read(s) for s in self.outputs)


class _NandBuilder:
    """Accumulates NAND gates while translating or augmenting a circuit."""

    def __init__(self, n_inputs: int, base_gates: Iterable[tuple[Src, Src]] = ()):
        self.n_inputs = n_inputs
        self.gates: list[tuple[Src, Src]] = list(base_gates)

    def nand(self, a: Src, b: Src) -> Src:
        self.gates.append((a, b))
        return ("g", len(self.gates) - 1)

    def not_(self, a: Src) -> Src:
        return self.nand(a, a)

    def and_(self, a: Src, b: Src) -> Src:
        return self.not_(self.nand(a, b))

    def xnor(self, a: Src, b: Src) -> Src:
        # 5 NAND gates: NOT(XOR) with the 4-gate XOR construction.
        t = self.nand(a, b)
        u = self.nand(a, t)
        v = self.nand(b, t)
        xor = self.nand(u, v)
        return self.nand(xor, xor)

    def const_true(self, anchor: Src) -> Src:
        # NAND(x, NOT x) is true regardless of x.
        return self.nand(anchor, self.not_(anchor))

    def and_tree(self, srcs: list[Src]) -> Src:
        # Balanced reduction keeps depth logarithmic; any shape would do.
        while len(srcs) > 1:
            nxt = []
            for i in range(0, len(srcs) - 1, 2):
                nxt.append(self.and_(srcs[i], srcs[i + 1]))
            if len(srcs) % 2:
                nxt.append(srcs[-1])
            srcs = nxt
        return srcs[0]


def lower_to_nand(circuit: GeneralCircuit) -> NandCircuit:
    """Rewrite a general circuit using only NAND gates, preserving eval."""
    builder = _NandBuilder(circuit.n_inputs)
    gate_src: list[Src] = []

    def resolve(src: Src) -> Src:
        kind, k = src
        return src if kind == "in" else gate_src[k]

    for op, srcs in circuit.gates:
        vals = [resolve(s) for s in srcs]
        if op == "NAND":
            gate_src.append(builder.nand(vals[0], vals[1]))
        elif op == "NOT":
            gate_src.append(builder.not_(vals[0]))
        elif op == "AND":
            gate_src.append(builder.and_(vals[0], vals[1]))
        else:  # OR: NAND of the negations
            gate_src.append(builder.nand(builder.not_(vals[0]), builder.not_(vals[1])))
    outputs = tuple(resolve(s) for s in circuit.outputs)
    return NandCircuit(circuit.n_inputs, tuple(builder.gates), outputs)


def augment_target(circuit: NandCircuit, s_star: str) -> NandCircuit:
    """Add one input/output pair: the new output is true exactly when the
    original outputs spell ``s_star``; the new input is ignored.

    The check is an AND tree over per-output XNORs against constant wires,
    all built from NAND gates, so the result stays polynomial in size.
    """
    target = bits_from_string(s_star)
    if len(target) != circuit.n_inputs:
        raise CircuitError(
            f"target has {len(target)} bits but circuit maps {circuit.n_inputs}"
        )
    n = circuit.n_inputs
    builder = _NandBuilder(n + 1, circuit.gates)  # old srcs stay valid: inputs 0..n-1
    anchor: Src = ("in", 0)
    true_wire = builder.const_true(anchor)
    false_wire = builder.not_(true_wire) if Bit.FALSE in target else None
    checks = []
    for out_src, want in zip(circuit.outputs, target):
        const = true_wire if want is Bit.TRUE else false_wire
        checks.append(builder.xnor(out_src, const))
    check = builder.and_tree(checks)
    outputs = tuple(circuit.outputs) + (check,)
    return NandCircuit(n + 1, tuple(builder.gates), outputs)


def ensure_gate_outputs(circuit: NandCircuit) -> NandCircuit:
    """Buffer any output wired straight to an input through two NANDs.

    The five-phase reduction copies each output *gate* back to the inputs;
    an output that is itself an input coordinate would make that copy read
    and write the same weight.  Double negation preserves eval.
    """
    builder = _NandBuilder(circuit.n_inputs, circuit.gates)
    outputs = []
    for src in circuit.outputs:
        if src[0] == "in":
            outputs.append(builder.not_(builder.not_(src)))
        else:
            outputs.append(src)
    return NandCircuit(circuit.n_inputs, tuple(builder.gates), tuple(outputs))


def cpath_oracle(
    circuit: NandCircuit, s_star: str, max_iters: int
) -> tuple[bool, int | None]:
    """Brute-force reachability: does iterating the circuit from the
    all-false string ever output ``s_star``?

    Returns (reachable, first 1-based iteration at which the output equals
    the target).  Only post-application outputs count; the starting string
    is not iteration 0.  The n-bit state space has 2^n strings, so
    ``max_iters = 2**n`` gives an exact answer; the loop exits early once
    the state revisits itself.
    """
    if max_iters < 1:
        raise CircuitError("max_iters must be >= 1")
    target = bits_from_string(s_star)
    if len(target) != circuit.n_inputs:
        raise CircuitError("target length mismatch")
    state = tuple([Bit.FALSE] * circuit.n_inputs)
    seen = {state}
    for iteration in range(1, max_iters + 1):
        state = circuit.eval(state)
        if state == target:
            return True, iteration
        if state in seen:
            return False, None
        seen.add(state)
    return False, None


# --- JSON wire format -------------------------------------------------------
#
# {"n": int, "gates": [...], "outputs": ["in:0", "g:3", ...], "kind": "nand"}
# nand gates:    ["in:0", "g:1"]
# general gates: ["AND", "in:0", "g:1"]  /  ["NOT", "in:0"]


def circuit_to_json(circuit: NandCircuit | GeneralCircuit) -> dict:
    if isinstance(circuit, NandCircuit):
        gates = [[src_format(a), src_format(b)] for a, b in circuit.gates]
        kind = "nand"
    else:
        gates = [[op, *[src_format(s) for s in srcs]] for op, srcs in circuit.gates]
        kind = "general"
    return {
        "n": circuit.n_inputs,
        "gates": gates,
        "outputs": [src_format(s) for s in circuit.outputs],
        "kind": kind,
    }


def circuit_from_json(obj: dict) -> NandCircuit | GeneralCircuit:
    try:
        kind = obj.get("kind", "nand")
        n = int(obj["n"])
        outputs = tuple(src_parse(s) for s in obj["outputs"])
        if kind == "nand":
            gates = tuple((src_parse(a), src_parse(b)) for a, b in obj["gates"])
            return NandCircuit(n, gates, outputs)
        if kind == "general":
            gates = tuple(
                (entry[0], tuple(src_parse(s) for s in entry[1:])) for entry in obj["gates"]
            )
            return GeneralCircuit(n, gates, outputs)
    except CircuitError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CircuitError(f"malformed circuit JSON: {exc}") from exc
    raise CircuitError(f"unknown circuit kind {obj.get('kind')!r}")


def load_circuit(path: str) -> NandCircuit | GeneralCircuit:
    with open(path, "r", encoding="utf-8") as fh:
        return circuit_from_json(json.load(fh))


def save_circuit(circuit: NandCircuit | GeneralCircuit, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(circuit_to_json(circuit), fh, indent=2)
        fh.write("\n")
