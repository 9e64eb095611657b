import random
from fractions import Fraction as F

import pytest

from ogd_forge.circuits import Bit, NandCircuit, bits_to_string, cpath_oracle
from ogd_forge.compiler import (
    CompileError,
    CompiledProgram,
    apply_bias_transform,
    apply_eta_scaling,
    compile_cpath,
    compile_cpath_drd,
    compile_cpath_regularized,
    compile_cpath_relu,
    prepare_circuit,
)
from ogd_forge.engine import (
    HingeSvm,
    decide_first_coordinate_positive,
    decide_fixed_point,
    run_passes,
)
from ogd_forge.verify import random_nand_circuit, random_target

I0 = ("in", 0)
FLIP = NandCircuit(1, ((I0, I0),), (("g", 0),))
FLIP2 = NandCircuit(1, ((I0, I0), (("g", 0), ("g", 0))), (("g", 1),))


def decide(program, max_passes=None, **kw):
    return decide_first_coordinate_positive(
        program.sequence,
        program.model,
        max_passes or program.default_max_passes(),
        program.d,
        initial=program.initial_weights,
        initial_v=program.initial_v,
        **kw,
    )


def test_layout_and_dimension():
    program = compile_cpath(FLIP, "1")
    aug = prepare_circuit(FLIP, "1")
    assert program.n_prime == aug.n_inputs == 2
    assert program.d == aug.n_inputs + aug.n_gates + 3
    assert program.layout.flag == 0
    assert program.layout.inputs[0] == 3


def test_phases_partition_sequence():
    program = compile_cpath(FLIP, "1")
    spans = program.phase_spans
    assert len(spans) == 5
    assert spans[0][0] == 0 and spans[-1][1] == len(program.sequence)
    for (a, b), (c, d) in zip(spans, spans[1:]):
        assert b == c
    for ex in program.sequence:
        assert ex.phase in (1, 2, 3, 4, 5) and ex.gadget


def test_phase2_follows_topological_order():
    program = compile_cpath(FLIP2, "1")
    gate_writes = [
        ex.gadget
        for ex in program.sequence
        if ex.phase == 2 and ex.gadget.startswith("destructive_nand")
    ]
    targets = [int(g.split(",")[-1].rstrip(")")) for g in gate_writes]
    assert targets == sorted(targets)


def test_decision_matches_oracle_basic():
    assert decide(compile_cpath(FLIP, "1")).hit_pass == 1
    assert decide(compile_cpath(FLIP, "0")).hit_pass == 2
    assert decide(compile_cpath(FLIP2, "1"), max_passes=3).answer is False


def test_pass_end_state_encodes_circuit_iterate():
    program = compile_cpath(FLIP2, "0")  # target hit on pass 1
    aug = prepare_circuit(FLIP2, "0")
    layout = program.layout
    states = []
    run_passes(
        program.sequence,
        program.model,
        3,
        program.d,
        pass_end=lambda p, w, v: states.append(list(w)),
    )
    circ = tuple([Bit.FALSE] * aug.n_inputs)
    for w in states:
        circ = aug.eval(circ)
        for idx, coord in enumerate(layout.inputs):
            assert w[coord] == (1 if circ[idx] is Bit.TRUE else -1)
        for coord in layout.gates:
            assert w[coord] == 0
        assert w[layout.scratch_a] == 0 and w[layout.scratch_b] == 0


def test_decide_fixed_point_on_stabilizing_instance():
    # double negation stabilizes at all-false after the first pass writes it back
    program = compile_cpath(FLIP2, "1")
    result = decide_fixed_point(
        program.sequence, program.model, 5, program.d,
        initial=program.initial_weights, initial_v=program.initial_v,
    )
    assert result.answer is True and result.hit_pass == 2


def test_decide_fixed_point_flip_never_repeats_consecutively():
    # the one-bit flipper alternates its input every pass and re-raises the
    # flag on every later target hit, so no pass ends where it began
    program = compile_cpath(FLIP, "1")
    result = decide_fixed_point(
        program.sequence, program.model, 8, program.d,
        initial=program.initial_weights, initial_v=program.initial_v,
    )
    assert result.answer is False


# --- bias transform ---------------------------------------------------------


def test_bias_transform_length_and_model():
    base = compile_cpath(FLIP, "1")
    biased = apply_bias_transform(base)
    assert len(biased.sequence) == 3 * len(base.sequence)
    assert biased.d == base.d + 2
    assert biased.model.bias_dims == (base.d, base.d + 1)
    b1, b2 = biased.model.bias_dims
    for ex in biased.sequence:
        assert ex.x.get(b1) == -1 and ex.x.get(b2) == -1


def test_bias_transform_preserves_decision():
    for circuit, target in ((FLIP, "1"), (FLIP, "0"), (FLIP2, "1"), (FLIP2, "0")):
        base = compile_cpath(circuit, target)
        biased = apply_bias_transform(base)
        a = decide(base)
        b = decide(biased)
        assert (a.answer, a.hit_pass) == (b.answer, b.hit_pass)


def test_bias_weights_zero_before_every_base_example():
    base = compile_cpath(FLIP, "0")
    biased = apply_bias_transform(base)
    b1, b2 = biased.model.bias_dims
    seen = []

    def on_step(pass_no, idx, ex, w, v):
        # indices 3, 6, 9, ... follow a complete correction pair, i.e. the
        # state immediately before the next base example
        if idx % 3 == 0:
            seen.append((w[b1], w[b2]))

    decide(biased, on_step=on_step)
    assert seen and all(pair == (0, 0) for pair in seen)


def test_bias_transform_rejects_non_plain():
    with pytest.raises(CompileError):
        apply_bias_transform(apply_bias_transform(compile_cpath(FLIP, "1")))
    with pytest.raises(CompileError):
        apply_bias_transform(compile_cpath_regularized(FLIP, "1", F(4, 5)))


# --- learning-rate scaling ---------------------------------------------------


def test_eta_scaling_identity():
    base = compile_cpath(FLIP, "1")
    scaled = apply_eta_scaling(base, F(1))
    assert scaled.model == HingeSvm(eta=F(1))
    assert [ex.x for ex in scaled.sequence] == [ex.x for ex in base.sequence]


def test_eta_scaling_trajectory_exactly_scaled():
    base = compile_cpath(FLIP, "0")
    for r in (F(1, 2), F(2), F(3)):
        scaled = apply_eta_scaling(base, r)
        assert scaled.model.eta == r * r
        base_states, scaled_states = [], []
        base_fired, scaled_fired = [], []

        def collect(states, fired):
            def on_step(pass_no, idx, ex, w, v):
                states.append(tuple(w))

            return on_step

        run_passes(base.sequence, base.model, 2, base.d,
                   on_step=lambda p, i, e, w, v: base_states.append(tuple(w)))
        run_passes(scaled.sequence, scaled.model, 2, scaled.d,
                   on_step=lambda p, i, e, w, v: scaled_states.append(tuple(w)))
        assert len(base_states) == len(scaled_states)
        for bw, sw in zip(base_states, scaled_states):
            assert sw == tuple(r * x for x in bw)


def test_eta_scaling_preserves_decision():
    base = compile_cpath(FLIP, "0")
    expected = decide(base)
    for r in (F(1, 2), F(2), F(3)):
        got = decide(apply_eta_scaling(base, r))
        assert (got.answer, got.hit_pass, got.hit_step) == (
            expected.answer, expected.hit_pass, expected.hit_step,
        )


def test_eta_scaling_validation():
    base = compile_cpath(FLIP, "1")
    with pytest.raises(CompileError):
        apply_eta_scaling(base, F(0))
    with pytest.raises(CompileError):
        apply_eta_scaling(apply_bias_transform(base), F(2))


# --- regularized compilation ---------------------------------------------------


def test_regularized_matches_oracle():
    for circuit, target in ((FLIP, "1"), (FLIP, "0"), (FLIP2, "1"), (FLIP2, "0")):
        program = compile_cpath_regularized(circuit, target, F(4, 5))
        expected = cpath_oracle(circuit, target, 2**circuit.n_inputs)
        got = decide(program)
        assert (got.answer, got.hit_pass) == expected


def test_regularized_sign_pattern_matches_plain():
    alpha = F(4, 5)
    for circuit, target in ((FLIP, "0"), (FLIP2, "1")):
        plain = compile_cpath(circuit, target)
        reg = compile_cpath_regularized(circuit, target, alpha)
        plain_ends, reg_ends = [], []
        run_passes(plain.sequence, plain.model, 3, plain.d,
                   pass_end=lambda p, w, v: plain_ends.append(tuple(w)))
        run_passes(reg.sequence, reg.model, 3, reg.d,
                   pass_end=lambda p, w, v: reg_ends.append(tuple(w)))
        for pw, rw in zip(plain_ends, reg_ends):
            for idx, coord in enumerate(plain.layout.inputs):
                rv = rw[reg.layout.inputs[idx]]
                assert (pw[coord] > 0) == (rv > 0) and (pw[coord] < 0) == (rv < 0)
            assert (pw[plain.layout.flag] > 0) == (rw[reg.layout.flag] > 0)


def test_regularized_ledger_matches_simulation():
    alpha = F(4, 5)
    program = compile_cpath_regularized(FLIP, "0", alpha)
    checkpoints = {cp.step: cp for cp in program.magnitude_checkpoints}
    states = []
    run_passes(program.sequence, program.model, 1, program.d,
               on_step=lambda p, i, e, w, v: states.append(tuple(w)))
    for step, cp in checkpoints.items():
        w = states[step - 1]
        tracked = set(cp.set_coords) | set(cp.conditional)
        for coord, eps in cp.set_coords.items():
            assert abs(w[coord]) == eps, (step, coord)
        for coord, eps in cp.conditional.items():
            assert w[coord] == 0 or abs(w[coord]) == eps, (step, coord)
        for coord in range(program.d):
            if coord not in tracked:
                assert w[coord] == 0, (step, coord)


def test_regularized_alpha_validation():
    with pytest.raises(ValueError):
        compile_cpath_regularized(FLIP, "1", F(7, 10))


# --- ReLU-family compilation ---------------------------------------------------


def test_relu_matches_oracle():
    for circuit, target in ((FLIP, "1"), (FLIP, "0"), (FLIP2, "1")):
        program = compile_cpath_relu(circuit, target)
        expected = cpath_oracle(circuit, target, 2**circuit.n_inputs)
        assert (decide(program).answer, decide(program).hit_pass) == expected


def test_drd_matches_oracle():
    for circuit, target in ((FLIP, "1"), (FLIP, "0"), (FLIP2, "1")):
        program = compile_cpath_drd(circuit, target)
        expected = cpath_oracle(circuit, target, 2**circuit.n_inputs)
        got = decide(program)
        assert (got.answer, got.hit_pass) == expected


def _gadget_boundaries(program):
    bounds = []
    for idx in range(1, len(program.sequence)):
        if program.sequence[idx].gadget != program.sequence[idx - 1].gadget:
            bounds.append(idx)
    bounds.append(len(program.sequence))
    return set(bounds)


def test_relu_helper_is_one_between_gadgets():
    program = compile_cpath_relu(FLIP, "0")
    helper = program.layout.one_helper
    bounds = _gadget_boundaries(program)
    checks = []
    run_passes(
        program.sequence, program.model, 2, program.d,
        initial=program.initial_weights,
        on_step=lambda p, i, e, w, v: checks.append(w[helper] == 1) if i in bounds else None,
    )
    assert checks and all(checks)


def test_drd_helper_and_v_are_one_between_gadgets():
    program = compile_cpath_drd(FLIP, "0")
    helper = program.layout.one_helper
    bounds = _gadget_boundaries(program)
    checks = []
    run_passes(
        program.sequence, program.model, 2, program.d,
        initial=program.initial_weights, initial_v=program.initial_v,
        on_step=lambda p, i, e, w, v: checks.append(w[helper] == 1 and v == 1)
        if i in bounds else None,
    )
    assert checks and all(checks)


# --- program files -----------------------------------------------------------


def test_program_roundtrip(tmp_path):
    for program in (
        compile_cpath(FLIP, "1"),
        apply_bias_transform(compile_cpath(FLIP, "1")),
        compile_cpath_regularized(FLIP, "1", F(4, 5)),
        compile_cpath_drd(FLIP, "1"),
    ):
        path = tmp_path / "prog.jsonl"
        program.save(str(path))
        loaded = CompiledProgram.load(str(path))
        assert loaded.sequence == program.sequence
        assert loaded.model == program.model
        assert loaded.layout == program.layout
        assert loaded.phase_spans == program.phase_spans
        assert loaded.initial_weights == program.initial_weights
        assert loaded.initial_v == program.initial_v
        a, b = decide(program), decide(loaded)
        assert a == b


def test_random_instances_all_families_quick():
    rng = random.Random(42)
    for _ in range(3):
        n = rng.randint(1, 2)
        circuit = random_nand_circuit(rng, n, rng.randint(1, 4))
        target = random_target(rng, n)
        expected = cpath_oracle(circuit, target, 2**n)
        for build in (
            compile_cpath,
            compile_cpath_relu,
            compile_cpath_drd,
            lambda c, s: compile_cpath_regularized(c, s, F(5, 6)),
        ):
            program = build(circuit, target)
            got = decide(program)
            assert (got.answer, got.hit_pass) == expected
