import itertools
import json
import random

import pytest

from ogd_forge.circuits import (
    Bit,
    CircuitError,
    GeneralCircuit,
    NandCircuit,
    augment_target,
    bits_from_string,
    bits_to_string,
    circuit_from_json,
    circuit_to_json,
    cpath_oracle,
    ensure_gate_outputs,
    lower_to_nand,
    nand,
)

T, Fb = Bit.TRUE, Bit.FALSE
I0 = ("in", 0)
I1 = ("in", 1)

FLIP = NandCircuit(1, ((I0, I0),), (("g", 0),))
FLIP2 = NandCircuit(1, ((I0, I0), (("g", 0), ("g", 0))), (("g", 1),))


def all_inputs(n):
    return itertools.product((Fb, T), repeat=n)


def random_general(rng, n, m):
    gates = []
    for j in range(m):
        pool = [("in", k) for k in range(n)] + [("g", k) for k in range(j)]
        op = rng.choice(("AND", "OR", "NOT", "NAND"))
        srcs = (rng.choice(pool),) if op == "NOT" else (rng.choice(pool), rng.choice(pool))
        gates.append((op, srcs))
    pool = [("in", k) for k in range(n)] + [("g", k) for k in range(m)]
    outputs = tuple(rng.choice(pool) for _ in range(n))
    return GeneralCircuit(n, tuple(gates), outputs)


def test_nand_truth_table():
    assert nand(T, T) is Fb
    assert nand(Fb, Fb) is T
    assert nand(T, Fb) is T
    assert nand(Fb, T) is T


def test_eval_three_gate_chain():
    # NOT(NOT(NOT(x))) == NOT(x), checked against hand truth table
    c = NandCircuit(1, ((I0, I0), (("g", 0), ("g", 0)), (("g", 1), ("g", 1))), (("g", 2),))
    assert c.eval((Fb,)) == (T,)
    assert c.eval((T,)) == (Fb,)


def test_lower_not():
    g = GeneralCircuit(1, (("NOT", (I0,)),), (("g", 0),))
    c = lower_to_nand(g)
    assert c.gates == ((I0, I0),)
    assert c.eval((Fb,)) == (T,)


def test_lower_and():
    g = GeneralCircuit(2, (("AND", (I0, I1)),), (("g", 0), ("g", 0)))
    c = lower_to_nand(g)
    assert c.eval((T, T)) == (T, T)
    for bits in all_inputs(2):
        assert c.eval(bits) == g.eval(bits)


def test_lower_preserves_eval_exhaustive():
    rng = random.Random(11)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            g = random_general(rng, n, rng.randint(1, 8))
            c = lower_to_nand(g)
            assert len(c.gates) <= 3 * len(g.gates)
            for bits in all_inputs(n):
                assert c.eval(bits) == g.eval(bits)


def test_lower_preserves_eval_wide():
    rng = random.Random(12)
    g = random_general(rng, 10, 12)
    c = lower_to_nand(g)
    for bits in all_inputs(10):
        assert c.eval(bits) == g.eval(bits)


def test_augment_flip_target_one():
    aug = augment_target(FLIP, "1")
    assert aug.n_inputs == 2 and len(aug.outputs) == 2
    out = aug.eval((Fb, Fb))
    assert out[0] is T and out[1] is T  # NOT(F)=T matches the target
    out = aug.eval((Fb, T))
    assert out[:1] == (T,) and out[1] is T  # extra input ignored


def test_augment_flip_target_zero():
    aug = augment_target(FLIP, "0")
    out = aug.eval((Fb, Fb))
    assert out[0] is T and out[1] is Fb


def test_augment_check_bit_property():
    rng = random.Random(7)
    for n in (1, 2, 3):
        for _ in range(6):
            c = lower_to_nand(random_general(rng, n, rng.randint(1, 6)))
            target = "".join(rng.choice("01") for _ in range(n))
            aug = augment_target(c, target)
            assert aug.n_inputs == n + 1
            for bits in all_inputs(n + 1):
                out = aug.eval(bits)
                base = c.eval(bits[:n])
                assert out[:n] == base  # original outputs preserved
                expect = bits_to_string(base) == target
                assert (out[n] is T) == expect


def test_augment_check_bit_wide():
    rng = random.Random(8)
    c = lower_to_nand(random_general(rng, 8, 6))
    target = "10110010"
    aug = augment_target(c, target)
    for bits in all_inputs(8):
        out = aug.eval(tuple(bits) + (Fb,))
        assert (out[8] is T) == (bits_to_string(out[:8]) == target)


def test_augment_length_mismatch():
    with pytest.raises(CircuitError):
        augment_target(FLIP, "10")


def test_ensure_gate_outputs():
    ident = NandCircuit(2, (), (I0, I1))
    fixed = ensure_gate_outputs(ident)
    assert all(src[0] == "g" for src in fixed.outputs)
    for bits in all_inputs(2):
        assert fixed.eval(bits) == ident.eval(bits)


def test_oracle_flip():
    assert cpath_oracle(FLIP, "1", 2) == (True, 1)
    assert cpath_oracle(FLIP, "0", 2) == (True, 2)


def test_oracle_identity_unreachable():
    assert cpath_oracle(FLIP2, "1", 2) == (False, None)


def test_oracle_exact_at_state_space_bound():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(1, 4)
        g = lower_to_nand(random_general(rng, n, rng.randint(1, 10)))
        target = "".join(rng.choice("01") for _ in range(n))
        exact = cpath_oracle(g, target, 2**n)
        longer = cpath_oracle(g, target, 2 ** (n + 3))
        assert exact == longer


def test_oracle_validates():
    with pytest.raises(CircuitError):
        cpath_oracle(FLIP, "1", 0)
    with pytest.raises(CircuitError):
        cpath_oracle(FLIP, "11", 4)


def test_topological_order_enforced():
    with pytest.raises(CircuitError):
        NandCircuit(1, ((("g", 1), I0), (I0, I0)), (("g", 0),))


def test_output_count_enforced():
    with pytest.raises(CircuitError):
        NandCircuit(2, ((I0, I1),), (("g", 0),))


def test_json_roundtrip():
    for circuit in (FLIP, FLIP2):
        obj = circuit_to_json(circuit)
        assert obj["kind"] == "nand"
        assert circuit_from_json(json.loads(json.dumps(obj))) == circuit
    g = GeneralCircuit(2, (("AND", (I0, I1)), ("NOT", (("g", 0),))), (("g", 1), ("g", 0)))
    assert circuit_from_json(circuit_to_json(g)) == g


def test_json_validation():
    with pytest.raises(CircuitError):
        circuit_from_json({"n": 1, "gates": [["in:0", "in:0"]], "outputs": ["g:5"], "kind": "nand"})
    with pytest.raises(CircuitError):
        circuit_from_json({"n": 1, "gates": [], "outputs": ["in:0"], "kind": "mystery"})


def test_bits_string_helpers():
    assert bits_from_string("10") == (T, Fb)
    assert bits_to_string((T, Fb, T)) == "101"
    with pytest.raises(CircuitError):
        bits_from_string("10x")
