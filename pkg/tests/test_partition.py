import numpy as np
import pytest
from hypothesis import given, settings

from qcloak.circuit import Circuit, cx, rx, rz, sx, x
from qcloak.linalg import circuit_unitary, equal_up_to_global_phase
from qcloak.partition import (
    Block,
    block_unitary,
    form_blocks,
    reassemble,
    to_local_circuit,
)
from strategies import circuits


def test_block_validation():
    with pytest.raises(ValueError):
        Block((1, 0), (), 0)
    with pytest.raises(ValueError):
        Block((0, 1, 2), (), 0)
    with pytest.raises(ValueError):
        Block((0, 1), (x(2),), 0)


def test_form_blocks_ghz_chain():
    # a leading 1q gate opens its own block; the next cx completes it
    c = Circuit(3, (sx(0), cx(0, 1), cx(1, 2), rz(0.4, 2)))
    p = form_blocks(c)
    assert [b.qubits for b in p.blocks] == [(0,), (0, 1), (1, 2)]
    assert [b.gates for b in p.blocks] == [
        (sx(0),),
        (cx(0, 1),),
        (cx(1, 2), rz(0.4, 2)),
    ]
    assert p.provenance == ((0, 0), (1, 0), (2, 0), (2, 1))


def test_shared_wire_completes_block():
    c = Circuit(3, (cx(0, 1), x(1), cx(1, 2)))
    p = form_blocks(c)
    assert [b.qubits for b in p.blocks] == [(0, 1), (1, 2)]
    assert p.blocks[0].gates == (cx(0, 1), x(1))
    assert p.blocks[1].gates == (cx(1, 2),)


def test_one_qubit_gate_joins_open_two_qubit_block():
    c = Circuit(2, (x(0), cx(0, 1), x(1), cx(0, 1)))
    p = form_blocks(c)
    # x(0) opens a 1q block, completed by the cx; x(1) joins the open cx block
    assert [b.qubits for b in p.blocks] == [(0,), (0, 1)]
    assert p.blocks[1].gates == (cx(0, 1), x(1), cx(0, 1))


def test_two_qubit_gate_completes_overlapping_blocks():
    c = Circuit(3, (cx(0, 1), cx(1, 2), cx(0, 1)))
    p = form_blocks(c)
    assert [b.qubits for b in p.blocks] == [(0, 1), (1, 2), (0, 1)]
    # wire 1 sees its blocks in ascending order_index
    orders = [b.order_index for b in p.blocks if 1 in b.qubits]
    assert orders == sorted(orders)


def test_lone_1q_gates_form_single_wire_block():
    p = form_blocks(Circuit(2, (rz(0.1, 0), sx(0))))
    assert [b.qubits for b in p.blocks] == [(0,)]
    assert block_unitary(p.blocks[0]).shape == (2, 2)


def test_block_unitary_matches_local_circuit():
    c = Circuit(3, (cx(2, 1), rx(0.7, 1), sx(2)))
    p = form_blocks(c)
    b = p.blocks[0]
    assert b.qubits == (1, 2)
    # local wire 0 = qubit 1, local wire 1 = qubit 2
    assert to_local_circuit(b) == Circuit(2, (cx(1, 0), rx(0.7, 0), sx(1)))
    assert np.allclose(block_unitary(b), circuit_unitary(to_local_circuit(b)))


def test_reassemble_identity_reproduces_original():
    c = Circuit(3, (sx(0), cx(0, 1), rz(0.2, 1), cx(1, 2), x(2)))
    p = form_blocks(c)
    out = reassemble(p, {b.order_index: to_local_circuit(b) for b in p.blocks})
    assert out == c


def test_reassemble_substitutes_fragment():
    c = Circuit(2, (cx(0, 1),))
    p = form_blocks(c)
    frag = Circuit(2, (rz(1.0, 0), cx(1, 0), rz(-1.0, 0)))
    out = reassemble(p, {0: frag})
    assert out.gates == (rz(1.0, 0), cx(1, 1 - 1), rz(-1.0, 0))
    assert out.num_qubits == 2 and out.measured_qubits == c.measured_qubits


@given(circuits(max_qubits=5, max_gates=25))
def test_partition_invariants(c):
    p = form_blocks(c)
    assert sum(len(b.gates) for b in p.blocks) == c.num_gates
    assert len(p.provenance) == c.num_gates
    for i, (order, pos) in enumerate(p.provenance):
        assert p.blocks[order].gates[pos] == c.gates[i]
    per_wire: dict[int, list[int]] = {}
    for b in p.blocks:
        for q in b.qubits:
            per_wire.setdefault(q, []).append(b.order_index)
    for orders in per_wire.values():
        assert orders == sorted(orders)


@given(circuits(max_qubits=5, max_gates=25))
def test_reassemble_identity_property(c):
    p = form_blocks(c)
    assert reassemble(p, {b.order_index: to_local_circuit(b) for b in p.blocks}) == c


@given(circuits(max_qubits=4, max_gates=16))
@settings(max_examples=50)
def test_equivalent_fragments_preserve_circuit_unitary(c):
    # replace each block by its gates plus a cancelling rotation pair
    p = form_blocks(c)
    reps = {}
    for b in p.blocks:
        local = to_local_circuit(b)
        extra = (rx(0.9, 0), rx(-0.9, 0))
        reps[b.order_index] = Circuit(local.num_qubits, local.gates + extra)
    out = reassemble(p, reps)
    assert equal_up_to_global_phase(circuit_unitary(out), circuit_unitary(c), 1e-9)
