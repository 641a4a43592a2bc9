import pytest
from hypothesis import given

from qcloak.circuit import Circuit, Gate, GateKind, cx, gate_counts, rx, rz, sx, x
from strategies import circuits


def test_gate_helpers():
    assert x(2) == Gate(GateKind.X, (2,))
    assert sx(0) == Gate(GateKind.SX, (0,))
    assert rz(1.5, 1) == Gate(GateKind.RZ, (1,), 1.5)
    assert rx(-0.5, 3) == Gate(GateKind.RX, (3,), -0.5)
    assert cx(0, 1) == Gate(GateKind.CX, (0, 1))


def test_gate_arity_enforced():
    with pytest.raises(ValueError):
        Gate(GateKind.X, (0, 1))
    with pytest.raises(ValueError):
        Gate(GateKind.CX, (0,))


def test_gate_duplicate_operands_rejected():
    with pytest.raises(ValueError):
        Gate(GateKind.CX, (1, 1))


def test_gate_angle_rules():
    with pytest.raises(ValueError):
        Gate(GateKind.RZ, (0,))
    with pytest.raises(ValueError):
        Gate(GateKind.RZ, (0,), float("nan"))
    with pytest.raises(ValueError):
        Gate(GateKind.X, (0,), 1.0)


def test_angles_stored_verbatim():
    assert rz(7.25, 0).angle == 7.25
    assert rx(-9.0, 0).angle == -9.0


def test_circuit_validation():
    with pytest.raises(ValueError):
        Circuit(0)
    with pytest.raises(ValueError):
        Circuit(2, (cx(0, 2),))
    with pytest.raises(ValueError):
        Circuit(2, (), (0, 0))
    with pytest.raises(ValueError):
        Circuit(2, (), (2,))


def test_gate_counts_groups_sx_and_x():
    c = Circuit(3, (x(0), sx(1), sx(2), rz(1.0, 0), rx(2.0, 1), cx(0, 1), cx(1, 2)))
    counts = gate_counts(c)
    assert (counts.cx, counts.sx_plus_x, counts.rz, counts.rx) == (2, 3, 1, 1)
    assert counts.total == 7


@given(circuits(max_qubits=5, max_gates=20))
def test_gate_counts_total_matches_length(c):
    assert gate_counts(c).total == c.num_gates
