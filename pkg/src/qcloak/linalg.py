"""Gate unitaries and dense circuit unitary computation.

Everything is little-endian: local qubit j of a gate is operand j, and
operand 0 is the least significant bit of the matrix's basis index.
"""

import numpy as np

from .circuit import Circuit, Gate, GateKind

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SX_MATRIX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])

# control = operand 0 = local bit 0, target = operand 1 = local bit 1
CX_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)

UNITARY_QUBIT_CAP = 12


def rx_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rz_matrix(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]])


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def gate_unitary(g: Gate) -> np.ndarray:
    if g.kind is GateKind.X:
        return PAULI_X.copy()
    if g.kind is GateKind.SX:
        return SX_MATRIX.copy()
    if g.kind is GateKind.RZ:
        return rz_matrix(g.angle)
    if g.kind is GateKind.RX:
        return rx_matrix(g.angle)
    return CX_MATRIX.copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; kron(a, b) applies b to the lower-order qubits."""
    return np.kron(a, b)


def _embedding_permutation(qubits: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Map global basis index -> index in the kron(I_rest, gate) ordering.

    In the kron ordering, gate operand j occupies bit j and the remaining
    qubits occupy bits len(qubits).. in ascending global order.
    """
    rest = [q for q in range(num_qubits) if q not in qubits]
    layout = list(qubits) + rest
    idx = np.arange(2**num_qubits)
    out = np.zeros_like(idx)
    for pos, q in enumerate(layout):
        out |= ((idx >> q) & 1) << pos
    return out


def embed_unitary(mat: np.ndarray, qubits: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Embed a k-qubit unitary on the given qubits into the n-qubit space."""
    k = len(qubits)
    full = np.kron(np.eye(2 ** (num_qubits - k), dtype=complex), mat)
    sigma = _embedding_permutation(tuple(qubits), num_qubits)
    return full[np.ix_(sigma, sigma)]


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Product of embedded gate unitaries, later gates on the left.

    Gates are applied to the identity column by column via tensor
    contraction on the row index, avoiding full-dimension matmuls."""
    if c.num_qubits > UNITARY_QUBIT_CAP:
        raise ValueError(
            f"circuit_unitary capped at {UNITARY_QUBIT_CAP} qubits, got {c.num_qubits}"
        )
    n = c.num_qubits
    dim = 2**n
    # row axis for qubit q is n-1-q; trailing axis indexes columns
    u = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        if g.kind is GateKind.CX:
            control_axis = n - 1 - g.qubits[0]
            target_axis = n - 1 - g.qubits[1]
            idx: list = [slice(None)] * (n + 1)
            idx[control_axis] = 1
            view = u[tuple(idx)]
            flip_axis = target_axis - 1 if target_axis > control_axis else target_axis
            u[tuple(idx)] = np.flip(view, axis=flip_axis)
        else:
            axis = n - 1 - g.qubits[0]
            u = np.moveaxis(
                np.tensordot(gate_unitary(g), u, axes=([1], [axis])), 0, axis
            )
    return u.reshape(dim, dim)


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    if u.shape[0] != u.shape[1]:
        return False
    return np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff a = e^{i phi} b for some phase, in max-abs-entry norm."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) == 0:
        return bool(np.max(np.abs(a)) <= tol)
    phi = np.angle(a[idx]) - np.angle(b[idx])
    return bool(np.max(np.abs(a - np.exp(1j * phi) * b)) <= tol)
