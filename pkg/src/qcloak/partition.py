"""Two-qubit block formation, block unitaries, and block reassembly.

Blocks are built in one forward pass: a one-qubit gate joins the open block
holding its qubit or opens a new block; a two-qubit gate joins the open block
holding both its qubits, otherwise it completes every open block touching
either qubit and opens a fresh block. A completed block never reopens, so on
any single wire the blocks appear in creation order.
"""

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate
from .linalg import circuit_unitary, gate_unitary


@dataclass(frozen=True)
class Block:
    """Contiguous sub-circuit on one or two wires; gates keep global indices."""

    qubits: tuple[int, ...]
    gates: tuple[Gate, ...]
    order_index: int

    def __post_init__(self):
        if not 1 <= len(self.qubits) <= 2:
            raise ValueError("block must span one or two qubits")
        if tuple(sorted(self.qubits)) != self.qubits:
            raise ValueError("block qubits must be sorted")
        for g in self.gates:
            if not set(g.qubits) <= set(self.qubits):
                raise ValueError(f"gate {g} outside block wires {self.qubits}")

    def local(self, q: int) -> int:
        """Local wire index of global qubit q (wire order = ascending qubit)."""
        return self.qubits.index(q)


@dataclass(frozen=True)
class BlockPartition:
    num_qubits: int
    blocks: tuple[Block, ...]
    # original gate index -> (block order_index, position within block)
    provenance: tuple[tuple[int, int], ...]
    measured_qubits: tuple[int, ...]


def form_blocks(c: Circuit) -> BlockPartition:
    """Single-pass O(g) partition of the gate list into two-qubit blocks."""
    builders: list[dict] = []
    open_by_qubit: dict[int, dict] = {}
    provenance: list[tuple[int, int]] = []

    def open_block(qubits: tuple[int, ...]) -> dict:
        b = {"qubits": set(qubits), "gates": [], "order": len(builders)}
        builders.append(b)
        for q in qubits:
            open_by_qubit[q] = b
        return b

    def complete(b: dict):
        for q in list(b["qubits"]):
            if open_by_qubit.get(q) is b:
                del open_by_qubit[q]

    for i, gate in enumerate(c.gates):
        if len(gate.qubits) == 1:
            q = gate.qubits[0]
            b = open_by_qubit.get(q)
            if b is None:
                b = open_block((q,))
        else:
            qa, qb = gate.qubits
            ba, bb = open_by_qubit.get(qa), open_by_qubit.get(qb)
            if ba is not None and ba is bb:
                b = ba
            else:
                if ba is not None:
                    complete(ba)
                if bb is not None and bb is not ba:
                    complete(bb)
                b = open_block((qa, qb))
        provenance.append((b["order"], len(b["gates"])))
        b["gates"].append(gate)

    blocks = tuple(
        Block(tuple(sorted(b["qubits"])), tuple(b["gates"]), b["order"]) for b in builders
    )
    return BlockPartition(c.num_qubits, blocks, tuple(provenance), c.measured_qubits)


def block_unitary(b: Block) -> np.ndarray:
    """Unitary of the block over its local wires (2x2 or 4x4, little-endian)."""
    if len(b.qubits) == 1:
        u = np.eye(2, dtype=complex)
        for g in b.gates:
            u = gate_unitary(g) @ u
        return u
    local_gates = [
        Gate(g.kind, tuple(b.local(q) for q in g.qubits), g.angle) for g in b.gates
    ]
    return circuit_unitary(Circuit(2, tuple(local_gates)))


def to_local_circuit(b: Block) -> Circuit:
    """The block's gates remapped onto local wires."""
    local_gates = [
        Gate(g.kind, tuple(b.local(q) for q in g.qubits), g.angle) for g in b.gates
    ]
    return Circuit(len(b.qubits), tuple(local_gates))


def reassemble(p: BlockPartition, replacements: dict[int, Circuit]) -> Circuit:
    """Substitute block contents and emit a full circuit.

    replacements maps a block's order_index to a fragment over that block's
    local wires. A block's fragment is spread over the block's original gate
    slots, so identity replacements reproduce the original circuit exactly
    and per-wire gate order across blocks is always preserved.
    """
    slots: dict[int, list[int]] = {}
    for gate_idx, (order, _pos) in enumerate(p.provenance):
        slots.setdefault(order, []).append(gate_idx)

    emitted: list[list[Gate]] = [[] for _ in range(len(p.provenance))]
    appended: list[Gate] = []
    for b in p.blocks:
        frag = replacements.get(b.order_index)
        if frag is None:
            gates = list(b.gates)
        else:
            if frag.num_qubits > len(b.qubits):
                raise ValueError(
                    f"fragment spans {frag.num_qubits} wires, block has {len(b.qubits)}"
                )
            gates = [
                Gate(g.kind, tuple(b.qubits[w] for w in g.qubits), g.angle)
                for g in frag.gates
            ]
        block_slots = slots.get(b.order_index, [])
        if not block_slots:
            appended.extend(gates)
            continue
        m, ell = len(gates), len(block_slots)
        for k, slot in enumerate(block_slots):
            emitted[slot] = gates[(k * m) // ell : ((k + 1) * m) // ell]

    out: list[Gate] = []
    for chunk in emitted:
        out.extend(chunk)
    out.extend(appended)
    return Circuit(p.num_qubits, tuple(out), p.measured_qubits)
