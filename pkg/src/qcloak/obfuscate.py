"""Output and structure obfuscation: terminal X-gate keys and RX-pair injection.

The key is an n-bit flip mask (qubit i = 1 means an X gate was appended to
wire i); decoding XORs measured outcome strings with the mask. RX pairs are
angle-cancelling rotations placed across block boundaries so that later
block-by-block resynthesis absorbs each half into a different block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind
from .distributions import Distribution
from .partition import Block, BlockPartition

THETA_MARGIN = 0.1


@dataclass(frozen=True)
class RxPair:
    """One cancelling rotation pair: RX(theta) ends the block with
    order_index `boundary` on `wire`; RX(-theta) starts the next block
    on that wire."""

    wire: int
    boundary: int
    theta: float


@dataclass(frozen=True)
class ObfuscationKey:
    flip_mask: str  # qubit 0 = rightmost character
    seed: int
    rx_record: tuple[RxPair, ...] = ()

    def __post_init__(self):
        if set(self.flip_mask) - {"0", "1"}:
            raise ValueError(f"flip_mask {self.flip_mask!r} is not a bitstring")

    @property
    def num_qubits(self) -> int:
        return len(self.flip_mask)

    def flips(self, qubit: int) -> bool:
        return self.flip_mask[-1 - qubit] == "1"

    def restricted(self, qubits: tuple[int, ...]) -> "ObfuscationKey":
        """Key over a subset of qubits, for decoding partial measurements."""
        mask = "".join(
            "1" if self.flips(q) else "0" for q in sorted(qubits, reverse=True)
        )
        return ObfuscationKey(mask, self.seed, self.rx_record)


def inject_x_end(c: Circuit, seed: int) -> tuple[Circuit, ObfuscationKey]:
    """Append an X gate to each qubit independently with probability 1/2."""
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, 2, size=c.num_qubits)
    mask = "".join("1" if draws[q] else "0" for q in reversed(range(c.num_qubits)))
    gates = list(c.gates)
    for q in range(c.num_qubits):
        if draws[q]:
            gates.append(Gate(GateKind.X, (q,)))
    key = ObfuscationKey(mask, seed)
    return Circuit(c.num_qubits, tuple(gates), c.measured_qubits), key


def _boundaries(p: BlockPartition) -> list[tuple[int, int, int]]:
    """(wire, earlier order_index, later order_index) for each block-boundary
    crossing of each wire. On any one wire, blocks appear in ascending
    order_index, so consecutive entries of that wire's block list are exactly
    its boundaries."""
    per_wire: dict[int, list[int]] = {}
    for b in p.blocks:
        for q in b.qubits:
            per_wire.setdefault(q, []).append(b.order_index)
    out = []
    for w in sorted(per_wire):
        orders = sorted(per_wire[w])
        for a, b in zip(orders, orders[1:]):
            out.append((w, a, b))
    return out


def inject_rx_pairs(
    c: Circuit, p: BlockPartition, seed: int, density: float = 1.0
) -> tuple[Circuit, tuple[RxPair, ...], BlockPartition]:
    """Insert RX(theta)/RX(-theta) across block boundaries.

    For each wire crossing from one block to the next, with probability
    `density`, RX(theta) is appended to the earlier block and RX(-theta) is
    prepended to the later block, theta ~ Uniform[0.1, 2*pi - 0.1]. Returns
    the new circuit, the injection record, and the partition with the pairs
    folded into their blocks. The partition is returned rather than recomputed
    because re-partitioning the new circuit would put both halves of a pair in
    the earlier block (still open when the second half is scanned), where they
    cancel instead of straddling the boundary.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    record: list[RxPair] = []
    prepend: dict[int, list[Gate]] = {}
    append: dict[int, list[Gate]] = {}
    for wire, earlier, later in _boundaries(p):
        if density < 1.0 and rng.random() >= density:
            continue
        theta = rng.uniform(THETA_MARGIN, 2 * np.pi - THETA_MARGIN)
        record.append(RxPair(wire, earlier, theta))
        append.setdefault(earlier, []).append(Gate(GateKind.RX, (wire,), theta))
        prepend.setdefault(later, []).append(Gate(GateKind.RX, (wire,), -theta))

    by_order = {b.order_index: b for b in p.blocks}
    sizes = {b.order_index: len(b.gates) for b in p.blocks}

    # Emit the flat circuit in original gate order, inserting each block's
    # prepends just before its first gate and its appends just after its
    # last. On any wire the two halves of a pair end up adjacent, so the
    # circuit unitary is unchanged exactly.
    gates: list[Gate] = []
    provenance: list[tuple[int, int]] = []
    emitted_count: dict[int, int] = {o: 0 for o in by_order}

    def emit(order: int, g: Gate):
        provenance.append((order, emitted_count[order]))
        emitted_count[order] += 1
        gates.append(g)

    for order, _pos in p.provenance:
        blk = by_order[order]
        k = emitted_count[order]
        if k == 0:
            for g in prepend.get(order, ()):
                emit(order, g)
            k = emitted_count[order]
        emit(order, blk.gates[k - len(prepend.get(order, ()))])
        if emitted_count[order] - len(prepend.get(order, ())) == sizes[order]:
            for g in append.get(order, ()):
                emit(order, g)

    new_blocks = tuple(
        Block(
            b.qubits,
            tuple(prepend.get(b.order_index, ()))
            + b.gates
            + tuple(append.get(b.order_index, ())),
            b.order_index,
        )
        for b in p.blocks
    )
    new_circuit = Circuit(c.num_qubits, tuple(gates), c.measured_qubits)
    new_partition = BlockPartition(
        c.num_qubits, new_blocks, tuple(provenance), c.measured_qubits
    )
    return new_circuit, tuple(record), new_partition


def decode(d: Distribution, k: ObfuscationKey) -> Distribution:
    """XOR every outcome string with the key's flip mask; weights unchanged."""
    if d.num_bits != k.num_qubits:
        raise ValueError(
            f"outcome length {d.num_bits} does not match key length {k.num_qubits}"
        )
    flipped = {}
    for s, v in d.outcomes.items():
        t = "".join("1" if a != b else "0" for a, b in zip(s, k.flip_mask))
        flipped[t] = v
    return Distribution(d.num_bits, flipped, d.kind)


def key_to_json(k: ObfuscationKey) -> str:
    payload = {
        "version": 1,
        "num_qubits": k.num_qubits,
        "flip_mask": k.flip_mask,
        "seed": k.seed,
        "rx_pairs": [
            {"wire": p.wire, "boundary": p.boundary, "theta": p.theta}
            for p in k.rx_record
        ],
    }
    return json.dumps(payload, indent=2)


def key_from_json(text: str) -> ObfuscationKey:
    payload = json.loads(text)
    try:
        if payload["version"] != 1:
            raise ValueError(f"unsupported key version {payload['version']!r}")
        pairs = tuple(
            RxPair(int(p["wire"]), int(p["boundary"]), float(p["theta"]))
            for p in payload["rx_pairs"]
        )
        key = ObfuscationKey(str(payload["flip_mask"]), int(payload["seed"]), pairs)
        if key.num_qubits != int(payload["num_qubits"]):
            raise ValueError("flip_mask length does not match num_qubits")
    except KeyError as exc:
        raise ValueError(f"key JSON missing field {exc.args[0]!r}") from exc
    return key
