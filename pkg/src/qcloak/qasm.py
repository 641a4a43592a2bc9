"""Parser and serializer for a QASM 2.0 subset.

Supported statements: optional `OPENQASM 2.0;` header, optional
`include "qelib1.inc";`, one `qreg name[n];`, optional `creg name[n];`,
gates `x`, `sx`, `rz(expr)`, `rx(expr)`, `cx`, `measure` (whole register or
single qubit), and `barrier` (parsed, discarded).
Angle expressions are decimal literals or pi multiples such as `pi/2`,
`2*pi`, `-pi/4`. Comments run from `//` to end of line.
"""

import math
import re

from .circuit import Circuit, Gate, GateKind

_FLOAT_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_PI_RE = re.compile(r"^([+-])?(?:(\d+\.?\d*|\.\d+)\s*\*\s*)?pi(?:\s*/\s*(\d+\.?\d*|\.\d+))?$")
_REG_RE = re.compile(r"^(qreg|creg)\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_OPERAND_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*(?:\[\s*(\d+)\s*\])?$")


class QasmError(ValueError):
    """Parse failure with a source line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _parse_angle(text: str, line: int) -> float:
    text = text.strip()
    if _FLOAT_RE.match(text):
        return float(text)
    m = _PI_RE.match(text)
    if m is None:
        raise QasmError(line, f"bad angle expression '{text}'")
    sign, mult, div = m.groups()
    value = math.pi
    if mult is not None:
        value *= float(mult)
    if div is not None:
        value /= float(div)
    if sign == "-":
        value = -value
    return value


def _statements(text: str):
    """Yield (line_number, statement) pairs, stripping comments."""
    buf = []
    stmt_line = None
    line = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "/" and text[i : i + 2] == "//":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            line += 1
            i += 1
            buf.append(" ")
            continue
        if ch == ";":
            stmt = "".join(buf).strip()
            if stmt:
                yield stmt_line if stmt_line is not None else line, stmt
            buf = []
            stmt_line = None
            i += 1
            continue
        if stmt_line is None and not ch.isspace():
            stmt_line = line
        buf.append(ch)
        i += 1
    if "".join(buf).strip():
        raise QasmError(stmt_line, f"statement missing ';': '{''.join(buf).strip()}'")


class _Parser:
    def __init__(self):
        self.qreg_name = None
        self.qreg_size = 0
        self.creg_name = None
        self.creg_size = 0
        self.gates: list[Gate] = []
        self.measured: list[int] = []

    def qubit(self, operand: str, line: int) -> int:
        m = _OPERAND_RE.match(operand.strip())
        if m is None or m.group(2) is None:
            raise QasmError(line, f"expected an indexed qubit, got '{operand.strip()}'")
        name, idx = m.group(1), int(m.group(2))
        if self.qreg_name is None:
            raise QasmError(line, "qubit used before qreg declaration")
        if name != self.qreg_name:
            raise QasmError(line, f"unknown register '{name}'")
        if idx >= self.qreg_size:
            raise QasmError(line, f"qubit index {idx} out of range for {name}[{self.qreg_size}]")
        return idx

    def statement(self, line: int, stmt: str):
        head = stmt.split(None, 1)[0].lower()
        rest = stmt[len(head):].strip()

        if head == "openqasm":
            if rest != "2.0":
                raise QasmError(line, f"unsupported OPENQASM version '{rest}'")
            return
        if head in ("qreg", "creg"):
            m = _REG_RE.match(stmt)
            if m is None:
                raise QasmError(line, f"bad register declaration '{stmt}'")
            _, name, size = m.groups()
            if head == "qreg":
                if self.qreg_name is not None:
                    raise QasmError(line, "duplicate register declaration")
                self.qreg_name, self.qreg_size = name, int(size)
            else:
                if self.creg_name is not None:
                    raise QasmError(line, "duplicate register declaration")
                self.creg_name, self.creg_size = name, int(size)
            return
        if head == "barrier":
            return
        if head == "include":
            if rest != '"qelib1.inc"':
                raise QasmError(line, f"unsupported include {rest}")
            return
        if head == "measure":
            self.measure(line, rest)
            return
        if head in ("x", "sx"):
            q = self.qubit(rest, line)
            self.gates.append(Gate(GateKind(head), (q,)))
            return
        if head.startswith("rz") or head.startswith("rx"):
            m = re.match(r"^(rz|rx)\s*\(([^)]*)\)\s*(.*)$", stmt, re.IGNORECASE)
            if m is None:
                raise QasmError(line, f"bad rotation statement '{stmt}'")
            kind, expr, operand = m.groups()
            angle = _parse_angle(expr, line)
            q = self.qubit(operand, line)
            self.gates.append(Gate(GateKind(kind.lower()), (q,), angle))
            return
        if head == "cx":
            operands = rest.split(",")
            if len(operands) != 2:
                raise QasmError(line, f"cx takes two operands, got '{rest}'")
            c = self.qubit(operands[0], line)
            t = self.qubit(operands[1], line)
            if c == t:
                raise QasmError(line, "cx control equals target")
            self.gates.append(Gate(GateKind.CX, (c, t)))
            return
        raise QasmError(line, f"unknown gate name {head}")

    def measure(self, line: int, rest: str):
        parts = rest.split("->")
        if len(parts) != 2:
            raise QasmError(line, f"bad measure statement 'measure {rest}'")
        src, dst = parts[0].strip(), parts[1].strip()
        ms = _OPERAND_RE.match(src)
        md = _OPERAND_RE.match(dst)
        if ms is None or md is None:
            raise QasmError(line, f"bad measure operands '{rest}'")
        if self.qreg_name is None or ms.group(1) != self.qreg_name:
            raise QasmError(line, f"unknown register '{ms.group(1) if ms else src}'")
        if self.creg_name is None or md.group(1) != self.creg_name:
            raise QasmError(line, f"unknown register '{md.group(1) if md else dst}'")
        if (ms.group(2) is None) != (md.group(2) is None):
            raise QasmError(line, "measure must map register to register or bit to bit")
        if ms.group(2) is None:
            for q in range(self.qreg_size):
                if q not in self.measured:
                    self.measured.append(q)
            return
        q = int(ms.group(2))
        b = int(md.group(2))
        if q >= self.qreg_size:
            raise QasmError(line, f"qubit index {q} out of range")
        if b >= self.creg_size:
            raise QasmError(line, f"bit index {b} out of range")
        if q not in self.measured:
            self.measured.append(q)


def parse_qasm(text: str) -> Circuit:
    """Parse QASM subset text into a Circuit."""
    p = _Parser()
    for line, stmt in _statements(text):
        p.statement(line, stmt)
    if p.qreg_name is None:
        raise QasmError(1, "missing qreg declaration")
    return Circuit(p.qreg_size, tuple(p.gates), tuple(p.measured))


def serialize_qasm(c: Circuit) -> str:
    """Serialize a Circuit; parse_qasm(serialize_qasm(c)) reproduces c exactly."""
    lines = ["OPENQASM 2.0;", f"qreg q[{c.num_qubits}];"]
    if c.measured_qubits:
        lines.append(f"creg c[{c.num_qubits}];")
    for g in c.gates:
        if g.kind is GateKind.CX:
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        elif g.kind.has_angle:
            lines.append(f"{g.kind.value}({g.angle:.17g}) q[{g.qubits[0]}];")
        else:
            lines.append(f"{g.kind.value} q[{g.qubits[0]}];")
    for q in c.measured_qubits:
        lines.append(f"measure q[{q}] -> c[{q}];")
    return "\n".join(lines) + "\n"
