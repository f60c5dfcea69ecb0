"""
QASM Circuit Repository - pyparsing implementation of the CircuitRepository interface.
Reads and writes the OpenQASM 2 subset used by the toolkit: an optional header,
one qubit register, an optional classical register, gate and measure statements.
"""

from typing import Dict, List, Optional
import logging
import math
import operator

import pyparsing as pp

from domain.interfaces import CircuitRepository
from domain.models.circuit import Circuit, Gate, GateKind
from domain.models.errors import (
    InvalidGateError,
    QasmSyntaxError,
    UnsupportedGateError,
    WidthMismatchError,
)

logger = logging.getLogger(__name__)

QASM_NAMES: Dict[str, GateKind] = {
    "h": GateKind.H,
    "x": GateKind.X,
    "y": GateKind.Y,
    "z": GateKind.Z,
    "s": GateKind.S,
    "sdg": GateKind.SDG,
    "t": GateKind.T,
    "tdg": GateKind.TDG,
    "rx": GateKind.RX,
    "ry": GateKind.RY,
    "rz": GateKind.RZ,
    "cx": GateKind.CNOT,
    "CX": GateKind.CNOT,
    "cz": GateKind.CZ,
    "rzz": GateKind.RZZ,
}

EMIT_NAMES: Dict[GateKind, str] = {
    GateKind.H: "h",
    GateKind.X: "x",
    GateKind.Y: "y",
    GateKind.Z: "z",
    GateKind.S: "s",
    GateKind.SDG: "sdg",
    GateKind.T: "t",
    GateKind.TDG: "tdg",
    GateKind.RX: "rx",
    GateKind.RY: "ry",
    GateKind.RZ: "rz",
    GateKind.CNOT: "cx",
    GateKind.CZ: "cz",
    GateKind.RZZ: "rzz",
}

_RESERVED = frozenset({"OPENQASM", "include", "qreg", "creg", "measure", "barrier", "pi"})

_BINARY_OPS = {"+": operator.add, "-": operator.sub, "*": operator.mul, "/": operator.truediv}


def _fold_binary(tokens):
    items = tokens[0]
    value = items[0]
    for op, rhs in zip(items[1::2], items[2::2]):
        value = _BINARY_OPS[op](value, rhs)
    return value


def _unary(tokens):
    op, value = tokens[0]
    return -value if op == "-" else value


def _build_grammar() -> pp.ParserElement:
    LBRACK, RBRACK, LPAR, RPAR, SEMI = map(pp.Suppress, "[]();")

    integer = pp.pyparsing_common.integer
    number = pp.Regex(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?").set_parse_action(lambda t: float(t[0]))
    pi = pp.Keyword("pi").set_parse_action(lambda: math.pi)

    expr = pp.infix_notation(number | pi, [
        (pp.one_of("+ -"), 1, pp.OpAssoc.RIGHT, _unary),
        (pp.one_of("* /"), 2, pp.OpAssoc.LEFT, _fold_binary),
        (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _fold_binary),
    ])

    ident = pp.Word(pp.alphas + "_", pp.alphanums + "_").add_condition(lambda t: t[0] not in _RESERVED)
    qubit_ref = pp.Group(ident("reg") + pp.Opt(LBRACK + integer("index") + RBRACK))

    header = pp.Group(pp.Keyword("OPENQASM")("kind") + pp.Regex(r"\d+(\.\d+)?")("version") + SEMI)
    include = pp.Group(pp.Keyword("include")("kind") + pp.QuotedString('"')("file") + SEMI)
    register = pp.Group((pp.Keyword("qreg") | pp.Keyword("creg"))("kind")
                        + ident("name") + LBRACK + integer("size") + RBRACK + SEMI)
    measure = pp.Group(pp.Keyword("measure")("kind") + qubit_ref("src") + pp.Suppress("->") + qubit_ref("dst") + SEMI)
    barrier = pp.Group(pp.Keyword("barrier")("kind") + pp.DelimitedList(qubit_ref) + SEMI)
    gate = pp.Group(
        ident("name")
        + pp.Opt(LPAR + pp.Group(pp.DelimitedList(expr))("params") + RPAR)
        + pp.Group(pp.DelimitedList(qubit_ref))("args")
        + SEMI
    )

    statement = header | include | register | measure | barrier | gate
    program = pp.ZeroOrMore(pp.Group(pp.Located(statement)))
    program.ignore(pp.cpp_style_comment)
    return program


_GRAMMAR = _build_grammar()


class _CircuitBuilder:
    """Turns located statements into a Circuit"""

    def __init__(self, text: str):
        self.text = text
        self.qreg: Optional[str] = None
        self.creg: Optional[str] = None
        self.width = 0
        self.creg_size = 0
        self.gates: List[Gate] = []

    def _where(self, loc: int):
        return pp.lineno(loc, self.text), pp.col(loc, self.text)

    def _fail(self, message: str, loc: int):
        line, column = self._where(loc)
        raise QasmSyntaxError(message, line, column)

    def _qubit(self, ref, loc: int) -> int:
        if self.qreg is None:
            self._fail("qubit used before the qreg declaration", loc)
        if ref.reg != self.qreg:
            self._fail(f"unknown qubit register '{ref.reg}'", loc)
        if "index" not in ref:
            self._fail(f"gate arguments need an index into '{ref.reg}'", loc)
        if ref["index"] >= self.width:
            line, column = self._where(loc)
            raise WidthMismatchError(
                f"qubit {ref['index']} outside register {self.qreg}[{self.width}] (line {line}, column {column})"
            )
        return ref["index"]

    def add(self, stmt, loc: int):
        kind = stmt.get("kind")
        if kind in ("OPENQASM", "include"):
            return
        if kind == "qreg":
            if self.qreg is not None:
                self._fail("only one qubit register is supported", loc)
            if stmt.size < 1:
                self._fail("qubit register must hold at least one qubit", loc)
            self.qreg, self.width = stmt.name, stmt.size
        elif kind == "creg":
            if self.creg is not None:
                self._fail("only one classical register is supported", loc)
            self.creg, self.creg_size = stmt.name, stmt.size
        elif kind == "barrier":
            for ref in stmt[1:]:
                if "index" in ref:
                    self._qubit(ref, loc)
        elif kind == "measure":
            self._add_measure(stmt, loc)
        else:
            self._add_gate(stmt, loc)

    def _check_clbit(self, ref, loc: int):
        if self.creg is not None and ref.reg != self.creg:
            self._fail(f"unknown classical register '{ref.reg}'", loc)
        if self.creg is not None and "index" in ref and ref["index"] >= self.creg_size:
            line, column = self._where(loc)
            raise WidthMismatchError(
                f"bit {ref['index']} outside register {self.creg}[{self.creg_size}] (line {line}, column {column})"
            )

    def _add_measure(self, stmt, loc: int):
        src, dst = stmt.src, stmt.dst
        self._check_clbit(dst, loc)
        if "index" in src:
            self.gates.append(Gate(GateKind.MEASURE, (self._qubit(src, loc),)))
            return
        # whole-register measure expands to every qubit
        if self.qreg is None or src.reg != self.qreg:
            self._fail(f"unknown qubit register '{src.reg}'", loc)
        if self.creg is not None and self.creg_size != self.width:
            line, column = self._where(loc)
            raise WidthMismatchError(
                f"cannot measure {self.qreg}[{self.width}] into {self.creg}[{self.creg_size}] "
                f"(line {line}, column {column})"
            )
        self.gates.extend(Gate(GateKind.MEASURE, (q,)) for q in range(self.width))

    def _add_gate(self, stmt, loc: int):
        name = stmt.name
        if name not in QASM_NAMES:
            line, column = self._where(loc)
            raise UnsupportedGateError(name, line, column)
        kind = QASM_NAMES[name]

        params = list(stmt.params) if "params" in stmt else []
        if len(params) > 1:
            self._fail(f"'{name}' takes at most one parameter, got {len(params)}", loc)
        qubits = tuple(self._qubit(ref, loc) for ref in stmt.args)
        try:
            self.gates.append(Gate(kind, qubits, params[0] if params else None))
        except InvalidGateError as e:
            line, column = self._where(loc)
            raise InvalidGateError(f"{e} (line {line}, column {column})")

    def build(self) -> Circuit:
        if self.qreg is None:
            raise QasmSyntaxError("missing qreg declaration")
        return Circuit(self.width, tuple(self.gates))


def parse_qasm(text: str) -> Circuit:
    """Parse QASM-subset text into a Circuit, gates in source order"""
    try:
        located = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise QasmSyntaxError(e.msg, e.lineno, e.col)

    builder = _CircuitBuilder(text)
    for start, stmt, _ in located:
        builder.add(stmt[0], start)
    return builder.build()


def _format_angle(angle: float) -> str:
    return repr(float(angle))


def emit_qasm(circuit: Circuit) -> str:
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.width}];",
        f"creg c[{circuit.width}];",
    ]
    for gate in circuit.gates:
        if gate.is_measurement:
            q = gate.qubits[0]
            lines.append(f"measure q[{q}] -> c[{q}];")
            continue
        args = ",".join(f"q[{q}]" for q in gate.qubits)
        params = f"({_format_angle(gate.angle)})" if gate.kind.is_rotation else ""
        lines.append(f"{EMIT_NAMES[gate.kind]}{params} {args};")
    return "\n".join(lines) + "\n"


class QasmCircuitRepository(CircuitRepository):
    """File-based CircuitRepository for QASM text"""

    def parse(self, text: str) -> Circuit:
        return parse_qasm(text)

    def emit(self, circuit: Circuit) -> str:
        return emit_qasm(circuit)

    def load_circuit(self, path: str) -> Circuit:
        try:
            with open(path, encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            logger.error(f"Failed to read circuit file {path}: {e}")
            raise

        circuit = parse_qasm(text)
        logger.info(f"Loaded {len(circuit)} operation(s) on {circuit.width} qubit(s) from {path}")
        return circuit

    def save_circuit(self, circuit: Circuit, path: str) -> bool:
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(emit_qasm(circuit))
            logger.info(f"Wrote circuit to {path}")
            return True
        except OSError as e:
            logger.error(f"Failed to write circuit file {path}: {e}")
            return False
