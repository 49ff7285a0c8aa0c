"""Gate-level netlist: named nets, gate instances, and accounting.

Netlists are DAGs of crosstalk gates over scalar nets. Every net has
exactly one driver (a declared input, a declared control, or a gate
output). Gates may be grouped into named blocks for block-level fault
injection; ungrouped gates belong to the implicit block ``_top``.

Text format, one statement per line, ``#`` starts a comment:

    input <net>
    ctrl <net>
    output <port>=<net>
    gate <name> kind=<kind> in=<net>,<net>,... [ctrl=<net>] out=<net>
    block <name> {
        <gate lines>
    }

Named kinds take no extra parameters. GENERIC_CT gates additionally
require ``weights=<int>,...`` ``theta=<int>`` ``ctrl_weight=<int>``
``stages=<1|2>`` and take a ``ctrl=`` net exactly when ctrl_weight > 0.

The discharge clock is not a net: the simulator's cycle protocol
discharges every victim globally before each evaluation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from heapq import heappush, heappop

from .charge import CouplingWeights, MarginSpec
from .gates import GateKind, GateSpec, build_gate, transistor_count

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

TOP_BLOCK = "_top"


class NetlistError(ValueError):
    """Structural or syntactic netlist problem, with a source line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _check_ident(name: str, what: str, line: int | None = None) -> str:
    if not _IDENT.match(name):
        raise NetlistError(f"invalid {what} name {name!r}", line)
    return name


@dataclass(frozen=True)
class GateInstance:
    """One placed gate: a spec wired to named nets."""

    name: str
    spec: GateSpec
    in_nets: tuple[str, ...]
    ctrl_net: str | None
    out_net: str

    def __post_init__(self):
        object.__setattr__(self, "in_nets", tuple(self.in_nets))
        if len(self.in_nets) != self.spec.arity:
            raise NetlistError(
                f"gate {self.name}: {len(self.in_nets)} inputs wired, "
                f"spec arity is {self.spec.arity}"
            )
        if (self.ctrl_net is not None) != self.spec.has_ctrl:
            raise NetlistError(
                f"gate {self.name}: control net must be wired exactly when the "
                f"spec has a control aggressor"
            )


@dataclass
class Netlist:
    """Validated, immutable-by-convention circuit description."""

    inputs: tuple[str, ...]
    ctrls: tuple[str, ...]
    outputs: tuple[tuple[str, str], ...]
    gates: tuple[GateInstance, ...]
    blocks: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        self.inputs = tuple(self.inputs)
        self.ctrls = tuple(self.ctrls)
        self.outputs = tuple((p, n) for p, n in self.outputs)
        self.gates = tuple(self.gates)
        if not self.blocks:
            self.blocks = {TOP_BLOCK: tuple(g.name for g in self.gates)} if self.gates else {}
        else:
            self.blocks = {b: tuple(names) for b, names in self.blocks.items()}
        self._validate()

    def _validate(self):
        for net in self.inputs:
            _check_ident(net, "input net")
        for net in self.ctrls:
            _check_ident(net, "ctrl net")
        seen_ports = set()
        for port, net in self.outputs:
            _check_ident(port, "output port")
            if port in seen_ports:
                raise NetlistError(f"output port {port} declared twice")
            seen_ports.add(port)

        drivers: dict[str, str] = {}

        def claim(net: str, who: str):
            if net in drivers:
                raise NetlistError(f"net {net} has multiple drivers ({drivers[net]}, {who})")
            drivers[net] = who

        for net in self.inputs:
            claim(net, "input")
        for net in self.ctrls:
            claim(net, "ctrl")
        names = set()
        for g in self.gates:
            _check_ident(g.name, "gate")
            if g.name in names:
                raise NetlistError(f"gate {g.name} declared twice")
            names.add(g.name)
            claim(g.out_net, f"gate {g.name}")

        for g in self.gates:
            for net in g.in_nets:
                if net not in drivers:
                    raise NetlistError(f"gate {g.name}: undefined net {net}")
            if g.ctrl_net is not None and g.ctrl_net not in drivers:
                raise NetlistError(f"gate {g.name}: undefined net {g.ctrl_net}")
        for port, net in self.outputs:
            if net not in drivers:
                raise NetlistError(f"output {port}: undefined net {net}")

        # Blocks must partition the gates, contiguously in declaration order.
        order = {g.name: i for i, g in enumerate(self.gates)}
        assigned = {}
        for block, members in self.blocks.items():
            _check_ident(block, "block")
            for name in members:
                if name not in order:
                    raise NetlistError(f"block {block}: unknown gate {name}")
                if name in assigned:
                    raise NetlistError(f"gate {name} assigned to two blocks")
                assigned[name] = block
        if len(assigned) != len(self.gates):
            missing = [g.name for g in self.gates if g.name not in assigned]
            raise NetlistError(f"gates outside any block: {', '.join(missing)}")
        for block, members in self.blocks.items():
            if block == TOP_BLOCK:
                continue
            idx = sorted(order[m] for m in members)
            if idx and idx != list(range(idx[0], idx[-1] + 1)):
                raise NetlistError(f"block {block}: member gates are not contiguous")

        topo_order(self)  # raises on cycles

    @property
    def gate_map(self) -> dict[str, GateInstance]:
        return {g.name: g for g in self.gates}

    def driver_of(self, net: str) -> GateInstance | None:
        """The gate driving a net, or None for inputs and ctrls."""
        for g in self.gates:
            if g.out_net == net:
                return g
        return None


def topo_order(netlist: Netlist) -> tuple[GateInstance, ...]:
    """Gates ordered so every driver precedes its readers.

    Deterministic: among ready gates, declaration order wins.
    """
    producer = {g.out_net: i for i, g in enumerate(netlist.gates)}
    readers: dict[int, list[int]] = {i: [] for i in range(len(netlist.gates))}
    indeg = [0] * len(netlist.gates)
    for i, g in enumerate(netlist.gates):
        nets = g.in_nets + ((g.ctrl_net,) if g.ctrl_net else ())
        for net in nets:
            j = producer.get(net)
            if j is not None:
                readers[j].append(i)
                indeg[i] += 1
    ready = [i for i, d in enumerate(indeg) if d == 0]
    heap = []
    for i in ready:
        heappush(heap, i)
    out = []
    while heap:
        i = heappop(heap)
        out.append(netlist.gates[i])
        for j in readers[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heappush(heap, j)
    if len(out) != len(netlist.gates):
        stuck = [g.name for i, g in enumerate(netlist.gates) if indeg[i] > 0]
        raise NetlistError(f"cycle through gates: {', '.join(stuck)}")
    return tuple(out)


def transitive_fanin(netlist: Netlist, nets) -> set[str]:
    """All nets that can influence the given nets, including themselves."""
    by_out = {g.out_net: g for g in netlist.gates}
    seen: set[str] = set()
    stack = list(nets)
    while stack:
        net = stack.pop()
        if net in seen:
            continue
        seen.add(net)
        g = by_out.get(net)
        if g is not None:
            stack.extend(g.in_nets)
            if g.ctrl_net is not None:
                stack.append(g.ctrl_net)
    return seen


def total_transistors(netlist: Netlist) -> int:
    return sum(transistor_count(g.spec) for g in netlist.gates)


def census(netlist: Netlist) -> dict:
    """Itemized gate and transistor accounting.

    Counts gates by kind and by block, and splits the population into
    inverters, fixed crosstalk gates, and polymorphic (control-driven)
    crosstalk gates.
    """
    by_kind: dict[str, int] = {}
    by_block = {}
    inverters = 0
    polymorphic = 0
    for g in netlist.gates:
        by_kind[g.spec.kind.value] = by_kind.get(g.spec.kind.value, 0) + 1
        if g.spec.kind is GateKind.INV:
            inverters += 1
        elif g.spec.has_ctrl:
            polymorphic += 1
    for block, members in netlist.blocks.items():
        gm = netlist.gate_map
        by_block[block] = {
            "gates": len(members),
            "transistors": sum(transistor_count(gm[m].spec) for m in members),
        }
    crosstalk = len(netlist.gates) - inverters
    return {
        "gates": len(netlist.gates),
        "inverters": inverters,
        "crosstalk_gates": crosstalk,
        "polymorphic_gates": polymorphic,
        "fixed_crosstalk_gates": crosstalk - polymorphic,
        "transistors": total_transistors(netlist),
        "by_kind": dict(sorted(by_kind.items())),
        "by_block": by_block,
    }


# ---------------------------------------------------------------------------
# Text format


def _parse_int(value: str, what: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise NetlistError(f"{what} must be an integer, got {value!r}", line) from None


_GATE_PARAM_KEYS = ("weights", "theta", "ctrl_weight", "stages")


def _parse_gate_line(tokens: list[str], line: int) -> GateInstance:
    if len(tokens) < 2:
        raise NetlistError("gate line needs a name", line)
    name = _check_ident(tokens[1], "gate", line)
    attrs: dict[str, str] = {}
    for tok in tokens[2:]:
        if "=" not in tok:
            raise NetlistError(f"expected key=value, got {tok!r}", line)
        key, value = tok.split("=", 1)
        if key in attrs:
            raise NetlistError(f"duplicate attribute {key}", line)
        attrs[key] = value
    for req in ("kind", "in", "out"):
        if req not in attrs:
            raise NetlistError(f"gate {name}: missing {req}=", line)
    try:
        kind = GateKind(attrs.pop("kind"))
    except ValueError:
        raise NetlistError(f"gate {name}: unknown kind", line) from None
    in_nets = tuple(
        _check_ident(n, "net", line) for n in attrs.pop("in").split(",") if n
    )
    out_net = _check_ident(attrs.pop("out"), "net", line)
    ctrl_net = attrs.pop("ctrl", None)
    if ctrl_net is not None:
        _check_ident(ctrl_net, "net", line)

    has_params = any(k in attrs for k in _GATE_PARAM_KEYS)
    if kind is GateKind.GENERIC_CT:
        missing = [k for k in _GATE_PARAM_KEYS if k not in attrs]
        if missing:
            raise NetlistError(
                f"gate {name}: GENERIC_CT requires {', '.join(missing)}", line
            )
        weights = tuple(
            _parse_int(w, "weight", line) for w in attrs.pop("weights").split(",") if w
        )
        theta = _parse_int(attrs.pop("theta"), "theta", line)
        ctrl_weight = _parse_int(attrs.pop("ctrl_weight"), "ctrl_weight", line)
        stages = _parse_int(attrs.pop("stages"), "stages", line)
        try:
            spec = GateSpec(kind, CouplingWeights(weights, ctrl_weight), MarginSpec(theta), stages)
        except ValueError as exc:
            raise NetlistError(f"gate {name}: {exc}", line) from None
    else:
        if has_params:
            raise NetlistError(
                f"gate {name}: named kinds take no weight parameters", line
            )
        spec = build_gate(kind)
    if attrs:
        raise NetlistError(f"gate {name}: unknown attribute {next(iter(attrs))}", line)
    try:
        return GateInstance(name, spec, in_nets, ctrl_net, out_net)
    except NetlistError as exc:
        raise NetlistError(str(exc), line) from None


def parse(text: str) -> Netlist:
    """Parse the netlist text format; raises NetlistError with line numbers."""
    inputs: list[str] = []
    ctrls: list[str] = []
    outputs: list[tuple[str, str]] = []
    output_lines: list[int] = []
    gates: list[GateInstance] = []
    gate_lines: list[int] = []
    blocks: dict[str, list[str]] = {}
    current_block: str | None = None
    drivers: dict[str, str] = {}

    def claim(net: str, who: str, lineno: int):
        if net in drivers:
            raise NetlistError(
                f"net {net} has multiple drivers ({drivers[net]}, {who})", lineno
            )
        drivers[net] = who

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        tokens = stmt.split()
        head = tokens[0]
        if head == "}":
            if current_block is None:
                raise NetlistError("unmatched '}'", lineno)
            if len(tokens) != 1:
                raise NetlistError("'}' must stand alone", lineno)
            current_block = None
            continue
        if current_block is not None and head != "gate":
            raise NetlistError("only gate lines may appear inside a block", lineno)
        if head == "input":
            if len(tokens) != 2:
                raise NetlistError("usage: input <net>", lineno)
            net = _check_ident(tokens[1], "input net", lineno)
            claim(net, "input", lineno)
            inputs.append(net)
        elif head == "ctrl":
            if len(tokens) != 2:
                raise NetlistError("usage: ctrl <net>", lineno)
            net = _check_ident(tokens[1], "ctrl net", lineno)
            claim(net, "ctrl", lineno)
            ctrls.append(net)
        elif head == "output":
            if len(tokens) != 2 or "=" not in tokens[1]:
                raise NetlistError("usage: output <port>=<net>", lineno)
            port, net = tokens[1].split("=", 1)
            outputs.append(
                (_check_ident(port, "port", lineno), _check_ident(net, "net", lineno))
            )
            output_lines.append(lineno)
        elif head == "block":
            if len(tokens) != 3 or tokens[2] != "{":
                raise NetlistError("usage: block <name> {", lineno)
            name = _check_ident(tokens[1], "block", lineno)
            if name == TOP_BLOCK:
                raise NetlistError(f"{TOP_BLOCK} is reserved for ungrouped gates", lineno)
            if name in blocks:
                raise NetlistError(f"block {name} declared twice", lineno)
            blocks[name] = []
            current_block = name
        elif head == "gate":
            g = _parse_gate_line(tokens, lineno)
            claim(g.out_net, f"gate {g.name}", lineno)
            gates.append(g)
            gate_lines.append(lineno)
            if current_block is not None:
                blocks[current_block].append(g.name)
            else:
                blocks.setdefault(TOP_BLOCK, []).append(g.name)
        else:
            raise NetlistError(f"unknown statement {head!r}", lineno)

    if current_block is not None:
        raise NetlistError(f"block {current_block} is never closed")
    for g, lineno in zip(gates, gate_lines):
        for net in g.in_nets + ((g.ctrl_net,) if g.ctrl_net else ()):
            if net not in drivers:
                raise NetlistError(f"gate {g.name}: undefined net {net}", lineno)
    for (port, net), lineno in zip(outputs, output_lines):
        if net not in drivers:
            raise NetlistError(f"output {port}: undefined net {net}", lineno)
    block_map = {b: tuple(names) for b, names in blocks.items() if names}
    return Netlist(tuple(inputs), tuple(ctrls), tuple(outputs), tuple(gates), block_map)


def _format_gate(g: GateInstance) -> str:
    parts = [f"gate {g.name}", f"kind={g.spec.kind.value}", f"in={','.join(g.in_nets)}"]
    if g.ctrl_net is not None:
        parts.append(f"ctrl={g.ctrl_net}")
    parts.append(f"out={g.out_net}")
    if g.spec.kind is GateKind.GENERIC_CT:
        parts.append(f"weights={','.join(str(w) for w in g.spec.weights.data_weights)}")
        parts.append(f"theta={g.spec.margin.theta}")
        parts.append(f"ctrl_weight={g.spec.weights.ctrl_weight}")
        parts.append(f"stages={g.spec.n_stages}")
    return " ".join(parts)


def serialize(netlist: Netlist) -> str:
    """Render a netlist in the text format; parse(serialize(n)) == n."""
    lines = [f"input {net}" for net in netlist.inputs]
    lines += [f"ctrl {net}" for net in netlist.ctrls]
    block_of = {}
    for block, members in netlist.blocks.items():
        for name in members:
            block_of[name] = block
    open_block = None
    for g in netlist.gates:
        block = block_of[g.name]
        if block != open_block:
            if open_block not in (None, TOP_BLOCK):
                lines.append("}")
            if block != TOP_BLOCK:
                lines.append(f"block {block} {{")
            open_block = block
        indent = "    " if block != TOP_BLOCK else ""
        lines.append(indent + _format_gate(g))
    if open_block not in (None, TOP_BLOCK):
        lines.append("}")
    lines += [f"output {port}={net}" for port, net in netlist.outputs]
    return "\n".join(lines) + "\n"
