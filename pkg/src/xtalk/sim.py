"""Two-phase discharge/evaluate simulation with fault injection.

Every cycle is independent: the discharge phase grounds all victim nets,
then the evaluation phase applies the input assignment and computes each
gate once in topological order. Faults are persistent for the duration
of a run:

* ``StuckAt(net, value)`` forces a net after its driver evaluates, so
  downstream gates see the forced value;
* ``DeadGate(gate)`` grounds the gate's victim and output;
* ``DeadBlock(block)`` applies DeadGate to every gate of a block.

There is no unknown value: the protocol guarantees every net is defined
in every cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .charge import (
    AnalogParams,
    Bit,
    analog_fires,
    default_analog,
    fires,
    induced_level,
    stage_output,
)
from .gates import input_vectors
from .netlist import Netlist, topo_order

DISCRETE = "discrete"
ANALOG = "analog"


@dataclass(frozen=True)
class StuckAt:
    net: str
    value: Bit


@dataclass(frozen=True)
class DeadGate:
    gate: str


@dataclass(frozen=True)
class DeadBlock:
    block: str


Fault = StuckAt | DeadGate | DeadBlock


@dataclass(frozen=True)
class FaultMap:
    """A set of persistent faults to apply during simulation."""

    faults: tuple[Fault, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "faults", tuple(self.faults))

    def resolve(self, netlist: Netlist) -> tuple[dict[str, Bit], set[str]]:
        """(stuck net values, dead gate names) for a target netlist.

        Raises ValueError when a fault references an unknown net, gate,
        or block.
        """
        nets = set(netlist.inputs) | set(netlist.ctrls)
        nets.update(g.out_net for g in netlist.gates)
        gate_names = {g.name for g in netlist.gates}
        stuck: dict[str, Bit] = {}
        dead: set[str] = set()
        for f in self.faults:
            if isinstance(f, StuckAt):
                if f.net not in nets:
                    raise ValueError(f"stuck-at fault on unknown net {f.net}")
                if f.value not in (0, 1):
                    raise ValueError("stuck-at value must be 0 or 1")
                stuck[f.net] = f.value
            elif isinstance(f, DeadGate):
                if f.gate not in gate_names:
                    raise ValueError(f"dead-gate fault on unknown gate {f.gate}")
                dead.add(f.gate)
            elif isinstance(f, DeadBlock):
                if f.block not in netlist.blocks:
                    raise ValueError(f"dead-block fault on unknown block {f.block}")
                dead.update(netlist.blocks[f.block])
            else:
                raise ValueError(f"unknown fault record {f!r}")
        return stuck, dead


NO_FAULTS = FaultMap()


@dataclass(frozen=True)
class CycleRecord:
    """Everything observed in one discharge/evaluate cycle."""

    inputs: dict[str, Bit]
    ctrls: dict[str, Bit]
    victim_levels: dict[str, Fraction]
    net_values: dict[str, Bit]
    outputs: dict[str, Bit]


@dataclass(frozen=True)
class SimTrace:
    cycles: tuple[CycleRecord, ...] = ()

    def output_rows(self) -> list[dict[str, Bit]]:
        return [c.outputs for c in self.cycles]


def _read_assignment(declared, given: Mapping[str, Bit], what: str) -> dict[str, Bit]:
    out = {}
    for net in declared:
        if net not in given:
            raise ValueError(f"missing {what} assignment for net {net}")
        v = given[net]
        if v not in (0, 1):
            raise ValueError(f"{what} {net} must be 0 or 1, got {v!r}")
        out[net] = int(v)
    return out


def run_cycle(
    netlist: Netlist,
    inputs: Mapping[str, Bit],
    ctrls: Mapping[str, Bit],
    mode: str = DISCRETE,
    analog: AnalogParams | None = None,
    faults: FaultMap = NO_FAULTS,
) -> CycleRecord:
    """One full cycle: discharge every victim, then evaluate in topo order.

    In analog mode each gate uses ``analog`` when given, otherwise its own
    default parameters.
    """
    if mode not in (DISCRETE, ANALOG):
        raise ValueError(f"mode must be {DISCRETE!r} or {ANALOG!r}")
    ins = _read_assignment(netlist.inputs, inputs, "input")
    cs = _read_assignment(netlist.ctrls, ctrls, "ctrl")
    stuck, dead = faults.resolve(netlist)

    values: dict[str, Bit] = {}
    for net, v in ins.items():
        values[net] = stuck.get(net, v)
    for net, v in cs.items():
        values[net] = stuck.get(net, v)

    levels: dict[str, Fraction] = {}
    for g in topo_order(netlist):
        if g.name in dead:
            # victim shorted to ground: never fires, output forced low
            levels[g.name] = Fraction(0)
            value = 0
        else:
            bits = tuple(values[n] for n in g.in_nets)
            c = values[g.ctrl_net] if g.ctrl_net is not None else 0
            if mode == DISCRETE:
                params = AnalogParams()
                fire = fires(g.spec.weights, g.spec.margin, bits, c)
            else:
                params = analog if analog is not None else default_analog(
                    g.spec.weights, g.spec.margin
                )
                fire = analog_fires(g.spec.weights, bits, c, params)
            levels[g.name] = induced_level(g.spec.weights, bits, c, params)
            value = stage_output(fire, g.spec.n_stages)
        values[g.out_net] = stuck.get(g.out_net, value)

    outs = {port: values[net] for port, net in netlist.outputs}
    return CycleRecord(ins, cs, levels, values, outs)


def run_sequence(
    netlist: Netlist,
    vectors,
    mode: str = DISCRETE,
    analog: AnalogParams | None = None,
    faults: FaultMap = NO_FAULTS,
) -> SimTrace:
    """Run one cycle per assignment; cycles are fully independent.

    Each vector maps every declared input and ctrl net to a bit.
    """
    cycles = []
    for vec in vectors:
        ins = {n: vec[n] for n in netlist.inputs if n in vec}
        cs = {n: vec[n] for n in netlist.ctrls if n in vec}
        cycles.append(run_cycle(netlist, ins, cs, mode, analog, faults))
    return SimTrace(tuple(cycles))


@dataclass(frozen=True)
class Failure:
    inputs: dict[str, Bit]
    expected: dict[str, Bit]
    actual: dict[str, Bit]


@dataclass(frozen=True)
class VerifyReport:
    total: int
    passed: int
    failures: tuple[Failure, ...]

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def exhaustive_verify(
    netlist: Netlist,
    ctrls: Mapping[str, Bit],
    oracle: Callable[[dict[str, Bit]], Mapping[str, Bit]],
    mode: str = DISCRETE,
    analog: AnalogParams | None = None,
    faults: FaultMap = NO_FAULTS,
) -> VerifyReport:
    """Compare the circuit against an oracle over every input assignment.

    The oracle maps an input assignment to expected values for (a subset
    of) the output ports. Mismatches are collected, not raised.
    """
    n = len(netlist.inputs)
    if n > 16:
        raise ValueError("exhaustive verification is limited to 16 input bits")
    failures = []
    total = 0
    # first declared input is the most significant counting bit
    for bits in input_vectors(n):
        assignment = {net: bits[n - 1 - i] for i, net in enumerate(netlist.inputs)}
        record = run_cycle(netlist, assignment, ctrls, mode, analog, faults)
        expected = dict(oracle(assignment))
        total += 1
        if any(record.outputs[p] != v for p, v in expected.items()):
            failures.append(Failure(assignment, expected, dict(record.outputs)))
    return VerifyReport(total, total - len(failures), tuple(failures))


def parse_vectors(text: str, netlist: Netlist) -> list[dict[str, Bit]]:
    """Parse a vector file: one cycle per line of space-separated name=bit."""
    needed = set(netlist.inputs) | set(netlist.ctrls)
    vectors = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        vec: dict[str, Bit] = {}
        for tok in stmt.split():
            if "=" not in tok:
                raise ValueError(f"line {lineno}: expected name=bit, got {tok!r}")
            name, value = tok.split("=", 1)
            if name not in needed:
                raise ValueError(f"line {lineno}: unknown net {name}")
            if value not in ("0", "1"):
                raise ValueError(f"line {lineno}: {name} must be 0 or 1")
            if name in vec:
                raise ValueError(f"line {lineno}: duplicate assignment for {name}")
            vec[name] = int(value)
        missing = needed - set(vec)
        if missing:
            raise ValueError(f"line {lineno}: missing assignment for {sorted(missing)}")
        vectors.append(vec)
    return vectors
