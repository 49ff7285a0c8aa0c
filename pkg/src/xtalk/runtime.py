"""Fault discovery and recovery over a bank of polymorphic blocks.

A ``BlockBank`` holds several copies of the multiplier/sorter/adder
circuit, each with its own fault state. Discovery configures every block
for every functionality, drives a known vector set, and records which
(block, functionality) pairs compute correctly in a health table. The
dispatcher then serves each instruction from the lowest-indexed block
whose entry is marked correct, reconfiguring it on the fly; because every
block carries all three functionalities dormant, a single surviving block
can serve the whole instruction mix.

Discovery is stop-the-world: the workload pauses while blocks are being
checked. Fault state changes only between instructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .charge import Bit
from .msa import (
    ORACLES,
    MODE_BY_NAME,
    MsaMode,
    OUTPUT_PORTS,
    build_msa,
    mode_assignment,
    operand_assignment,
)
from .netlist import Netlist
from .sim import DeadBlock, DeadGate, Fault, FaultMap, StuckAt, run_cycle

FUNCTIONALITIES = tuple(MsaMode)


class Health(Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    UNTESTED = "untested"


@dataclass
class BankBlock:
    """One computing block plus its accumulated fault state."""

    name: str
    netlist: Netlist
    functions: tuple[MsaMode, ...] = FUNCTIONALITIES
    faults: list[Fault] = field(default_factory=list)

    def fault_map(self) -> FaultMap:
        return FaultMap(tuple(self.faults))


@dataclass
class BlockBank:
    blocks: list[BankBlock]

    def __post_init__(self):
        names = [b.name for b in self.blocks]
        if len(set(names)) != len(names):
            raise ValueError("block names must be unique")

    @classmethod
    def of_msa(cls, count: int = 3) -> "BlockBank":
        return cls([BankBlock(f"block{i + 1}", build_msa()) for i in range(count)])

    def block(self, name: str) -> BankBlock:
        for b in self.blocks:
            if b.name == name:
                return b
        raise ValueError(f"unknown block {name}")

    def kill(self, name: str):
        """Mark every gate of a block dead (whole-block failure)."""
        b = self.block(name)
        b.faults.extend(DeadBlock(inner) for inner in b.netlist.blocks)


@dataclass
class HealthTable:
    """(block, functionality) -> verification outcome."""

    entries: dict[tuple[str, MsaMode], Health] = field(default_factory=dict)

    def status(self, block: str, op: MsaMode) -> Health:
        return self.entries.get((block, op), Health.UNTESTED)

    def mark(self, block: str, op: MsaMode, health: Health):
        self.entries[(block, op)] = health

    def correct_blocks(self, op: MsaMode) -> list[str]:
        return [b for (b, o), h in self.entries.items() if o is op and h is Health.CORRECT]

    def fully_discovered(self, bank: BlockBank) -> bool:
        return all(
            self.status(b.name, op) is not Health.UNTESTED
            for b in bank.blocks
            for op in b.functions
        )

    def summary(self) -> dict[str, dict[str, str]]:
        out: dict[str, dict[str, str]] = {}
        for (block, op), health in self.entries.items():
            out.setdefault(block, {})[op.value] = health.value
        return out


def exhaustive_test_vectors() -> dict[MsaMode, tuple[tuple[int, int], ...]]:
    """All 16 operand pairs for every functionality; makes discovery sound."""
    pairs = tuple((a, b) for a in range(4) for b in range(4))
    return {mode: pairs for mode in FUNCTIONALITIES}


def discover(
    bank: BlockBank,
    test_vectors: dict[MsaMode, tuple[tuple[int, int], ...]] | None = None,
) -> HealthTable:
    """Check every block in every mode against the oracles.

    With the default exhaustive vectors a CORRECT entry is a proof of
    correct behavior on all inputs; a reduced vector set makes discovery
    faster but only probabilistic (an entry may be marked correct while
    untested inputs misbehave).
    """
    vectors = test_vectors if test_vectors is not None else exhaustive_test_vectors()
    for mode, pairs in vectors.items():
        if not pairs:
            raise ValueError(f"empty test vector set for {mode.value}")
    table = HealthTable()
    for block in bank.blocks:
        faults = block.fault_map()
        for op in block.functions:
            oracle = ORACLES[op]
            ok = True
            for a, b in vectors[op]:
                record = run_cycle(
                    block.netlist,
                    operand_assignment(a, b),
                    mode_assignment(op),
                    faults=faults,
                )
                got = tuple(record.outputs[p] for p in OUTPUT_PORTS)
                if got != oracle(a, b):
                    ok = False
                    break
            table.mark(block.name, op, Health.CORRECT if ok else Health.INCORRECT)
    return table


@dataclass(frozen=True)
class Instruction:
    op: MsaMode
    a: int
    b: int
    id: int


class UnrecoverableError(Exception):
    """No block in the bank is verified correct for the requested op."""

    def __init__(self, op: MsaMode):
        self.op = op
        super().__init__(f"no healthy block for {op.value}")


def dispatch(
    instr: Instruction, table: HealthTable, bank: BlockBank
) -> tuple[Bit, Bit, Bit, Bit]:
    """Route one instruction to the lowest-indexed healthy block."""
    if not table.fully_discovered(bank):
        raise ValueError("health table has untested entries; run discovery first")
    for block in bank.blocks:
        if instr.op in block.functions and table.status(block.name, instr.op) is Health.CORRECT:
            record = run_cycle(
                block.netlist,
                operand_assignment(instr.a, instr.b),
                mode_assignment(instr.op),
                faults=block.fault_map(),
            )
            return tuple(record.outputs[p] for p in OUTPUT_PORTS)
    raise UnrecoverableError(instr.op)


def _routed_block(instr: Instruction, table: HealthTable, bank: BlockBank) -> str | None:
    for block in bank.blocks:
        if instr.op in block.functions and table.status(block.name, instr.op) is Health.CORRECT:
            return block.name
    return None


@dataclass(frozen=True)
class ScheduledFault:
    """Inject ``faults`` into ``block`` just before instruction ``before_id``."""

    before_id: int
    block: str
    faults: tuple[Fault, ...]


@dataclass(frozen=True)
class Event:
    time: int
    kind: str
    detail: dict


@dataclass
class WorkloadRun:
    results: list[tuple[Bit, Bit, Bit, Bit] | None]
    events: list[Event]


def run_workload(
    program: Iterable[Instruction],
    bank: BlockBank,
    rediscover_every: int | None = 1,
    fault_schedule: Iterable[ScheduledFault] = (),
    test_vectors: dict[MsaMode, tuple[tuple[int, int], ...]] | None = None,
) -> WorkloadRun:
    """Execute a program, injecting faults and re-checking health on cadence.

    ``rediscover_every=k`` re-runs discovery before instructions 0, k, 2k,
    ... (after any fault injections due at that point); ``None`` means a
    single discovery pass before the workload and never again, so faults
    injected mid-run go unnoticed until they corrupt results.

    An instruction whose op has no healthy block yields a ``None`` result
    slot and an ``unrecoverable`` event; the workload continues.
    """
    program = list(program)
    schedule: dict[int, list[ScheduledFault]] = {}
    for sf in fault_schedule:
        schedule.setdefault(sf.before_id, []).append(sf)

    events: list[Event] = []
    results: list[tuple[Bit, Bit, Bit, Bit] | None] = []

    def note(time: int, kind: str, detail: dict):
        events.append(Event(time, kind, detail))

    def run_discovery(time: int) -> HealthTable:
        table = discover(bank, test_vectors)
        note(time, "discovery", {"health": table.summary()})
        return table

    table: HealthTable | None = None
    if rediscover_every is None:
        table = run_discovery(-1)
    elif rediscover_every < 1:
        raise ValueError("rediscover_every must be positive or None")

    for idx, instr in enumerate(program):
        for sf in schedule.get(instr.id, ()):
            bank.block(sf.block).faults.extend(sf.faults)
            note(idx, "fault_injected", {
                "block": sf.block,
                "faults": [repr(f) for f in sf.faults],
            })
        if rediscover_every is not None and idx % rediscover_every == 0:
            table = run_discovery(idx)
        chosen = _routed_block(instr, table, bank)
        if chosen is None:
            note(idx, "unrecoverable", {"id": instr.id, "op": instr.op.value})
            results.append(None)
            continue
        note(idx, "route", {
            "id": instr.id,
            "op": instr.op.value,
            "block": chosen,
            "reroute": chosen != bank.blocks[0].name,
        })
        results.append(dispatch(instr, table, bank))
    return WorkloadRun(results, events)


# ---------------------------------------------------------------------------
# File formats


def parse_program(text: str) -> list[Instruction]:
    """One instruction per line: ``<op> <a:2bits> <b:2bits>``."""
    program = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        tokens = stmt.split()
        if len(tokens) != 3:
            raise ValueError(f"line {lineno}: expected '<op> <a> <b>'")
        op_name, a_bits, b_bits = tokens
        if op_name not in MODE_BY_NAME:
            raise ValueError(f"line {lineno}: unknown op {op_name!r}")
        for operand in (a_bits, b_bits):
            if len(operand) != 2 or any(c not in "01" for c in operand):
                raise ValueError(f"line {lineno}: operands are 2-bit binary strings")
        program.append(
            Instruction(
                MODE_BY_NAME[op_name], int(a_bits, 2), int(b_bits, 2), len(program)
            )
        )
    return program


def _parse_fault_spec(spec: str, block: BankBlock, lineno: int) -> tuple[Fault, ...]:
    if spec == "dead":
        return tuple(DeadBlock(inner) for inner in block.netlist.blocks)
    if spec.startswith("stuck:"):
        body = spec[len("stuck:"):]
        if "=" not in body:
            raise ValueError(f"line {lineno}: stuck fault is stuck:<net>=<0|1>")
        net, value = body.split("=", 1)
        if value not in ("0", "1"):
            raise ValueError(f"line {lineno}: stuck value must be 0 or 1")
        return (StuckAt(net, int(value)),)
    if spec.startswith("dead_gate:"):
        return (DeadGate(spec[len("dead_gate:"):]),)
    if spec.startswith("dead_block:"):
        return (DeadBlock(spec[len("dead_block:"):]),)
    raise ValueError(f"line {lineno}: unknown fault spec {spec!r}")


def parse_schedule(text: str, bank: BlockBank) -> list[ScheduledFault]:
    """One fault per line: ``<instr-id> <fault-spec> <block>``.

    Fault specs: ``dead`` (whole block), ``dead_block:<name>``,
    ``dead_gate:<name>``, ``stuck:<net>=<0|1>``.
    """
    schedule = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        tokens = stmt.split()
        if len(tokens) != 3:
            raise ValueError(f"line {lineno}: expected '<instr-id> <fault-spec> <block>'")
        sid, spec, block_name = tokens
        try:
            before_id = int(sid)
        except ValueError:
            raise ValueError(f"line {lineno}: instruction id must be an integer") from None
        block = bank.block(block_name)
        schedule.append(ScheduledFault(before_id, block_name, _parse_fault_spec(spec, block, lineno)))
    return schedule
