"""Fault discovery and recovery over a bank of polymorphic blocks.

Three copies of the multiplier/sorter/adder block serve a mixed workload.
Because every block carries all three functionalities dormant, killing
two entire blocks still leaves every instruction servable: discovery
finds the survivors and the dispatcher reroutes.

The second half shows why discovery must precede recovery: with
re-discovery disabled, a mid-run fault silently corrupts results.
"""

from xtalk.msa import ORACLES
from xtalk.runtime import BlockBank, parse_program, parse_schedule, run_workload

PROGRAM = """\
mul 11 10
sort 11 10
add 11 10
mul 10 01
sort 10 01
add 10 01
mul 11 11
add 11 11
sort 01 11
"""


def show_run(run, program):
    for instr, result in zip(program, run.results):
        want = "".join(map(str, ORACLES[instr.op](instr.a, instr.b)))
        got = "unrecoverable" if result is None else "".join(map(str, result))
        mark = "ok" if got == want else f"WRONG (want {want})"
        print(f"  [{instr.id}] {instr.op.value:8s} {instr.a:02b},{instr.b:02b} -> {got}  {mark}")
    for e in run.events:
        if e.kind != "route":
            print(f"  event t={e.time} {e.kind}: {e.detail}")


program = parse_program(PROGRAM)

print("== two thirds of the bank destroyed before the run ==")
bank = BlockBank.of_msa(3)
schedule = parse_schedule("0 dead block1\n0 dead block2\n", bank)
run = run_workload(program, bank, rediscover_every=1, fault_schedule=schedule)
show_run(run, program)

print()
print("== mid-run fault, re-discovery every instruction: absorbed ==")
bank = BlockBank.of_msa(3)
schedule = parse_schedule("4 dead block1\n", bank)
run = run_workload(program, bank, rediscover_every=1, fault_schedule=schedule)
show_run(run, program)

print()
print("== same fault, single stale discovery: corruption ==")
bank = BlockBank.of_msa(3)
schedule = parse_schedule("4 dead block1\n", bank)
run = run_workload(program, bank, rediscover_every=None, fault_schedule=schedule)
show_run(run, program)
