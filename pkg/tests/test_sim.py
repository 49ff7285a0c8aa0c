from fractions import Fraction

import pytest

from xtalk.msa import MsaMode, build_msa, mode_assignment, operand_assignment
from xtalk.netlist import parse, transitive_fanin
from xtalk.sim import (
    DeadBlock,
    DeadGate,
    FaultMap,
    StuckAt,
    exhaustive_verify,
    parse_vectors,
    run_cycle,
    run_sequence,
)

AND_OR_CELL = """\
input A
input B
ctrl Ct
gate g kind=POLY_AND_OR in=A,B ctrl=Ct out=Y
output Y=Y
"""


@pytest.fixture
def and_or():
    return parse(AND_OR_CELL)


def test_and_or_cell_switches_function(and_or):
    rec = run_cycle(and_or, {"A": 1, "B": 0}, {"Ct": 0})
    assert rec.outputs["Y"] == 0
    rec = run_cycle(and_or, {"A": 1, "B": 0}, {"Ct": 1})
    assert rec.outputs["Y"] == 1


def test_stuck_at_dominates_gate_output(and_or):
    faults = FaultMap((StuckAt("Y", 0),))
    rec = run_cycle(and_or, {"A": 1, "B": 0}, {"Ct": 1}, faults=faults)
    assert rec.outputs["Y"] == 0


def test_stuck_at_on_input_net(and_or):
    faults = FaultMap((StuckAt("A", 1),))
    rec = run_cycle(and_or, {"A": 0, "B": 0}, {"Ct": 1}, faults=faults)
    assert rec.outputs["Y"] == 1


def test_dead_gate_forces_low(and_or):
    faults = FaultMap((DeadGate("g"),))
    rec = run_cycle(and_or, {"A": 1, "B": 1}, {"Ct": 1}, faults=faults)
    assert rec.outputs["Y"] == 0
    assert rec.victim_levels["g"] == 0


def test_victim_levels_recorded(and_or):
    rec = run_cycle(and_or, {"A": 1, "B": 0}, {"Ct": 0})
    assert rec.victim_levels["g"] == Fraction(1, 3)  # one of three unit couplings


def test_missing_assignment_rejected(and_or):
    with pytest.raises(ValueError, match="missing"):
        run_cycle(and_or, {"A": 1}, {"Ct": 0})
    with pytest.raises(ValueError, match="missing"):
        run_cycle(and_or, {"A": 1, "B": 0}, {})


def test_unknown_fault_target_rejected(and_or):
    with pytest.raises(ValueError, match="unknown net"):
        run_cycle(and_or, {"A": 1, "B": 0}, {"Ct": 0}, faults=FaultMap((StuckAt("Z", 1),)))
    with pytest.raises(ValueError, match="unknown gate"):
        run_cycle(and_or, {"A": 1, "B": 0}, {"Ct": 0}, faults=FaultMap((DeadGate("nope"),)))
    with pytest.raises(ValueError, match="unknown block"):
        run_cycle(and_or, {"A": 1, "B": 0}, {"Ct": 0}, faults=FaultMap((DeadBlock("nope"),)))


def test_run_sequence_is_stateless(and_or):
    vectors = [
        {"A": 1, "B": 0, "Ct": 0},
        {"A": 1, "B": 0, "Ct": 1},
        {"A": 1, "B": 1, "Ct": 0},
    ]
    trace = run_sequence(and_or, vectors)
    reversed_trace = run_sequence(and_or, vectors[::-1])
    assert list(trace.cycles) == list(reversed_trace.cycles)[::-1]


def test_run_sequence_empty(and_or):
    assert run_sequence(and_or, []).cycles == ()


def test_determinism(and_or):
    vectors = [{"A": a, "B": b, "Ct": c} for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    t1 = run_sequence(and_or, vectors)
    t2 = run_sequence(and_or, vectors)
    assert t1 == t2


def test_msa_sequence_reference_vectors():
    net = build_msa()
    vectors = []
    for a, b in ((3, 2), (2, 1)):
        for mode in (MsaMode.MULTIPLIER, MsaMode.SORTER, MsaMode.ADDER):
            vectors.append(operand_assignment(a, b) | mode_assignment(mode))
    trace = run_sequence(net, vectors)
    outs = ["".join(str(c.outputs[p]) for p in ("Y3", "Y2", "Y1", "Y0")) for c in trace.cycles]
    assert outs == ["0110", "1110", "0101", "0010", "1100", "0011"]


def test_exhaustive_verify_counts(and_or):
    def and_oracle(assignment):
        return {"Y": assignment["A"] & assignment["B"]}

    report = exhaustive_verify(and_or, {"Ct": 0}, and_oracle)
    assert (report.total, report.passed) == (4, 4)
    assert report.ok

    report = exhaustive_verify(and_or, {"Ct": 1}, and_oracle)
    assert report.passed == 2  # or differs from and on the mixed inputs
    assert {tuple(sorted(f.inputs.items())) for f in report.failures} == {
        (("A", 0), ("B", 1)),
        (("A", 1), ("B", 0)),
    }


def test_fault_locality():
    # the dangling gate feeds no output; poisoning it changes nothing
    text = (
        "input A\ninput B\n"
        "gate main kind=CT_AND in=A,B out=Y\n"
        "gate dangling kind=CT_OR in=A,B out=unused\n"
        "output Y=Y\n"
    )
    net = parse(text)
    assert "unused" not in transitive_fanin(net, [n for _, n in net.outputs])
    for a in (0, 1):
        for b in (0, 1):
            clean = run_cycle(net, {"A": a, "B": b}, {})
            faulty = run_cycle(net, {"A": a, "B": b}, {}, faults=FaultMap((StuckAt("unused", 1),)))
            assert clean.outputs == faulty.outputs


def test_discrete_analog_agreement_on_msa():
    net = build_msa()
    for mode in MsaMode:
        for a in range(4):
            for b in range(4):
                d = run_cycle(net, operand_assignment(a, b), mode_assignment(mode))
                an = run_cycle(net, operand_assignment(a, b), mode_assignment(mode), mode="analog")
                assert d.outputs == an.outputs


def test_dead_block_fails_exhaustive_verify():
    net = build_msa()

    def oracle(assignment):
        a = 2 * assignment["A1"] + assignment["A0"]
        b = 2 * assignment["B1"] + assignment["B0"]
        value = a * b
        return {p: (value >> k) & 1 for p, k in zip(("Y3", "Y2", "Y1", "Y0"), (3, 2, 1, 0))}

    clean = exhaustive_verify(net, mode_assignment(MsaMode.MULTIPLIER), oracle)
    assert clean.ok
    hurt = exhaustive_verify(
        net,
        mode_assignment(MsaMode.MULTIPLIER),
        oracle,
        faults=FaultMap((DeadBlock("pp"),)),
    )
    assert not hurt.ok and len(hurt.failures) > 0


def test_parse_vectors(and_or):
    text = "# two cycles\nA=1 B=0 Ct=0\nA=1 B=0 Ct=1\n"
    vectors = parse_vectors(text, and_or)
    assert vectors == [{"A": 1, "B": 0, "Ct": 0}, {"A": 1, "B": 0, "Ct": 1}]
    with pytest.raises(ValueError, match="missing"):
        parse_vectors("A=1 B=0\n", and_or)
    with pytest.raises(ValueError, match="unknown net"):
        parse_vectors("A=1 B=0 Ct=0 Z=1\n", and_or)
    with pytest.raises(ValueError, match="duplicate"):
        parse_vectors("A=1 A=0 B=0 Ct=0\n", and_or)
