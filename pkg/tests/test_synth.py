from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from xtalk.gates import GateKind, GateSpec, build_gate, function_table
from xtalk.charge import CouplingWeights, MarginSpec
from xtalk.synth import (
    Counterexample,
    DegenerateFunctionError,
    SynthProblem,
    is_monotone,
    solve_polymorphic,
    solve_threshold,
    validate_realization,
)


def brute_force_threshold(f0, max_weight=8):
    """Independent oracle: try every (weights, theta) and test directly."""
    n = len(f0).bit_length() - 1
    for w in product(range(1, max_weight + 1), repeat=n):
        for theta in range(1, sum(w) + 1):
            ok = True
            for i, bit in enumerate(f0):
                s = sum(w[j] for j in range(n) if (i >> j) & 1)
                if (1 if s >= theta else 0) != bit:
                    ok = False
                    break
            if ok:
                return w, theta
    return None


def brute_force_polymorphic(f0, f1, max_weight=8):
    n = len(f0).bit_length() - 1
    for w in product(range(1, max_weight + 1), repeat=n):
        for w_ct in range(1, max_weight + 1):
            for theta in range(1, sum(w) + w_ct + 1):
                ok = True
                for ctrl, table in ((0, f0), (1, f1)):
                    for i, bit in enumerate(table):
                        s = sum(w[j] for j in range(n) if (i >> j) & 1) + w_ct * ctrl
                        if (1 if s >= theta else 0) != bit:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return w, w_ct, theta
    return None


def test_and2_canonical():
    assert solve_threshold(SynthProblem((0, 0, 0, 1))) == ((1, 1), 2)


def test_or2_canonical():
    assert solve_threshold(SynthProblem((0, 1, 1, 1))) == ((1, 1), 1)


def test_xor_is_not_a_threshold_function():
    xor = (0, 1, 1, 0)
    assert solve_threshold(SynthProblem(xor)) is None
    assert brute_force_threshold(xor) is None


def test_constant_tables_rejected():
    with pytest.raises(DegenerateFunctionError):
        SynthProblem((1, 1, 1, 1))
    with pytest.raises(DegenerateFunctionError):
        SynthProblem((0, 0, 0, 0))
    with pytest.raises(DegenerateFunctionError):
        SynthProblem((0, 0, 0, 1), (1, 1, 1, 1))


def test_identical_pair_rejected():
    with pytest.raises(ValueError):
        SynthProblem((0, 0, 0, 1), (0, 0, 0, 1))


def test_and_or_pair_canonical():
    spec = solve_polymorphic(SynthProblem(function_table("and2"), function_table("or2")))
    assert spec.weights.data_weights == (1, 1)
    assert spec.weights.ctrl_weight == 1
    assert spec.margin.theta == 2


def test_oa21_ao21_pair_canonical():
    spec = solve_polymorphic(SynthProblem(function_table("oa21"), function_table("ao21")))
    assert spec.weights.data_weights == (1, 1, 2)
    assert spec.weights.ctrl_weight == 1
    assert spec.margin.theta == 3


def test_control_cannot_remove_charge():
    # f1 must dominate f0: and2 -> nand2 drops the (1,1) entry
    assert solve_polymorphic(SynthProblem(function_table("and2"), function_table("nand2"))) is None
    assert brute_force_polymorphic(function_table("and2"), function_table("nand2")) is None


def test_validate_pass():
    spec = build_gate(GateKind.POLY_AND_OR)
    assert validate_realization(spec, function_table("and2"), function_table("or2")) is None


def test_validate_reports_first_counterexample():
    spec = build_gate(GateKind.POLY_AND_OR)
    cx = validate_realization(spec, function_table("or2"), function_table("and2"))
    assert cx == Counterexample(inputs=(1, 0), ctrl=0, expected=1, actual=0)


def test_validate_scaled_generic_realization():
    spec = GateSpec(GateKind.GENERIC_CT, CouplingWeights((2, 2), 2), MarginSpec(4), 2)
    assert validate_realization(spec, function_table("and2"), function_table("or2")) is None


def test_is_monotone():
    assert is_monotone(function_table("and2"))
    assert is_monotone(function_table("ao21"))
    assert not is_monotone(function_table("xor2"))
    assert not is_monotone(function_table("nand2"))


def all_tables(n):
    size = 1 << n
    for value in range(1 << size):
        yield tuple((value >> i) & 1 for i in range(size))


def test_threshold_matches_oracle_on_all_2_input_tables():
    for table in all_tables(2):
        if len(set(table)) == 1:
            continue
        got = solve_threshold(SynthProblem(table))
        expect = brute_force_threshold(table)
        assert (got is None) == (expect is None), table
        if got is not None:
            w, theta = got
            spec = GateSpec(GateKind.GENERIC_CT, CouplingWeights(w), MarginSpec(theta), 2)
            assert validate_realization(spec, table) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, (1 << 8) - 2))
def test_threshold_matches_oracle_on_random_3_input_tables(value):
    table = tuple((value >> i) & 1 for i in range(8))
    if len(set(table)) == 1:
        return
    got = solve_threshold(SynthProblem(table, max_weight=4))
    expect = brute_force_threshold(table, max_weight=4)
    assert (got is None) == (expect is None)
    if got is not None:
        w, theta = got
        spec = GateSpec(GateKind.GENERIC_CT, CouplingWeights(w), MarginSpec(theta), 2)
        assert validate_realization(spec, table) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, (1 << 4) - 2), st.integers(1, (1 << 4) - 2))
def test_polymorphic_solutions_always_validate(v0, v1):
    f0 = tuple((v0 >> i) & 1 for i in range(4))
    f1 = tuple((v1 >> i) & 1 for i in range(4))
    if f0 == f1 or len(set(f0)) == 1 or len(set(f1)) == 1:
        return
    spec = solve_polymorphic(SynthProblem(f0, f1))
    if spec is not None:
        assert validate_realization(spec, f0, f1) is None
    if any(a > b for a, b in zip(f0, f1)):
        assert spec is None
