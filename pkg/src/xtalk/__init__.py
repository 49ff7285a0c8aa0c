"""Crosstalk threshold logic: simulation, synthesis, and fault recovery.

Computation by capacitive coupling: aggressor nets induce charge on a
floating victim net, and an inverter thresholds the summed level. This
package models those gates behaviorally (exact integer/rational
arithmetic), provides a netlist format and two-phase simulator with
fault injection, searches integer coupling weights realizing boolean
functions, builds a polymorphic multiplier/sorter/adder block, and runs
the block-bank fault discovery and recovery scheme on top.
"""

from .charge import (
    AnalogParams,
    CouplingWeights,
    MarginSpec,
    Phase,
    VictimState,
    analog_fires,
    analog_valid,
    default_analog,
    fires,
    induced_level,
    noise_margins,
    stage_output,
)
from .gates import (
    GateKind,
    GateSpec,
    build_gate,
    gate_truth_table,
    gate_truth_table_analog,
    transistor_count,
)
from .synth import (
    Counterexample,
    DegenerateFunctionError,
    SynthProblem,
    solve_polymorphic,
    solve_threshold,
    validate_realization,
)
from .netlist import (
    GateInstance,
    Netlist,
    NetlistError,
    census,
    parse,
    serialize,
    topo_order,
    total_transistors,
    transitive_fanin,
)
from .sim import (
    DeadBlock,
    DeadGate,
    FaultMap,
    SimTrace,
    StuckAt,
    exhaustive_verify,
    parse_vectors,
    run_cycle,
    run_sequence,
)
from .msa import (
    MsaMode,
    build_msa,
    build_msa_baseline,
    mode_controls,
    oracle_add,
    oracle_multiply,
    oracle_sort,
)
from .runtime import (
    BankBlock,
    BlockBank,
    Health,
    HealthTable,
    Instruction,
    UnrecoverableError,
    discover,
    dispatch,
    run_workload,
)

__version__ = "0.1.0"
