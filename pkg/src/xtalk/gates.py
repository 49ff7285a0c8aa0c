"""Canonical crosstalk gate library.

Each gate is a ``GateSpec``: coupling weights, a margin threshold, and an
inverter-stage count (one stage gives the inverting response, two stages
the non-inverting one). Polymorphic gates carry a control aggressor whose
extra charge biases the victim, switching the gate between two boolean
functions.

Truth tables throughout this package are indexed LSB-first: entry ``i``
is the output for the input vector whose j-th input equals bit j of
``i`` (the first input is the least significant bit).
"""

from __future__ import annotations

from enum import Enum
from dataclasses import dataclass
from typing import Callable

from .charge import (
    AnalogParams,
    Bit,
    CouplingWeights,
    MarginSpec,
    analog_fires,
    default_analog,
    fires,
    stage_output,
)


class GateKind(Enum):
    CT_NAND = "CT_NAND"
    CT_NOR = "CT_NOR"
    CT_AND = "CT_AND"
    CT_OR = "CT_OR"
    CT_AOI21 = "CT_AOI21"
    CT_AO21 = "CT_AO21"
    POLY_AND_OR = "POLY_AND_OR"
    POLY_OA21_AO21 = "POLY_OA21_AO21"
    POLY_AND3_AO21 = "POLY_AND3_AO21"
    POLY_AO21_OR3 = "POLY_AO21_OR3"
    INV = "INV"
    GENERIC_CT = "GENERIC_CT"


def index_to_inputs(index: int, arity: int) -> tuple[Bit, ...]:
    """Input vector for a truth-table index (first input = LSB)."""
    return tuple((index >> j) & 1 for j in range(arity))


def input_vectors(arity: int):
    """All input vectors in ascending truth-table order."""
    return (index_to_inputs(i, arity) for i in range(1 << arity))


@dataclass(frozen=True)
class GateSpec:
    """Complete behavioral description of one crosstalk gate."""

    kind: GateKind
    weights: CouplingWeights
    margin: MarginSpec
    n_stages: int

    def __post_init__(self):
        if self.n_stages not in (1, 2):
            raise ValueError("a crosstalk gate has one or two inverter stages")
        if self.margin.theta > self.weights.total:
            raise ValueError(
                f"threshold {self.margin.theta} exceeds total coupling {self.weights.total}"
            )
        if self.weights.has_ctrl:
            if gate_truth_table(self, 0) == gate_truth_table(self, 1):
                raise ValueError(
                    "control aggressor does not change the function; drop it or retune"
                )

    @property
    def arity(self) -> int:
        return self.weights.arity

    @property
    def has_ctrl(self) -> bool:
        return self.weights.has_ctrl


def gate_truth_table(spec: GateSpec, ctrl: Bit) -> tuple[Bit, ...]:
    """Discrete-mode truth table of a gate at a fixed control value."""
    return tuple(
        stage_output(fires(spec.weights, spec.margin, bits, ctrl), spec.n_stages)
        for bits in input_vectors(spec.arity)
    )


def gate_truth_table_analog(
    spec: GateSpec, ctrl: Bit, analog: AnalogParams | None = None
) -> tuple[Bit, ...]:
    """Analog-mode truth table; defaults to the gate's own AnalogParams."""
    params = analog if analog is not None else default_analog(spec.weights, spec.margin)
    return tuple(
        stage_output(analog_fires(spec.weights, bits, ctrl, params), spec.n_stages)
        for bits in input_vectors(spec.arity)
    )


# kind -> (data weights, ctrl weight, theta, stages)
_CANONICAL: dict[GateKind, tuple[tuple[int, ...], int, int, int]] = {
    GateKind.CT_NAND: ((1, 1), 0, 2, 1),
    GateKind.CT_NOR: ((1, 1), 0, 1, 1),
    GateKind.CT_AND: ((1, 1), 0, 2, 2),
    GateKind.CT_OR: ((1, 1), 0, 1, 2),
    GateKind.CT_AOI21: ((1, 1, 2), 0, 2, 1),
    GateKind.CT_AO21: ((1, 1, 2), 0, 2, 2),
    GateKind.POLY_AND_OR: ((1, 1), 1, 2, 2),
    GateKind.POLY_OA21_AO21: ((1, 1, 2), 1, 3, 2),
    GateKind.POLY_AND3_AO21: ((1, 1, 2), 2, 4, 2),
    GateKind.POLY_AO21_OR3: ((1, 1, 2), 1, 2, 2),
    GateKind.INV: ((1,), 0, 1, 1),
}


def build_gate(kind: GateKind) -> GateSpec:
    """Canonical spec for a named gate kind.

    GENERIC_CT has no canonical parametrization; construct a GateSpec
    directly with explicit weights, threshold, and stage count.
    """
    if kind is GateKind.GENERIC_CT:
        raise ValueError("GENERIC_CT requires explicit weights, theta, and stages")
    data, ctrl, theta, stages = _CANONICAL[kind]
    return GateSpec(kind, CouplingWeights(data, ctrl), MarginSpec(theta), stages)


def transistor_count(spec: GateSpec) -> int:
    """Transistors per gate: inverter pair per stage plus one discharge

    transistor for a crosstalk gate; a plain inverter is just the pair.
    """
    if spec.kind is GateKind.INV:
        return 2
    return 2 * spec.n_stages + 1


# Named boolean functions, keyed by what the gate computes. Argument
# order matches the gate's data-input order (first input is LSB of the
# truth-table index).
BOOLEAN_FUNCTIONS: dict[str, tuple[int, Callable[..., Bit]]] = {
    "inv": (1, lambda a: 1 - a),
    "buf": (1, lambda a: a),
    "and2": (2, lambda a, b: a & b),
    "or2": (2, lambda a, b: a | b),
    "nand2": (2, lambda a, b: 1 - (a & b)),
    "nor2": (2, lambda a, b: 1 - (a | b)),
    "xor2": (2, lambda a, b: a ^ b),
    "and3": (3, lambda a, b, c: a & b & c),
    "or3": (3, lambda a, b, c: a | b | c),
    "ao21": (3, lambda a, b, c: (a & b) | c),
    "oa21": (3, lambda a, b, c: (a | b) & c),
    "aoi21": (3, lambda a, b, c: 1 - ((a & b) | c)),
    "maj3": (3, lambda a, b, c: 1 if a + b + c >= 2 else 0),
}


def function_table(name: str) -> tuple[Bit, ...]:
    """Truth table of a named boolean function (LSB-first indexing)."""
    arity, fn = BOOLEAN_FUNCTIONS[name]
    return tuple(fn(*bits) for bits in input_vectors(arity))


# Expected behavior of the library gates, as named functions. Fixed
# gates map to a single name, polymorphic gates to (ctrl=0, ctrl=1).
FIXED_GATE_FUNCTIONS: dict[GateKind, str] = {
    GateKind.CT_NAND: "nand2",
    GateKind.CT_NOR: "nor2",
    GateKind.CT_AND: "and2",
    GateKind.CT_OR: "or2",
    GateKind.CT_AOI21: "aoi21",
    GateKind.CT_AO21: "ao21",
    GateKind.INV: "inv",
}

POLY_GATE_FUNCTIONS: dict[GateKind, tuple[str, str]] = {
    GateKind.POLY_AND_OR: ("and2", "or2"),
    GateKind.POLY_OA21_AO21: ("oa21", "ao21"),
    GateKind.POLY_AND3_AO21: ("and3", "ao21"),
    GateKind.POLY_AO21_OR3: ("ao21", "or3"),
}
