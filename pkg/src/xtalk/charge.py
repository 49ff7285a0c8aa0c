"""Charge-induction semantics of crosstalk threshold gates.

A crosstalk gate computes by summing capacitively induced charge from its
aggressor nets onto a floating victim net; a CMOS inverter then thresholds
the victim level. Coupling capacitances are normalized integers (one unit
of the gate family's coupling = 1), and all threshold decisions use exact
integer or rational arithmetic so that boundary cases never depend on
floating-point rounding.

Two evaluation modes exist:

* discrete - a gate fires iff the weighted sum of active aggressors meets
  the margin threshold (``fires``);
* analog   - the victim level is computed by charge sharing over the total
  coupling plus a parasitic term and compared against the inverter
  switching level (``analog_fires``).

With the per-gate default ``AnalogParams`` the two modes agree on every
input vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product

# Largest realizable normalized coupling weight. Module-level so callers
# exploring wider weight boxes can raise it.
MAX_WEIGHT = 8

Bit = int


def _as_bit(value, label: str) -> Bit:
    if value not in (0, 1):
        raise ValueError(f"{label} must be 0 or 1, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class CouplingWeights:
    """Normalized coupling capacitances of one gate.

    ``data_weights`` holds one nonnegative integer per data aggressor;
    ``ctrl_weight`` is the control-aggressor coupling (0 for a
    non-polymorphic gate). Weights are bounded by ``MAX_WEIGHT``.
    """

    data_weights: tuple[int, ...]
    ctrl_weight: int = 0

    def __post_init__(self):
        object.__setattr__(self, "data_weights", tuple(int(w) for w in self.data_weights))
        object.__setattr__(self, "ctrl_weight", int(self.ctrl_weight))
        if not self.data_weights:
            raise ValueError("a gate needs at least one data aggressor")
        if any(w < 0 for w in self.data_weights) or self.ctrl_weight < 0:
            raise ValueError("coupling weights must be nonnegative")
        if not any(w > 0 for w in self.data_weights):
            raise ValueError("at least one data weight must be positive")
        if any(w > MAX_WEIGHT for w in self.data_weights) or self.ctrl_weight > MAX_WEIGHT:
            raise ValueError(f"coupling weights are bounded by MAX_WEIGHT={MAX_WEIGHT}")

    @property
    def arity(self) -> int:
        return len(self.data_weights)

    @property
    def has_ctrl(self) -> bool:
        return self.ctrl_weight > 0

    @property
    def total(self) -> int:
        """Total coupling seen by the victim (data plus control)."""
        return sum(self.data_weights) + self.ctrl_weight


@dataclass(frozen=True)
class MarginSpec:
    """Minimum total active coupling that flips the first-stage inverter."""

    theta: int

    def __post_init__(self):
        object.__setattr__(self, "theta", int(self.theta))
        if self.theta < 1:
            raise ValueError("margin threshold must be at least 1")


@dataclass(frozen=True)
class AnalogParams:
    """Charge-sharing parameters for analog evaluation.

    ``c_parasitic`` is the victim-to-ground capacitance in the same
    normalized unit as the coupling weights; ``v_threshold`` is the
    inverter switching level as a fraction of the supply. Values are kept
    as exact rationals.
    """

    c_parasitic: Fraction = Fraction(0)
    v_threshold: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "c_parasitic", Fraction(self.c_parasitic))
        object.__setattr__(self, "v_threshold", Fraction(self.v_threshold))
        if self.c_parasitic < 0:
            raise ValueError("parasitic capacitance must be nonnegative")
        if not (0 < self.v_threshold < 1):
            raise ValueError("inverter threshold must lie strictly between 0 and 1")


class Phase(Enum):
    DISCHARGE = "discharge"
    EVALUATION = "evaluation"


@dataclass(frozen=True)
class VictimState:
    """Victim-net level and clock phase.

    During the discharge phase the victim is shorted to ground, so the
    level is pinned to 0; evaluation levels live in [0, 1].
    """

    level: Fraction
    phase: Phase

    def __post_init__(self):
        object.__setattr__(self, "level", Fraction(self.level))
        if not (0 <= self.level <= 1):
            raise ValueError("victim level must lie in [0, 1]")
        if self.phase is Phase.DISCHARGE and self.level != 0:
            raise ValueError("victim level must be 0 in the discharge phase")

    @classmethod
    def discharged(cls) -> "VictimState":
        return cls(Fraction(0), Phase.DISCHARGE)


def default_analog(weights: CouplingWeights, margin: MarginSpec) -> AnalogParams:
    """Analog parameters that reproduce the discrete behavior of a gate.

    Places the inverter threshold halfway between the largest non-firing
    and smallest firing level, (theta - 1/2) / total, with no parasitic
    load, which yields symmetric noise margins of 1/(2*total) or better.
    """
    total = weights.total
    return AnalogParams(Fraction(0), Fraction(2 * margin.theta - 1, 2 * total))


def active_coupling(weights: CouplingWeights, data_inputs, ctrl: Bit) -> int:
    """Total coupling through which the victim sees rising transitions."""
    inputs = tuple(data_inputs)
    if len(inputs) != weights.arity:
        raise ValueError(
            f"got {len(inputs)} inputs for a gate with {weights.arity} data aggressors"
        )
    bits = tuple(_as_bit(x, "data input") for x in inputs)
    c = _as_bit(ctrl, "ctrl input")
    return sum(w * x for w, x in zip(weights.data_weights, bits)) + weights.ctrl_weight * c


def induced_level(
    weights: CouplingWeights, data_inputs, ctrl: Bit, analog: AnalogParams
) -> Fraction:
    """Normalized victim voltage induced by the active aggressors.

    Assumes the victim was discharged to 0 before evaluation, so only
    rising input transitions contribute. Charge sharing gives
    active / (total + c_parasitic).
    """
    active = active_coupling(weights, data_inputs, ctrl)
    return Fraction(active) / (weights.total + analog.c_parasitic)


def fires(weights: CouplingWeights, margin: MarginSpec, data_inputs, ctrl: Bit) -> Bit:
    """Discrete-mode decision: 1 iff active coupling >= theta (inclusive)."""
    return 1 if active_coupling(weights, data_inputs, ctrl) >= margin.theta else 0


def analog_fires(
    weights: CouplingWeights, data_inputs, ctrl: Bit, analog: AnalogParams
) -> Bit:
    """Analog-mode decision: 1 iff the induced level reaches v_threshold.

    The exact-boundary case (level == v_threshold) fires.
    """
    return 1 if induced_level(weights, data_inputs, ctrl, analog) >= analog.v_threshold else 0


def stage_output(fire: Bit, n_stages: int) -> Bit:
    """Output after the inverter chain: one stage inverts, two restore."""
    if n_stages not in (1, 2):
        raise ValueError(f"stage count must be 1 or 2, got {n_stages!r}")
    f = _as_bit(fire, "fire")
    return 1 - f if n_stages == 1 else f


def noise_margins(
    weights: CouplingWeights, margin: MarginSpec, analog: AnalogParams
) -> tuple[Fraction, Fraction]:
    """Distance of the analog levels from the inverter threshold.

    Returns ``(low_margin, high_margin)`` where high_margin is the
    smallest firing level minus v_threshold and low_margin is v_threshold
    minus the largest non-firing level, minimized/maximized over every
    input and control assignment.
    """
    firing_levels = []
    quiet_levels = []
    ctrl_values = (0, 1) if weights.has_ctrl else (0,)
    for bits in product((0, 1), repeat=weights.arity):
        for c in ctrl_values:
            level = induced_level(weights, bits, c, analog)
            if fires(weights, margin, bits, c):
                firing_levels.append(level)
            else:
                quiet_levels.append(level)
    high = min(firing_levels) - analog.v_threshold
    low = analog.v_threshold - max(quiet_levels)
    return low, high


def analog_valid(weights: CouplingWeights, margin: MarginSpec, analog: AnalogParams) -> bool:
    """True iff analog evaluation reproduces the discrete decisions.

    Since the exact boundary fires, the firing side may sit on the
    threshold (high_margin >= 0) but every non-firing level must stay
    strictly below it (low_margin > 0).
    """
    low, high = noise_margins(weights, margin, analog)
    return low > 0 and high >= 0
