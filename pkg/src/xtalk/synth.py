"""Integer weight search for threshold and polymorphic realizations.

Given a truth table (or a pair switched by a control aggressor), search
the box of integer coupling weights for an assignment and threshold that
realize it. The search is exhaustive over the weight box, so a ``None``
result is a proof that no realization exists within the bound.

Weight vectors range over 1..max_weight per data aggressor (a zero
weight would mean the input is not wired at all), the control weight
over 1..max_weight, and for each weight vector the threshold is chosen
directly from the gap between the largest non-firing and the smallest
firing weighted sum. Among all solutions the one minimizing total
coupling is returned, with ties broken by the lexicographically
smallest weight vector, then the smallest control weight and threshold,
so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import charge
from .charge import Bit, CouplingWeights, MarginSpec
from .gates import GateKind, GateSpec, gate_truth_table, index_to_inputs

MAX_SYNTH_ARITY = 5


class DegenerateFunctionError(ValueError):
    """A constant truth table; no margin threshold can realize it."""


def _check_table(table, label: str) -> tuple[Bit, ...]:
    t = tuple(int(b) for b in table)
    n = len(t).bit_length() - 1
    if len(t) != 1 << n or not t:
        raise ValueError(f"{label} must have a power-of-two number of entries")
    if any(b not in (0, 1) for b in t):
        raise ValueError(f"{label} entries must be bits")
    if all(b == t[0] for b in t):
        raise DegenerateFunctionError(f"{label} is constant; nothing to synthesize")
    return t


@dataclass(frozen=True)
class SynthProblem:
    """A synthesis request: one table, or a (ctrl=0, ctrl=1) pair."""

    f0: tuple[Bit, ...]
    f1: tuple[Bit, ...] | None = None
    max_weight: int = 8

    def __post_init__(self):
        f0 = _check_table(self.f0, "f0")
        object.__setattr__(self, "f0", f0)
        if self.f1 is not None:
            f1 = _check_table(self.f1, "f1")
            if len(f1) != len(f0):
                raise ValueError("f0 and f1 must have the same arity")
            if f1 == f0:
                raise ValueError("f0 and f1 are identical; the control would be useless")
            object.__setattr__(self, "f1", f1)
        if self.arity > MAX_SYNTH_ARITY:
            raise ValueError(f"synthesis is limited to {MAX_SYNTH_ARITY} inputs")
        if self.max_weight < 1:
            raise ValueError("max_weight must be positive")
        if self.max_weight > charge.MAX_WEIGHT:
            raise ValueError(
                f"max_weight {self.max_weight} exceeds the realizable bound "
                f"charge.MAX_WEIGHT={charge.MAX_WEIGHT}"
            )

    @property
    def arity(self) -> int:
        return len(self.f0).bit_length() - 1


def is_monotone(table) -> bool:
    """True iff flipping any input 0->1 never drops the output."""
    t = tuple(table)
    n = len(t).bit_length() - 1
    for i in range(len(t)):
        for j in range(n):
            if not (i >> j) & 1 and t[i] > t[i | (1 << j)]:
                return False
    return True


def _sum_profile(sums, table):
    """(max non-firing sum, min firing sum) of a candidate weight vector."""
    max_zero = -1
    min_one = None
    for s, bit in zip(sums, table):
        if bit:
            if min_one is None or s < min_one:
                min_one = s
        elif s > max_zero:
            max_zero = s
    return max_zero, min_one


def solve_threshold(problem: SynthProblem) -> tuple[tuple[int, ...], int] | None:
    """Weights and threshold realizing f0, or None if infeasible.

    A realization satisfies [sum(w_i * x_i) >= theta] == f0(x) for every
    input vector x.
    """
    if problem.f1 is not None:
        raise ValueError("problem has an f1 table; use solve_polymorphic")
    if not is_monotone(problem.f0):
        return None
    n = problem.arity
    vectors = [index_to_inputs(i, n) for i in range(1 << n)]
    best = None
    for w in product(range(1, problem.max_weight + 1), repeat=n):
        sums = [sum(wj * xj for wj, xj in zip(w, x)) for x in vectors]
        max_zero, min_one = _sum_profile(sums, problem.f0)
        if max_zero < min_one:
            theta = max_zero + 1
            key = (sum(w), w, theta)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    _, w, theta = best
    return w, theta


def solve_polymorphic(problem: SynthProblem) -> GateSpec | None:
    """Single-victim polymorphic realization of (f0, f1), or None.

    The control aggressor only adds charge, so f1 must dominate f0
    pointwise and both tables must be monotone; those necessary
    conditions are checked before the exhaustive search.
    """
    if problem.f1 is None:
        raise ValueError("problem has no f1 table; use solve_threshold")
    f0, f1 = problem.f0, problem.f1
    if any(a > b for a, b in zip(f0, f1)):
        return None
    if not (is_monotone(f0) and is_monotone(f1)):
        return None
    n = problem.arity
    mw = problem.max_weight
    vectors = [index_to_inputs(i, n) for i in range(1 << n)]
    best = None
    for w in product(range(1, mw + 1), repeat=n):
        sums = [sum(wj * xj for wj, xj in zip(w, x)) for x in vectors]
        mz0, mo0 = _sum_profile(sums, f0)
        mz1, mo1 = _sum_profile(sums, f1)
        if mz0 >= mo0 or mz1 >= mo1:
            continue
        for w_ct in range(1, mw + 1):
            lo = max(mz0, mz1 + w_ct)
            hi = min(mo0, mo1 + w_ct)
            if lo < hi:
                theta = lo + 1
                key = (sum(w) + w_ct, w, w_ct, theta)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    _, w, w_ct, theta = best
    return GateSpec(
        GateKind.GENERIC_CT, CouplingWeights(w, w_ct), MarginSpec(theta), n_stages=2
    )


@dataclass(frozen=True)
class Counterexample:
    """First input where a claimed realization disagrees with its table."""

    inputs: tuple[Bit, ...]
    ctrl: Bit
    expected: Bit
    actual: Bit


def validate_realization(spec: GateSpec, f0, f1=None) -> Counterexample | None:
    """Exhaustively check a gate against one or two truth tables.

    Returns None on success, else the first offending input vector in
    (ctrl, ascending index) order.
    """
    tables = [(0, tuple(int(b) for b in f0))]
    if f1 is not None:
        tables.append((1, tuple(int(b) for b in f1)))
    for ctrl, expected in tables:
        if len(expected) != 1 << spec.arity:
            raise ValueError("table length does not match the gate arity")
        actual = gate_truth_table(spec, ctrl)
        for i, (want, got) in enumerate(zip(expected, actual)):
            if want != got:
                return Counterexample(index_to_inputs(i, spec.arity), ctrl, want, got)
    return None
