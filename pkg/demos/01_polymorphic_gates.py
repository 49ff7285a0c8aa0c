"""Tour of the crosstalk gate library.

Each polymorphic cell realizes two boolean functions on the same victim
net: the control aggressor injects extra charge, lowering the effective
threshold seen by the data inputs. This script prints every library
gate's parametrization, its truth tables at both control values, and the
analog noise margins under the per-gate default inverter threshold.
"""

from xtalk.charge import default_analog, noise_margins
from xtalk.gates import (
    FIXED_GATE_FUNCTIONS,
    POLY_GATE_FUNCTIONS,
    build_gate,
    gate_truth_table,
    input_vectors,
)


def show_table(spec, ctrl, label):
    table = gate_truth_table(spec, ctrl)
    rows = " ".join(
        f"{''.join(map(str, bits))}->{out}"
        for bits, out in zip(input_vectors(spec.arity), table)
    )
    print(f"    ctrl={ctrl} ({label:5s}): {rows}")


def describe(kind):
    spec = build_gate(kind)
    w = spec.weights
    print(f"{kind.value}: weights={w.data_weights} ctrl_weight={w.ctrl_weight} "
          f"theta={spec.margin.theta} stages={spec.n_stages}")
    return spec


print("== fixed-function gates ==")
for kind, name in FIXED_GATE_FUNCTIONS.items():
    spec = describe(kind)
    show_table(spec, 0, name)

print()
print("== polymorphic gates (control aggressor switches the function) ==")
for kind, (name0, name1) in POLY_GATE_FUNCTIONS.items():
    spec = describe(kind)
    show_table(spec, 0, name0)
    show_table(spec, 1, name1)
    params = default_analog(spec.weights, spec.margin)
    low, high = noise_margins(spec.weights, spec.margin, params)
    print(f"    analog: v_threshold={params.v_threshold} margins low={low} high={high}")
