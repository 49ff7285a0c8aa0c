"""Synthesizing coupling weights from truth tables.

Tuning coupling capacitances gives the freedom to realize any linearly
separable function as one gate, and any dominated pair of them as one
polymorphic gate. The search is exhaustive over the integer weight box,
so infeasibility results are proofs, not timeouts.

Truth-table strings are LSB-first: character i is the output for the
input vector encoded by i, first input in bit 0.
"""

from xtalk.gates import function_table
from xtalk.synth import SynthProblem, solve_polymorphic, solve_threshold, validate_realization


def table_str(table):
    return "".join(map(str, table))


print("== single-function synthesis ==")
for name in ("and2", "or2", "maj3", "ao21"):
    table = function_table(name)
    weights, theta = solve_threshold(SynthProblem(table))
    print(f"{name:5s} {table_str(table):8s} -> weights={weights} theta={theta}")

xor = function_table("xor2")
print(f"xor2  {table_str(xor):8s} -> {solve_threshold(SynthProblem(xor))} "
      "(not linearly separable at any weights <= 8)")

print()
print("== polymorphic pairs ==")
pairs = [("and2", "or2"), ("oa21", "ao21"), ("and3", "ao21"), ("ao21", "or3")]
for n0, n1 in pairs:
    f0, f1 = function_table(n0), function_table(n1)
    spec = solve_polymorphic(SynthProblem(f0, f1))
    w = spec.weights
    print(f"{n0}/{n1}: weights={w.data_weights} ctrl_weight={w.ctrl_weight} "
          f"theta={spec.margin.theta}")
    assert validate_realization(spec, f0, f1) is None

print()
print("== a control aggressor can only add charge ==")
f0, f1 = function_table("and2"), function_table("nand2")
print(f"and2 -> nand2: {solve_polymorphic(SynthProblem(f0, f1))} "
      "(f1 would have to drop the all-high entry)")
