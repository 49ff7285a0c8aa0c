"""Transistor-count comparison across implementation styles.

A crosstalk gate costs one inverter pair per stage plus a discharge
transistor, so every two-function polymorphic cell lands at 5
transistors. The CMOS and nanowire-FET columns are published reference
values for the same functionality (multiplexed standalone circuits and
polarity-configurable transistors respectively); they are reported
constants, not modeled here.
"""

from xtalk.cli import TABLE2_REPORTED, _POLY_ROW_KINDS
from xtalk.gates import build_gate, transistor_count
from xtalk.msa import build_msa
from xtalk.netlist import total_transistors

header = f"{'circuit':26s} {'cmos':>5s} {'nwfet':>6s} {'xtalk(rep)':>11s} {'xtalk(here)':>12s}"
print(header)
print("-" * len(header))
for name, cmos, nwfet, reported in TABLE2_REPORTED:
    if name in _POLY_ROW_KINDS:
        computed = transistor_count(build_gate(_POLY_ROW_KINDS[name]))
    else:
        computed = total_transistors(build_msa())
    print(f"{name:26s} {cmos:5d} {nwfet:6d} {reported:11d} {computed:12d}")

print()
msa_reported = 155
print(f"block-level reduction (from reported counts): "
      f"{100 * (1 - msa_reported / 408):.0f}% vs cmos, "
      f"{100 * (1 - msa_reported / 216):.0f}% vs nwfet")
print(f"this construction: {total_transistors(build_msa())} transistors "
      f"({100 * (1 - total_transistors(build_msa()) / 408):.0f}% below the cmos reference)")
