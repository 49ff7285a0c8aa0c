"""Polymorphic 2-bit multiplier / sorter / adder block.

One circuit over inputs A1,A0,B1,B0 delivers three arithmetic functions
selected by two control nets (C1,C2): 01 multiplies, 11 sorts, 10 adds.
The sorter is a descending bit-sort of the four input bits, i.e. the
thermometer code of their population count. The encoding 00 is reserved:
the circuit produces some output but no function is defined for it.

The circuit shares one partial-product array and one xor chain across
modes. Mode masks derived from C1,C2 steer genuinely polymorphic gates:
a 4-input threshold gate that swings between AND4 and OR4, an AND/OR
cell for the low output, and projection/or selector gates on the middle
outputs. ``build_msa_baseline`` provides the conventional alternative
(three independent fixed-function circuits behind an output multiplexer)
under the same accounting model, for cost comparison.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Mapping

from .charge import Bit
from .netlist import Netlist, parse


class MsaMode(Enum):
    MULTIPLIER = "multiply"
    SORTER = "sort"
    ADDER = "add"


# (C1, C2) encodings; (0, 0) is reserved.
MODE_CONTROLS: dict[MsaMode, tuple[Bit, Bit]] = {
    MsaMode.MULTIPLIER: (0, 1),
    MsaMode.SORTER: (1, 1),
    MsaMode.ADDER: (1, 0),
}

MODE_BY_NAME = {m.value: m for m in MsaMode} | {
    "M": MsaMode.MULTIPLIER,
    "S": MsaMode.SORTER,
    "A": MsaMode.ADDER,
    "mul": MsaMode.MULTIPLIER,
}

INPUT_PORTS = ("A1", "A0", "B1", "B0")
CTRL_PORTS = ("C1", "C2")
OUTPUT_PORTS = ("Y3", "Y2", "Y1", "Y0")


def mode_controls(mode: MsaMode) -> tuple[Bit, Bit]:
    return MODE_CONTROLS[mode]


def to_bits(value: int, width: int) -> tuple[Bit, ...]:
    """Unsigned value as a bit tuple, most significant first."""
    if not 0 <= value < 1 << width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def from_bits(bits) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def oracle_multiply(a: int, b: int) -> tuple[Bit, Bit, Bit, Bit]:
    """(Y3..Y0) = a * b for 2-bit operands."""
    return to_bits(a * b, 4)


def oracle_add(a: int, b: int) -> tuple[Bit, Bit, Bit, Bit]:
    """(Y3..Y0) = a + b, zero-extended."""
    return to_bits(a + b, 4)


def oracle_sort(a: int, b: int) -> tuple[Bit, Bit, Bit, Bit]:
    """Descending bit-sort of {a1, a0, b1, b0}: ones first, zeros after."""
    count = bin(a).count("1") + bin(b).count("1")
    return tuple(1 if i < count else 0 for i in range(4))


ORACLES: dict[MsaMode, Callable[[int, int], tuple[Bit, Bit, Bit, Bit]]] = {
    MsaMode.MULTIPLIER: oracle_multiply,
    MsaMode.SORTER: oracle_sort,
    MsaMode.ADDER: oracle_add,
}


def operand_assignment(a: int, b: int) -> dict[str, Bit]:
    a1, a0 = to_bits(a, 2)
    b1, b0 = to_bits(b, 2)
    return {"A1": a1, "A0": a0, "B1": b1, "B0": b0}


def mode_assignment(mode: MsaMode) -> dict[str, Bit]:
    c1, c2 = mode_controls(mode)
    return {"C1": c1, "C2": c2}


def port_oracle(mode: MsaMode) -> Callable[[Mapping[str, Bit]], dict[str, Bit]]:
    """Oracle in the form exhaustive_verify expects: assignment -> ports."""
    fn = ORACLES[mode]

    def oracle(assignment: Mapping[str, Bit]) -> dict[str, Bit]:
        a = from_bits((assignment["A1"], assignment["A0"]))
        b = from_bits((assignment["B1"], assignment["B0"]))
        return dict(zip(OUTPUT_PORTS, fn(a, b)))

    return oracle


# Net roles: p.. partial products, t. popcount thresholds, m. mode masks.
# The sorter outputs are exact 4-input threshold gates; xor cells are an
# or-and gate masked by the pair's nand.
_MSA_SOURCE = """
input A1
input A0
input B1
input B0
ctrl C1
ctrl C2
block ctl {
    gate nc1 kind=INV in=C1 out=nc1v
    gate nc2 kind=INV in=C2 out=nc2v
    gate mm kind=CT_AND in=nc1v,C2 out=mmv
    gate ms kind=CT_AND in=C1,C2 out=msv
    gate ma kind=CT_AND in=C1,nc2v out=mav
}
block pp {
    gate p00 kind=CT_AND in=A0,B0 out=p00v
    gate p01 kind=CT_AND in=A0,B1 out=p01v
    gate p10 kind=CT_AND in=A1,B0 out=p10v
    gate p11 kind=CT_AND in=A1,B1 out=p11v
    gate n00 kind=CT_NAND in=A0,B0 out=n00v
    gate nt4 kind=CT_NAND in=p01v,p10v out=nt4v
}
block y3 {
    gate g3 kind=GENERIC_CT in=A1,A0,B1,B0 ctrl=msv out=g3v weights=1,1,1,1 theta=4 ctrl_weight=3 stages=2
    gate y3 kind=CT_AND in=g3v,C2 out=y3v
}
block y0 {
    gate q0 kind=POLY_AND_OR in=A0,B0 ctrl=mav out=q0v
    gate r1 kind=CT_AO21 in=n00v,mav,mmv out=r1v
    gate r2 kind=CT_AO21 in=p11v,msv,r1v out=r2v
    gate y0 kind=CT_AND in=q0v,r2v out=y0v
}
block y1 {
    gate xm kind=GENERIC_CT in=p01v,p10v,nt4v out=xmv weights=1,1,2 theta=3 ctrl_weight=0 stages=2
    gate n11 kind=CT_NAND in=A1,B1 out=n11v
    gate x1 kind=GENERIC_CT in=A1,B1,n11v out=x1v weights=1,1,2 theta=3 ctrl_weight=0 stages=2
    gate nsc kind=CT_NAND in=x1v,p00v out=nscv
    gate s1 kind=GENERIC_CT in=x1v,p00v,nscv out=s1v weights=1,1,2 theta=3 ctrl_weight=0 stages=2
    gate t3 kind=GENERIC_CT in=A1,A0,B1,B0 out=t3v weights=1,1,1,1 theta=3 ctrl_weight=0 stages=2
    gate xmm kind=CT_AND in=xmv,mmv out=xmmv
    gate u kind=CT_AO21 in=s1v,mav,xmmv out=uv
    gate y1 kind=GENERIC_CT in=uv,t3v ctrl=msv out=y1v weights=2,1 theta=2 ctrl_weight=1 stages=2
}
block y2 {
    gate w2 kind=CT_AND in=p11v,nt4v out=w2v
    gate cr kind=GENERIC_CT in=A1,B1,p00v out=crv weights=1,1,1 theta=2 ctrl_weight=0 stages=2
    gate t2 kind=GENERIC_CT in=A1,A0,B1,B0 out=t2v weights=1,1,1,1 theta=2 ctrl_weight=0 stages=2
    gate wmm kind=CT_AND in=w2v,mmv out=wmmv
    gate v kind=CT_AO21 in=crv,mav,wmmv out=vv
    gate y2 kind=GENERIC_CT in=vv,t2v ctrl=msv out=y2v weights=2,1 theta=2 ctrl_weight=1 stages=2
}
output Y3=y3v
output Y2=y2v
output Y1=y1v
output Y0=y0v
"""

# Conventional structure: three stand-alone circuits, an output mux, and
# the same mode decode. Used as the cost yardstick.
_BASELINE_SOURCE = """
input A1
input A0
input B1
input B0
ctrl C1
ctrl C2
block mult {
    gate m_p00 kind=CT_AND in=A0,B0 out=m_p00v
    gate m_p01 kind=CT_AND in=A0,B1 out=m_p01v
    gate m_p10 kind=CT_AND in=A1,B0 out=m_p10v
    gate m_p11 kind=CT_AND in=A1,B1 out=m_p11v
    gate m_nt4 kind=CT_NAND in=m_p01v,m_p10v out=m_nt4v
    gate m_t4 kind=CT_AND in=m_p01v,m_p10v out=m_t4v
    gate m_y1 kind=GENERIC_CT in=m_p01v,m_p10v,m_nt4v out=m_y1v weights=1,1,2 theta=3 ctrl_weight=0 stages=2
    gate m_y2 kind=CT_AND in=m_p11v,m_nt4v out=m_y2v
}
block sort {
    gate s_t1 kind=GENERIC_CT in=A1,A0,B1,B0 out=s_t1v weights=1,1,1,1 theta=1 ctrl_weight=0 stages=2
    gate s_t2 kind=GENERIC_CT in=A1,A0,B1,B0 out=s_t2v weights=1,1,1,1 theta=2 ctrl_weight=0 stages=2
    gate s_t3 kind=GENERIC_CT in=A1,A0,B1,B0 out=s_t3v weights=1,1,1,1 theta=3 ctrl_weight=0 stages=2
    gate s_t4 kind=GENERIC_CT in=A1,A0,B1,B0 out=s_t4v weights=1,1,1,1 theta=4 ctrl_weight=0 stages=2
}
block add {
    gate a_c0 kind=CT_AND in=A0,B0 out=a_c0v
    gate a_n00 kind=CT_NAND in=A0,B0 out=a_n00v
    gate a_x0 kind=GENERIC_CT in=A0,B0,a_n00v out=a_x0v weights=1,1,2 theta=3 ctrl_weight=0 stages=2
    gate a_n11 kind=CT_NAND in=A1,B1 out=a_n11v
    gate a_x1 kind=GENERIC_CT in=A1,B1,a_n11v out=a_x1v weights=1,1,2 theta=3 ctrl_weight=0 stages=2
    gate a_nsc kind=CT_NAND in=a_x1v,a_c0v out=a_nscv
    gate a_s1 kind=GENERIC_CT in=a_x1v,a_c0v,a_nscv out=a_s1v weights=1,1,2 theta=3 ctrl_weight=0 stages=2
    gate a_cr kind=GENERIC_CT in=A1,B1,a_c0v out=a_crv weights=1,1,1 theta=2 ctrl_weight=0 stages=2
}
block mux {
    gate nc1 kind=INV in=C1 out=nc1v
    gate nc2 kind=INV in=C2 out=nc2v
    gate mm kind=CT_AND in=nc1v,C2 out=mmv
    gate ms kind=CT_AND in=C1,C2 out=msv
    gate ma kind=CT_AND in=C1,nc2v out=mav
    gate k3 kind=CT_AND in=s_t1v,msv out=k3v
    gate o3 kind=CT_AO21 in=m_t4v,mmv,k3v out=o3v
    gate k2 kind=CT_AND in=s_t2v,msv out=k2v
    gate l2 kind=CT_AO21 in=a_crv,mav,k2v out=l2v
    gate o2 kind=CT_AO21 in=m_y2v,mmv,l2v out=o2v
    gate k1 kind=CT_AND in=s_t3v,msv out=k1v
    gate l1 kind=CT_AO21 in=a_s1v,mav,k1v out=l1v
    gate o1 kind=CT_AO21 in=m_y1v,mmv,l1v out=o1v
    gate k0 kind=CT_AND in=s_t4v,msv out=k0v
    gate l0 kind=CT_AO21 in=a_x0v,mav,k0v out=l0v
    gate o0 kind=CT_AO21 in=m_p00v,mmv,l0v out=o0v
}
output Y3=o3v
output Y2=o2v
output Y1=o1v
output Y0=o0v
"""


def build_msa() -> Netlist:
    """The polymorphic multiplier/sorter/adder netlist."""
    return parse(_MSA_SOURCE)


def build_msa_baseline() -> Netlist:
    """Three fixed-function circuits plus an output multiplexer."""
    return parse(_BASELINE_SOURCE)
