"""Expanded Blaum-Roth (EBR) and Expanded Independent-Parity (EIP) array
erasure codes over GF(2^b), with local column repair, line recovery,
puncturing and an analysis suite."""

from .arrays import INF, CodeArray, DecodeTrace
from .ebr import BRVPCode, EBRCode, from_br, to_br
from .eip import EIPCode, UpdatePlan, from_ip, to_ip
from .errors import (BadParameters, BadShape, CodeError, NotACodeword, NotMDSWarning,
                     TooLarge, TooManyErasures, Unrecoverable, UnsupportedRegime)
from .geometry import IndexMap, LineId, apply_map, slope_to_column_map, recover_lines, slope_image
from .gf import GF2, FieldTable, field_new
from .punct import PuncturedCode, rs_equivalence_check
from .ring import SparsePoly, XorCounter, rotate, solve_chain, solve_recursion
from .vcode import CyclicCode

__all__ = [
    "INF", "CodeArray", "DecodeTrace", "BRVPCode", "EBRCode", "from_br", "to_br",
    "EIPCode", "UpdatePlan", "from_ip", "to_ip", "BadParameters", "BadShape",
    "CodeError", "NotACodeword", "NotMDSWarning", "TooLarge", "TooManyErasures",
    "Unrecoverable", "UnsupportedRegime", "IndexMap", "LineId", "apply_map",
    "slope_to_column_map", "recover_lines", "slope_image", "GF2", "FieldTable", "field_new",
    "PuncturedCode", "rs_equivalence_check", "SparsePoly", "XorCounter", "rotate",
    "solve_chain", "solve_recursion", "CyclicCode",
]
__version__ = "0.1.0"
