"""
MinimalCaps: a small capability machine with four general-purpose registers
"""

from .encoding import decode_mc, encode_mc, show_instr
from .runtime import RUNTIME, interpreter, load, make_state, parse_word, show_word
from .semantics import build_program, store_clause
from .specification import CONTRACTS, LEMMAS, grants_within, universal_bundle
from .types import (CAPABILITY, GPR, INSTRUCTION, PERMISSION, PERMISSIONS, REGISTERS, WORD, Cap,
                    Capability, Int, authority, instr, subperm, within_bounds)
