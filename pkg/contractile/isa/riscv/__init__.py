"""
RV32I with machine and user mode, CSRs, traps and physical memory protection
"""

from .asm import assemble, image_text
from .encoding import decode_rv, encode_rv, show_rv
from .pmp import ALLOW, DENY, byte_oracle, pmp_access, pmp_check, pmpcfg_of_byte
from .runtime import (DEFAULT_MEMSIZE, RUNTIME, entries_of, interpreter, load, make_state,
                      parse_word, show_word)
from .semantics import build_program, pmp_check_decl, pmpcfg_write_decl
from .specification import (BLOCK_CONTRACTS, UNIVERSAL_CONTRACTS, block_bundle, build_lemmas,
                            universal_bundle)
from .types import INSTRUCTION, PMPCFG, PmpCfg, XREGS, instr
