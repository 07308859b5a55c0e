"""
Foreign functions and concrete machines for RV32I with PMP

RAM is byte-addressed and little-endian; the foreign functions only ever see
aligned word accesses because mem_read and mem_write check alignment first.
"""

# built-ins
import logging

# internal packages
from .encoding import decode_rv
from .pmp import pmpcfg_of_byte
from .types import XREGS
from ...core.prims import MASK32
from ...errors import MachineFailure
from ...machine.image import load_image
from ...machine.interpreter import Interpreter
from ...machine.state import MachineState


logger = logging.getLogger(__name__)

DEFAULT_MEMSIZE = 4096


def _check(state, addr):
    if addr % 4 or not state.in_range(addr, 4):
        raise MachineFailure("bounds")


def read_ram(state, addr):
    _check(state, addr)
    state.trace.append(('read', addr))
    return state.read_word(addr)


def write_ram(state, addr, v):
    _check(state, addr)
    state.trace.append(('write', addr))
    logger.debug("write %#010x at %#x", v, addr)
    state.write_word(addr, v)


def decode(state, w):
    return decode_rv(w)


RUNTIME = {
    'read_ram': read_ram,
    'write_ram': write_ram,
    'decode': decode,
}


def reset_registers():

    """Machine mode at address 0 with both PMP entries off"""

    values = {'pc': 0, 'cur_privilege': 'Machine', 'mstatus': 'User', 'mtvec': 0, 'mcause': 0,
              'mepc': 0, 'pmp0cfg': pmpcfg_of_byte(0), 'pmp1cfg': pmpcfg_of_byte(0),
              'pmpaddr0': 0, 'pmpaddr1': 0}
    values.update({r: 0 for r in XREGS[1:]})
    return values


def make_state(memsize=DEFAULT_MEMSIZE, registers=None, memory=None):

    """
    Parameters
    ----------
    registers : dict, optional
        Overrides of the reset register values
    memory : dict, optional
        Word address to 32-bit word
    """

    values = reset_registers()
    values.update(registers or {})
    state = MachineState(values, {}, memsize, byte_addressed=True, blank=0)
    for addr, word in (memory or {}).items():
        state.write_word(addr, word)
    return state


def entries_of(state):

    """The PMP entries of a concrete state, in the shape pmp_access expects"""

    r = state.registers
    return ((r['pmp0cfg'], r['pmpaddr0']), (r['pmp1cfg'], r['pmpaddr1']))


def parse_word(tokens):

    """A single 32-bit word in hexadecimal, with or without 0x"""

    if len(tokens) != 1:
        raise ValueError(f"expected one word, got {' '.join(tokens)!r}")
    try:
        word = int(tokens[0], 16)
    except ValueError:
        raise ValueError(f"not a hexadecimal word: {tokens[0]!r}") from None
    if not 0 <= word <= MASK32:
        raise ValueError(f"{tokens[0]} does not fit 32 bits")
    return word


def show_word(word):
    return f"{word:#010x}"


def load(source, memsize=DEFAULT_MEMSIZE):
    return load_image(make_state(memsize), source, parse_word)


def interpreter(program):
    return Interpreter(program, RUNTIME)
