"""
Foreign functions and concrete machines for MinimalCaps

Memory is word-addressed; every cell holds a Word (Int or Cap) and unwritten
cells read as Int(0).
"""

# built-ins
import logging

# internal packages
from .encoding import decode_mc
from .types import PERMISSIONS, REGISTERS, Cap, Int, subperm, within_bounds
from ...errors import MachineFailure
from ...machine.image import load_image
from ...machine.interpreter import Interpreter
from ...machine.state import MachineState


logger = logging.getLogger(__name__)

DEFAULT_MEMSIZE = 1024


def _check(state, c, needed):
    if not subperm(needed, c.perm):
        raise MachineFailure("perm")
    if not within_bounds(c) or not state.in_range(c.cursor):
        raise MachineFailure("bounds")


def read_mem(state, c):
    _check(state, c, 'R')
    state.trace.append(('read', c.cursor))
    return state.read_word(c.cursor)


def write_mem(state, c, w):
    _check(state, c, 'RW')
    state.trace.append(('write', c.cursor))
    logger.debug("write %r at %d", w, c.cursor)
    state.write_word(c.cursor, w)


def decode(state, z):
    return decode_mc(z)


RUNTIME = {
    'read_mem': read_mem,
    'write_mem': write_mem,
    'decode': decode,
}


def make_state(memsize=DEFAULT_MEMSIZE, registers=None, memory=None):

    """
    A machine whose pc and R0 hold read-write capabilities over all of memory

    Parameters
    ----------
    registers : dict, optional
        Overrides of the default register values
    memory : dict, optional
        Address to Word
    """

    everything = Cap('RW', 0, memsize - 1, 0)
    values = {'pc': everything, 'R0': everything}
    for r in REGISTERS[1:]:
        values[r] = Int(0)
    values.update(registers or {})
    return MachineState(values, dict(memory or {}), memsize, byte_addressed=False, blank=Int(0))


def parse_word(tokens):

    """`int <decimal>` or `cap <PERM> <begin> <end> <cursor>`"""

    kind = tokens[0].lower()
    if kind == 'int' and len(tokens) == 2:
        return Int(int(tokens[1]))
    if kind == 'cap' and len(tokens) == 5:
        perm = tokens[1].upper()
        if perm not in PERMISSIONS:
            raise ValueError(f"unknown permission {tokens[1]!r}")
        begin, end, cursor = (int(t) for t in tokens[2:])
        return Cap(perm, begin, end, cursor)
    raise ValueError(f"expected 'int <n>' or 'cap <perm> <b> <e> <a>', got {' '.join(tokens)!r}")


def show_word(word):
    if word.tag == 'Int':
        return f"int {word.args[0]}"
    c = word.args[0]
    return f"cap {c.perm} {c.begin} {c.end} {c.cursor}"


def load(source, memsize=DEFAULT_MEMSIZE):
    return load_image(make_state(memsize), source, parse_word)


def interpreter(program):
    return Interpreter(program, RUNTIME)
