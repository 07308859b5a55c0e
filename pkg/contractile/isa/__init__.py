"""
The bundled instruction sets, by name
"""

# built-ins
from dataclasses import dataclass

# internal packages
from . import minimalcaps, riscv
from ..errors import NotFound


@dataclass(frozen=True)
class Isa:

    """
    What the command line and the fuzzers need to know about one ISA

    Attributes
    ----------
    memsize : int
        Default memory size, in words for MinimalCaps and bytes for RISC-V
    """

    name: str
    memsize: int
    bundle: object
    make_state: object
    load: object
    interpreter: object
    show_word: object

    def universal_bundle(self, memsize=None):
        return self.bundle(memsize or self.memsize)


ISAS = {
    'minimalcaps': Isa('minimalcaps', minimalcaps.runtime.DEFAULT_MEMSIZE,
                       lambda memsize: minimalcaps.universal_bundle(),
                       minimalcaps.make_state, minimalcaps.load, minimalcaps.interpreter,
                       minimalcaps.show_word),
    'riscv-pmp': Isa('riscv-pmp', riscv.DEFAULT_MEMSIZE, riscv.universal_bundle, riscv.make_state,
                     riscv.load, riscv.interpreter, riscv.show_word),
}


def load_isa(name):

    """
    Raises
    ------
    NotFound
        when no ISA is registered under `name`
    """

    try:
        return ISAS[name]
    except KeyError:
        raise NotFound(name, 'ISA') from None
