"""
The femtokernel: a Machine-mode kernel guarding one private word from user code

The init block configures PMP so that only Machine mode may touch [0, 88),
installs the trap handler and drops to User mode at 88, where untrusted code
lives. The handler reads the private word at 84 into ra and returns to the
faulting user instruction. Whatever the user code does, the word at 84 keeps
the value 42.

Layout: init block [0, 72) padded with NOPs, handler [72, 84), data at 84,
user code from 88.
"""

# built-ins
import pathlib
from typing import NamedTuple

# internal packages
from .block import AsmBlock, block_of_image
from ..isa.riscv.asm import assemble, image_text
from ..isa.riscv.runtime import DEFAULT_MEMSIZE, make_state, show_word
from ..logic.sexpr import loads_contract


FIXTURES = pathlib.Path(__file__).resolve().parent.parent / 'fixtures'

INIT_BASE = 0
HANDLER_BASE = 72
DATA_ADDR = 84
ADV_ADDR = 88
SECRET = 42

# entry 0 OFF (Machine only), entry 1 TOR with RWX
KERNEL_PMPCFG0 = 0xf00
# entry 0 TOR with RWX as well: user code can reach the private word
LEAKY_PMPCFG0 = 0xf0f

SOURCE = """\
kernel:
    la ra, adv
    csrrw x0, pmpaddr0, ra
    li ra, {memsize}
    csrrw x0, pmpaddr1, ra
    li ra, {pmpcfg0:#x}
    csrrw x0, pmpcfg0, ra
    la ra, ih
    csrrw x0, mtvec, ra
    la ra, adv
    csrrw x0, mepc, ra
    csrrw x0, mstatus, x0
    mret
    .org 72
ih:
    auipc ra, 0
    lw ra, 12(ra)
    mret
data:
    .word 42
adv:
"""

_PMP = """\
        (reg pmp0cfg (pmpcfg_of_byte 0)) (reg pmpaddr0 88)
        (reg pmp1cfg (pmpcfg_of_byte 15)) (reg pmpaddr1 {memsize})"""

INIT_CONTRACT = """\
; reset state to the first user instruction
(contract
  (vars (?ra bits32) (?h bits32) (?mc bits32) (?mpp Privilege) (?epc bits32))
  (pre (star
        (reg pc 0) (reg cur_privilege Machine) (reg x1 ?ra)
        (reg mtvec ?h) (reg mcause ?mc) (reg mstatus ?mpp) (reg mepc ?epc)
        (reg pmp0cfg (pmpcfg_of_byte 0)) (reg pmpaddr0 0)
        (reg pmp1cfg (pmpcfg_of_byte 0)) (reg pmpaddr1 0)))
  (post (star
        (reg pc 88) (reg cur_privilege User) (exists ?ra2 bits32 (reg x1 ?ra2))
        (reg mtvec 72) (reg mcause ?mc) (reg mstatus User) (reg mepc 88)
""" + _PMP + """)))
"""

HANDLER_CONTRACT = """\
; trap arrival to the return into user code
(contract
  (vars (?ra bits32) (?mc bits32) (?epc bits32))
  (pre (star
        (reg pc 72) (reg cur_privilege Machine) (reg x1 ?ra)
        (reg mtvec 72) (reg mcause ?mc) (reg mstatus User) (reg mepc ?epc)
""" + _PMP + """
        (mem 84 42)))
  (post (star
        (reg pc ?epc) (reg cur_privilege User) (reg x1 42)
        (reg mtvec 72) (reg mcause ?mc) (reg mstatus User) (reg mepc ?epc)
""" + _PMP + """
        (mem 84 42))))
"""


class FemtoAssets(NamedTuple):

    image: str
    init: AsmBlock
    handler: AsmBlock
    contracts: dict


def kernel_words(memsize=DEFAULT_MEMSIZE, pmpcfg0=KERNEL_PMPCFG0):

    """(address, word) pairs of the kernel image, [0, 88)"""

    return assemble(SOURCE.format(memsize=memsize, pmpcfg0=pmpcfg0))


def contract_texts(memsize=DEFAULT_MEMSIZE):
    return {'init': INIT_CONTRACT.format(memsize=memsize),
            'handler': HANDLER_CONTRACT.format(memsize=memsize)}


def femto_assets(memsize=DEFAULT_MEMSIZE, pmpcfg0=KERNEL_PMPCFG0):

    """
    Returns
    -------
    FemtoAssets
        The image text, both blocks and their contracts keyed 'init' and
        'handler'
    """

    words = kernel_words(memsize, pmpcfg0)
    contracts = {name: loads_contract(text) for name, text in contract_texts(memsize).items()}
    return FemtoAssets(
        image=image_text(words, show_word),
        init=block_of_image(words, INIT_BASE, HANDLER_BASE, 'femto-init'),
        handler=block_of_image(words, HANDLER_BASE, DATA_ADDR, 'femto-handler'),
        contracts=contracts,
    )


def femtokernel_state(memsize=DEFAULT_MEMSIZE, adversary=(), pmpcfg0=KERNEL_PMPCFG0):

    """
    A reset machine holding the kernel and `adversary` words from 88 on

    Raises
    ------
    ValueError
        when the adversary does not fit in memory
    """

    if ADV_ADDR + 4 * len(adversary) > memsize:
        raise ValueError(f"{len(adversary)} adversary words do not fit {memsize} bytes")
    memory = dict(kernel_words(memsize, pmpcfg0))
    memory.update({ADV_ADDR + 4 * i: w for i, w in enumerate(adversary)})
    return make_state(memsize, memory=memory)
