"""
Contracts, predicates and ghost lemmas of the RISC-V machine

PMP_entries(es) owns the four PMP registers, whose values are the entries
`es`. PMP_addr_access(es, p) owns every word of RAM that the entries `es`
let privilege `p` access; `extract_PMP_ptsto` borrows one word out of it and
`return_PMP_ptsto` gives it back. GPRs owns x1 to x31.

The universal contract of fdeStep says that one step ends in one of four
states: a normal step, a trap into Machine mode, a step that modified a CSR
(Machine mode only) or a return from a trap handler.
"""

# internal packages
from .runtime import DEFAULT_MEMSIZE, entries_of
from .semantics import build_program
from .types import ACCESS_TYPE, PMP_ENTRIES, PMPCFG, PRIVILEGE, XREG
from ...core.types import BITS32, BOOL, INT
from ...logic.assertions import (EMP, Contract, LemmaDecl, PointsToMem, PointsToReg, Pred, Pure,
                                 Wand, exists, or_, register_predicate, star)
from ...logic.terms import App, Lit, Var
from ...verifier.executor import Bundle


register_predicate('GPRs', 0)
register_predicate('PMP_entries', 1, derive=lambda state: (entries_of(state),))
register_predicate('PMP_addr_access', 2,
                   derive=lambda state: (entries_of(state), state.registers['cur_privilege']))

GPRS = Pred('GPRs')

ES = Var('es', PMP_ENTRIES)
P = Var('p', PRIVILEGE)
ADDR = Var('addr', BITS32)
W = Var('w', BITS32)
RESULT = Var('result')


def _app(op, *args):
    return App(op, args)


def _eq(a, b):
    return _app('eq', a, b)


def _proj(t, *path):
    for i in path:
        t = _app(f'proj:{i}', t)
    return t


def pmp_entries(es):
    return Pred('PMP_entries', (es,))


def pmp_addr_access(es, p):
    return Pred('PMP_addr_access', (es, p))


# lemmas

def _opened_gprs():
    names = [(f'w{i}', BITS32) for i in range(1, 32)]
    return exists(names, star(*(PointsToReg(f'x{i}', Var(f'w{i}', BITS32)) for i in range(1, 32))))


def _borrowed(addr):
    return Wand(exists((('v', BITS32),), PointsToMem(addr, Var('v', BITS32))), pmp_addr_access(ES, P))


def build_lemmas(memsize=DEFAULT_MEMSIZE):

    """Ghost lemmas; extracting a word needs the RAM size to know the word exists"""

    cfg0, addr0, cfg1, addr1 = (Var('c0', PMPCFG), Var('a0', BITS32), Var('c1', PMPCFG),
                                Var('a1', BITS32))
    registers = star(PointsToReg('pmp0cfg', cfg0), PointsToReg('pmpaddr0', addr0),
                     PointsToReg('pmp1cfg', cfg1), PointsToReg('pmpaddr1', addr1))
    acc = Var('acc', ACCESS_TYPE)
    return {
        'open_GPRs': LemmaDecl('open_GPRs', (), GPRS, _opened_gprs()),
        'close_GPRs': LemmaDecl('close_GPRs', (), _opened_gprs(), GPRS),
        'open_PMP_entries': LemmaDecl(
            'open_PMP_entries', (), pmp_entries(ES),
            star(PointsToReg('pmp0cfg', _proj(ES, 0, 0)), PointsToReg('pmpaddr0', _proj(ES, 0, 1)),
                 PointsToReg('pmp1cfg', _proj(ES, 1, 0)), PointsToReg('pmpaddr1', _proj(ES, 1, 1))),
            logic_vars=(('es', PMP_ENTRIES),)),
        'close_PMP_entries': LemmaDecl(
            'close_PMP_entries', (), registers,
            pmp_entries(_app('tuple', _app('tuple', cfg0, addr0), _app('tuple', cfg1, addr1))),
            logic_vars=(('c0', PMPCFG), ('a0', BITS32), ('c1', PMPCFG), ('a1', BITS32))),
        'extract_PMP_ptsto': LemmaDecl(
            'extract_PMP_ptsto', (('addr', BITS32), ('acc', ACCESS_TYPE)),
            star(pmp_addr_access(ES, P),
                 Pure(_eq(_app('bvand', ADDR, Lit(3)), Lit(0))),
                 Pure(_app('le', _app('add', ADDR, Lit(4)), Lit(memsize))),
                 Pure(_app('pmp_access', ADDR, Lit(4), ES, P, acc))),
            exists((('w', BITS32),), star(PointsToMem(ADDR, W), _borrowed(ADDR))),
            logic_vars=(('es', PMP_ENTRIES), ('p', PRIVILEGE))),
        'return_PMP_ptsto': LemmaDecl(
            'return_PMP_ptsto', (('addr', BITS32),),
            star(PointsToMem(ADDR, W), _borrowed(ADDR)),
            pmp_addr_access(ES, P),
            logic_vars=(('w', BITS32), ('es', PMP_ENTRIES), ('p', PRIVILEGE))),
    }


GHOST_LEMMAS = ('open_GPRs', 'close_GPRs', 'open_PMP_entries', 'close_PMP_entries',
                'extract_PMP_ptsto', 'return_PMP_ptsto')


# contracts

def machine(pc, priv, mtvec, mcause, mstatus, mepc, es, access=(ES, P)):

    """Every register of the machine, plus the RAM the pre-state's PMP entries grant"""

    return star(PointsToReg('pc', pc), PointsToReg('cur_privilege', priv),
                PointsToReg('mtvec', mtvec), PointsToReg('mcause', mcause),
                PointsToReg('mstatus', mstatus), PointsToReg('mepc', mepc),
                GPRS, pmp_entries(es), pmp_addr_access(*access))


A, H, MC, MPP, EPC = (Var('a', BITS32), Var('h', BITS32), Var('mc', BITS32),
                      Var('mpp', PRIVILEGE), Var('epc', BITS32))
MACHINE_MODE = Pure(_eq(P, Lit('Machine')))

STEP_PRE = machine(A, P, H, MC, MPP, EPC, ES)

NORMAL = exists((('npc', BITS32),), machine(Var('npc', BITS32), P, H, MC, MPP, EPC, ES))

TRAP = exists((('ncause', BITS32),),
              machine(H, Lit('Machine'), H, Var('ncause', BITS32), P, A, ES))

CSR_MODIFIED = exists(
    (('npc', BITS32), ('nh', BITS32), ('nc', BITS32), ('nmpp', PRIVILEGE), ('nepc', BITS32),
     ('nes', PMP_ENTRIES)),
    star(MACHINE_MODE, machine(Var('npc', BITS32), P, Var('nh', BITS32), Var('nc', BITS32),
                               Var('nmpp', PRIVILEGE), Var('nepc', BITS32),
                               Var('nes', PMP_ENTRIES))))

RECOVER = star(MACHINE_MODE, machine(EPC, MPP, H, MC, Lit('User'), EPC, ES))

STEP_POST = or_(NORMAL, TRAP, CSR_MODIFIED, RECOVER)

STEP_VARS = (('a', BITS32), ('p', PRIVILEGE), ('h', BITS32), ('mc', BITS32), ('mpp', PRIVILEGE),
             ('epc', BITS32), ('es', PMP_ENTRIES))

_PMP_CHECK_PARAMS = (('addr', BITS32), ('width', INT), ('acc', ACCESS_TYPE), ('priv', PRIVILEGE),
                     ('es', PMP_ENTRIES))

COMMON_CONTRACTS = {
    'decode': Contract((('w', BITS32),), EMP, Pure(_eq(RESULT, _app('decode_rv', W)))),
}

UNIVERSAL_CONTRACTS = {
    **COMMON_CONTRACTS,
    'read_reg': Contract((('r', XREG),), GPRS, GPRS),
    'write_reg': Contract((('r', XREG), ('v', BITS32)), GPRS, GPRS),
    'pmp_check': Contract(_PMP_CHECK_PARAMS, EMP, Pure(_eq(RESULT, _app(
        'pmp_access', ADDR, Var('width', INT), ES, Var('priv', PRIVILEGE), Var('acc', ACCESS_TYPE))))),
    'pmpcfg_write': Contract((('old', PMPCFG), ('byte', BITS32)), EMP, Pure(_app(
        'implies', _app('field:L', Var('old', PMPCFG)), _eq(RESULT, Var('old', PMPCFG))))),
    'pmpaddr_write': Contract((('locked', BOOL), ('old', BITS32), ('new', BITS32)), EMP, Pure(_app(
        'implies', Var('locked', BOOL), _eq(RESULT, Var('old', BITS32))))),
    'read_ram': Contract(
        (('addr', BITS32), ('p', PRIVILEGE), ('es', PMP_ENTRIES), ('t', ACCESS_TYPE), ('w', BITS32)),
        star(PointsToReg('cur_privilege', P), pmp_entries(ES),
             Pure(_app('pmp_access', ADDR, Lit(4), ES, P, Var('t', ACCESS_TYPE))),
             PointsToMem(ADDR, W)),
        star(PointsToReg('cur_privilege', P), pmp_entries(ES), PointsToMem(ADDR, W),
             Pure(_eq(RESULT, W)))),
    'write_ram': Contract(
        (('addr', BITS32), ('v', BITS32), ('p', PRIVILEGE), ('es', PMP_ENTRIES), ('t', ACCESS_TYPE)),
        star(PointsToReg('cur_privilege', P), pmp_entries(ES),
             Pure(_app('pmp_access', ADDR, Lit(4), ES, P, Var('t', ACCESS_TYPE))),
             Pure(_app('access_leq', Lit('Write'), Var('t', ACCESS_TYPE))),
             exists((('w', BITS32),), PointsToMem(ADDR, W))),
        star(PointsToReg('cur_privilege', P), pmp_entries(ES), PointsToMem(ADDR, Var('v', BITS32)))),
    'fdeStep': Contract(STEP_VARS, STEP_PRE, STEP_POST),
}

# raw RAM contracts for blocks, where no PMP predicate is ever built
BLOCK_CONTRACTS = {
    **COMMON_CONTRACTS,
    'read_ram': Contract((('addr', BITS32), ('w', BITS32)), PointsToMem(ADDR, W),
                         star(PointsToMem(ADDR, W), Pure(_eq(RESULT, W)))),
    'write_ram': Contract((('addr', BITS32), ('v', BITS32)),
                          exists((('w', BITS32),), PointsToMem(ADDR, W)),
                          PointsToMem(ADDR, Var('v', BITS32))),
}


def universal_bundle(memsize=DEFAULT_MEMSIZE, program=None, name='riscv-pmp'):

    """Register, PMP and RAM helpers are called by contract; the rest of fdeStep is inlined"""

    return Bundle(name, program or build_program(memsize, build_lemmas(memsize)),
                  dict(UNIVERSAL_CONTRACTS))


def block_bundle(memsize=DEFAULT_MEMSIZE, program=None, name='riscv-pmp-blocks'):

    """
    Everything is inlined over concrete register chunks; ghost lemmas are
    skipped and RAM is plain points-to chunks
    """

    return Bundle(name, program or build_program(memsize, build_lemmas(memsize)),
                  dict(BLOCK_CONTRACTS), ghost_noops=frozenset(GHOST_LEMMAS), verify=())
