"""
RV32I with machine and user mode, traps and two PMP entries, as a core-language program

Memory accesses go through `mem_read` and `mem_write`, which check alignment,
the RAM bound and the PMP decision before calling the foreign `read_ram` and
`write_ram`. Instruction clauses return Retired after moving the pc, or a
Fault carrying the trap cause without having changed any state; `fdeStep`
turns faults into traps.
"""

# internal packages
from .types import (ACCESS_TYPE, CSR, ECALL_FROM_MACHINE, ECALL_FROM_USER, EXEC_RESULT,
                    ILLEGAL_INSTRUCTION, INSTRUCTION, MEM_RESULT, PMP_ENTRIES, PMPCFG, PRIVILEGE,
                    XREG, XREGS)
from ...core import builder as b
from ...core.program import FOREIGN, FunctionDecl, Program
from ...core.types import BITS32, BOOL, INT, UNIT


def _bv(op, *args):
    return b.prim('bv' + op, *args)


def _reg(name):
    return b.call('read_reg', b.var(name))


# register file; x0 reads as zero and ignores writes

READ_REG = FunctionDecl('read_reg', (('r', XREG),), BITS32, b.seq(
    b.lemma('open_GPRs'),
    b.let('v', b.match(b.var('r'), (b.plit('x0'), 0), *((b.plit(r), b.read(r)) for r in XREGS[1:])),
          b.seq(b.lemma('close_GPRs'), b.var('v')))))

WRITE_REG = FunctionDecl('write_reg', (('r', XREG), ('v', BITS32)), UNIT, b.seq(
    b.lemma('open_GPRs'),
    b.match(b.var('r'), (b.plit('x0'), None), *((b.plit(r), b.write(r, b.var('v'))) for r in XREGS[1:])),
    b.lemma('close_GPRs')))


# PMP

def _entry(i):
    entry = b.proj(b.var('es'), i)
    return b.proj(entry, 0), b.proj(entry, 1)


def pmp_check_decl(order=(0, 1)):

    """
    The PMP decision, checking entries in `order`

    The bundled machine checks entry 0 first. Every entry's range starts at
    the address of the entry checked before it, so other orders build the
    priority-inversion mutant, whose first entry reaches down to 0.
    """

    addr, width, acc, priv = b.var('addr'), b.var('width'), b.var('acc'), b.var('priv')
    result = b.eq(priv, 'Machine')
    for k in reversed(range(len(order))):
        cfg, hi = _entry(order[k])
        lo = 0 if k == 0 else _entry(order[k - 1])[1]
        result = b.if_(
            b.and_(b.eq(b.get(cfg, 'A'), 'TOR'), b.prim('pmp_match_tor', addr, width, lo, hi)),
            b.prim('pmp_perm_ok', cfg, priv, acc),
            result)
    return FunctionDecl('pmp_check', (('addr', BITS32), ('width', INT), ('acc', ACCESS_TYPE),
                                      ('priv', PRIVILEGE), ('es', PMP_ENTRIES)), BOOL, result)


def pmpcfg_write_decl(lock_check=True):

    """Writing a configuration byte; a locked entry keeps its configuration"""

    fresh = b.prim('pmpcfg_of_byte', b.var('byte'))
    body = b.if_(b.get(b.var('old'), 'L'), b.var('old'), fresh) if lock_check else fresh
    return FunctionDecl('pmpcfg_write', (('old', PMPCFG), ('byte', BITS32)), PMPCFG, body)


PMPADDR_WRITE = FunctionDecl('pmpaddr_write', (('locked', BOOL), ('old', BITS32), ('new', BITS32)),
                             BITS32, b.if_(b.var('locked'), b.var('old'), b.var('new')))


def _pmp_entries():
    return b.tuple_(b.tuple_(b.read('pmp0cfg'), b.read('pmpaddr0')),
                    b.tuple_(b.read('pmp1cfg'), b.read('pmpaddr1')))


def _with_pmp_registers(*stms):
    return b.seq(b.lemma('open_PMP_entries'), *stms, b.lemma('close_PMP_entries'))


# memory

def _mem_access(acc, access, memsize):

    """Alignment, RAM bound and PMP checks around `access`, which must return a MemResult"""

    return b.if_(
        b.ne(_bv('and', b.var('addr'), 3), 0),
        b.construct('MemException', b.prim('misaligned_cause', acc)),
        b.if_(
            b.not_(b.le(b.add(b.var('addr'), 4), memsize)),
            b.construct('MemException', b.prim('access_fault_cause', acc)),
            b.let('p', b.read('cur_privilege'), b.seq(
                b.lemma('open_PMP_entries'),
                b.let('es', _pmp_entries(), b.seq(
                    b.lemma('close_PMP_entries'),
                    b.if_(b.call('pmp_check', b.var('addr'), 4, acc, b.var('p'), b.var('es')),
                          b.seq(b.lemma('extract_PMP_ptsto', b.var('addr'), acc),
                                b.let('result', access, b.seq(
                                    b.lemma('return_PMP_ptsto', b.var('addr')),
                                    b.var('result')))),
                          b.construct('MemException', b.prim('access_fault_cause', acc)))))))))


def mem_read_decl(memsize):
    body = _mem_access(b.var('acc'), b.construct('MemValue', b.foreign('read_ram', b.var('addr'))), memsize)
    return FunctionDecl('mem_read', (('acc', ACCESS_TYPE), ('addr', BITS32)), MEM_RESULT, body)


def mem_write_decl(memsize):
    body = _mem_access('Write', b.seq(b.foreign('write_ram', b.var('addr'), b.var('v')),
                                      b.construct('MemValue', b.var('v'))), memsize)
    return FunctionDecl('mem_write', (('addr', BITS32), ('v', BITS32)), MEM_RESULT, body)


FETCH = FunctionDecl('fetch', (), MEM_RESULT, b.call('mem_read', 'Execute', b.read('pc')))


# control and status registers

def _csr_cases(per_csr):
    return b.match(b.var('csr'), *((b.plit(c), per_csr[c]) for c in per_csr))


READ_CSR = FunctionDecl('read_csr', (('csr', CSR),), BITS32, _csr_cases({
    'mstatus': b.prim('bits_of_mpp', b.read('mstatus')),
    'mtvec': b.read('mtvec'),
    'mepc': b.read('mepc'),
    'mcause': b.read('mcause'),
    'pmpcfg0': b.seq(b.lemma('open_PMP_entries'),
                     b.let('v', b.prim('pack_pmpcfg0', b.read('pmp0cfg'), b.read('pmp1cfg')),
                           b.seq(b.lemma('close_PMP_entries'), b.var('v')))),
    'pmpaddr0': b.seq(b.lemma('open_PMP_entries'),
                      b.let('v', b.read('pmpaddr0'), b.seq(b.lemma('close_PMP_entries'), b.var('v')))),
    'pmpaddr1': b.seq(b.lemma('open_PMP_entries'),
                      b.let('v', b.read('pmpaddr1'), b.seq(b.lemma('close_PMP_entries'), b.var('v')))),
}))


def _cfg_byte(shift):
    v = b.var('v')
    return _bv('and', _bv('lshr', v, shift) if shift else v, 0xFF)


# pmpaddr0 is also the bottom of entry 1, so a locked TOR entry 1 locks it too
_ADDR0_LOCKED = b.or_(b.get(b.read('pmp0cfg'), 'L'),
                      b.and_(b.get(b.read('pmp1cfg'), 'L'), b.eq(b.get(b.read('pmp1cfg'), 'A'), 'TOR')))

WRITE_CSR = FunctionDecl('write_csr', (('csr', CSR), ('v', BITS32)), UNIT, _csr_cases({
    'mstatus': b.write('mstatus', b.prim('mpp_of_bits', b.var('v'))),
    'mtvec': b.write('mtvec', b.var('v')),
    'mepc': b.write('mepc', b.var('v')),
    'mcause': b.write('mcause', b.var('v')),
    'pmpcfg0': _with_pmp_registers(
        b.write('pmp0cfg', b.call('pmpcfg_write', b.read('pmp0cfg'), _cfg_byte(0))),
        b.write('pmp1cfg', b.call('pmpcfg_write', b.read('pmp1cfg'), _cfg_byte(8)))),
    'pmpaddr0': _with_pmp_registers(
        b.write('pmpaddr0', b.call('pmpaddr_write', _ADDR0_LOCKED, b.read('pmpaddr0'), b.var('v')))),
    'pmpaddr1': _with_pmp_registers(
        b.write('pmpaddr1', b.call('pmpaddr_write', b.get(b.read('pmp1cfg'), 'L'),
                                   b.read('pmpaddr1'), b.var('v')))),
}))


# traps

TRAP_ENTER = FunctionDecl('trap_enter', (('cause', INT),), UNIT, b.seq(
    b.write('mcause', b.var('cause')),
    b.write('mepc', b.read('pc')),
    b.write('mstatus', b.read('cur_privilege')),
    b.write('cur_privilege', 'Machine'),
    b.write('pc', b.read('mtvec'))))

MRET_RETURN = FunctionDecl('mret_return', (), UNIT, b.seq(
    b.write('pc', b.read('mepc')),
    b.write('cur_privilege', b.read('mstatus')),
    b.write('mstatus', 'User')))


# instruction clauses

def _next_pc():
    return _bv('add', b.read('pc'), 4)


def _retire(*stms):
    return b.seq(*stms, b.write('pc', _next_pc()), b.construct('Retired'))


def _fault(cause):
    return b.construct('Fault', cause)


def _machine_only(body):
    return b.if_(b.ne(b.read('cur_privilege'), 'Machine'), _fault(ILLEGAL_INSTRUCTION), body)


def _on_memory(result, on_value):
    return b.match(result,
                   (b.ctor('MemValue', 'loaded'), on_value),
                   (b.ctor('MemException', 'cause'), _fault(b.var('cause'))))


CLAUSES = {
    'LUI': (('rd', 'imm'), _retire(b.call('write_reg', b.var('rd'), _bv('shl', b.var('imm'), 12)))),
    'AUIPC': (('rd', 'imm'), _retire(b.call(
        'write_reg', b.var('rd'), _bv('add', b.read('pc'), _bv('shl', b.var('imm'), 12))))),
    'JAL': (('rd', 'imm'), b.let('target', _bv('add', b.read('pc'), b.var('imm')), b.seq(
        b.call('write_reg', b.var('rd'), _next_pc()),
        b.write('pc', b.var('target')),
        b.construct('Retired')))),
    'JALR': (('rd', 'rs1', 'imm'), b.let(
        'target', _bv('and', _bv('add', _reg('rs1'), b.var('imm')), 0xFFFFFFFE), b.seq(
            b.call('write_reg', b.var('rd'), _next_pc()),
            b.write('pc', b.var('target')),
            b.construct('Retired')))),
    'BRANCH': (('op', 'rs1', 'rs2', 'imm'), b.seq(
        b.if_(b.prim('rv_branch_taken', b.var('op'), _reg('rs1'), _reg('rs2')),
              b.write('pc', _bv('add', b.read('pc'), b.var('imm'))),
              b.write('pc', _next_pc())),
        b.construct('Retired'))),
    'LW': (('rd', 'rs1', 'imm'), _on_memory(
        b.call('mem_read', 'Read', _bv('add', _reg('rs1'), b.var('imm'))),
        _retire(b.call('write_reg', b.var('rd'), b.var('loaded'))))),
    'SW': (('rs2', 'rs1', 'imm'), b.let('stored', _reg('rs2'), _on_memory(
        b.call('mem_write', _bv('add', _reg('rs1'), b.var('imm')), b.var('stored')),
        _retire()))),
    'OPIMM': (('op', 'rd', 'rs1', 'imm'), _retire(b.call(
        'write_reg', b.var('rd'), b.prim('rv_alu', b.var('op'), _reg('rs1'), b.var('imm'))))),
    'OP': (('op', 'rd', 'rs1', 'rs2'), _retire(b.call(
        'write_reg', b.var('rd'), b.prim('rv_alu', b.var('op'), _reg('rs1'), _reg('rs2'))))),
    'CSRRW': (('rd', 'csr', 'rs1'), _machine_only(
        b.let('v', _reg('rs1'), b.let('old', b.call('read_csr', b.var('csr')), _retire(
            b.call('write_csr', b.var('csr'), b.var('v')),
            b.call('write_reg', b.var('rd'), b.var('old'))))))),
    'ECALL': ((), _fault(b.if_(b.eq(b.read('cur_privilege'), 'Machine'),
                               ECALL_FROM_MACHINE, ECALL_FROM_USER))),
    'MRET': ((), _machine_only(b.seq(b.call('mret_return'), b.construct('Retired')))),
    'ILLEGAL': ((None,), _fault(ILLEGAL_INSTRUCTION)),
}

EXECUTE = FunctionDecl('execute', (('i', INSTRUCTION),), EXEC_RESULT, b.match(
    b.var('i'), *((b.ctor(tag, *names), body) for tag, (names, body) in CLAUSES.items())))

FDE_STEP = FunctionDecl('fdeStep', (), UNIT, b.match(
    b.call('fetch'),
    (b.ctor('MemException', 'cause'), b.call('trap_enter', b.var('cause'))),
    (b.ctor('MemValue', 'w'), b.match(
        b.call('execute', b.foreign('decode', b.var('w'))),
        (b.ctor('Retired'), None),
        (b.ctor('Fault', 'cause'), b.call('trap_enter', b.var('cause')))))))

FDE_CYCLE = FunctionDecl('fdeCycle', (), UNIT, b.seq(b.call('fdeStep'), b.call('fdeCycle')))

FOREIGN_FUNCTIONS = (
    FunctionDecl('read_ram', (('addr', BITS32),), BITS32, FOREIGN),
    FunctionDecl('write_ram', (('addr', BITS32), ('v', BITS32)), UNIT, FOREIGN),
    FunctionDecl('decode', (('w', BITS32),), INSTRUCTION, FOREIGN),
)

REGISTERS_TYPES = {
    'pc': BITS32,
    **{r: BITS32 for r in XREGS[1:]},
    'cur_privilege': PRIVILEGE,
    'mstatus': PRIVILEGE,
    'mtvec': BITS32,
    'mcause': BITS32,
    'mepc': BITS32,
    'pmp0cfg': PMPCFG,
    'pmp1cfg': PMPCFG,
    'pmpaddr0': BITS32,
    'pmpaddr1': BITS32,
}


def functions(memsize):
    return (READ_REG, WRITE_REG, pmp_check_decl(), pmpcfg_write_decl(), PMPADDR_WRITE,
            mem_read_decl(memsize), mem_write_decl(memsize), FETCH, READ_CSR, WRITE_CSR,
            TRAP_ENTER, MRET_RETURN, EXECUTE, FDE_STEP, FDE_CYCLE) + FOREIGN_FUNCTIONS


def build_program(memsize, lemmas):
    return Program('riscv-pmp', functions(memsize), lemmas, REGISTERS_TYPES)
