"""
MinimalCaps as a core-language program

Every instruction clause reads its operands through `read_reg`, touches memory
only through the foreign `read_mem` and `write_mem`, and invokes the ghost
lemmas that justify the capabilities it derives. Clauses return True to keep
the machine running; Halt returns False.
"""

# internal packages
from .types import CAPABILITY, GPR, INSTRUCTION, PERMISSION, REGISTERS, WORD
from ...core import builder as b
from ...core.program import FOREIGN, FunctionDecl, Program
from ...core.types import BOOL, INT, UNIT


def _perm(c):
    return b.get(c, 'perm')


def _cap(c):
    return b.construct('Cap', c)


def _subperm(p, q):
    return b.prim('subperm', p, q)


def _moved(c, offset):
    return b.set_field(c, 'cursor', b.add(b.get(c, 'cursor'), offset))


def _per_register(reg, body_for):
    return b.match(b.var(reg), *((b.plit(r), body_for(r)) for r in REGISTERS))


def _with_cap(reg, name, body, message):

    """Reads `reg` and runs `body` with its capability bound to `name`; integers fail"""

    return b.match(b.call('read_reg', b.var(reg)),
                   (b.ctor('Cap', name), body),
                   (b.ctor('Int', None), b.fail(message)))


def _with_int(reg, name, body, message):
    return b.match(b.call('read_reg', b.var(reg)),
                   (b.ctor('Int', name), body),
                   (b.ctor('Cap', None), b.fail(message)))


def _step(*stms):

    """Instruction epilogue: advance pc and keep running"""

    return b.seq(*stms, b.call('update_pc'), True)


# register file

READ_REG = FunctionDecl('read_reg', (('r', GPR),), WORD, b.seq(
    b.lemma('open_GPRs'),
    b.let('w', _per_register('r', b.read),
          b.seq(b.lemma('close_GPRs'), b.var('w')))))

WRITE_REG = FunctionDecl('write_reg', (('r', GPR), ('w', WORD)), UNIT, b.seq(
    b.lemma('open_GPRs'),
    _per_register('r', lambda reg: b.write(reg, b.var('w'))),
    b.lemma('close_GPRs')))


# program counter

def _pc_mover(name, params, offset):
    return FunctionDecl(name, params, UNIT, b.match(
        b.read('pc'),
        (b.ctor('Cap', 'c'), b.let('c2', _moved(b.var('c'), offset), b.seq(
            b.lemma('subperm_not_E', 'R', _perm(b.var('c'))),
            b.lemma('move_cursor', b.var('c'), b.var('c2')),
            b.write('pc', _cap(b.var('c2')))))),
        (b.ctor('Int', None), b.fail("pc is not a capability"))))


UPDATE_PC = _pc_mover('update_pc', (), 1)
JUMP_PC = _pc_mover('jump_pc', (('offset', INT),), b.var('offset'))

FETCH = FunctionDecl('fetch', (), WORD, b.match(
    b.read('pc'),
    (b.ctor('Cap', 'c'), b.seq(
        b.assert_(_subperm('R', _perm(b.var('c'))), "fetch: pc has no read permission"),
        b.foreign('read_mem', b.var('c')))),
    (b.ctor('Int', None), b.fail("fetch: pc is not a capability"))))


# instruction clauses

def store_clause(write_check=True, ghost_move=True):

    """
    The Store clause; the flags drop the write-permission check or the
    move_cursor ghost call to build the mutants of the mutation suite
    """

    ghosts = [b.lemma('subperm_not_E', 'RW', _perm(b.var('base')))]
    if ghost_move:
        ghosts.append(b.lemma('move_cursor', b.var('base'), b.var('c2')))
    body = b.let('w', b.call('read_reg', b.var('rs')), _step(
        *ghosts, b.foreign('write_mem', b.var('c2'), b.var('w'))))
    if write_check:
        body = b.seq(b.assert_(_subperm('RW', _perm(b.var('base'))), "store: no write permission"),
                     body)
    return FunctionDecl('exec_store', (('rs', GPR), ('rb', GPR), ('imm', INT)), BOOL, _with_cap(
        'rb', 'base', b.let('c2', _moved(b.var('base'), b.var('imm')), body),
        "store: base register holds an integer"))


EXEC_STORE = store_clause()

EXEC_LOAD = FunctionDecl('exec_load', (('rd', GPR), ('rb', GPR), ('imm', INT)), BOOL, _with_cap(
    'rb', 'base', b.let('c2', _moved(b.var('base'), b.var('imm')), b.seq(
        b.assert_(_subperm('R', _perm(b.var('base'))), "load: no read permission"),
        b.lemma('subperm_not_E', 'R', _perm(b.var('base'))),
        b.lemma('move_cursor', b.var('base'), b.var('c2')),
        b.let('w', b.foreign('read_mem', b.var('c2')), _step(
            b.call('write_reg', b.var('rd'), b.var('w')))))),
    "load: base register holds an integer"))

EXEC_MOVE = FunctionDecl('exec_move', (('rd', GPR), ('rs', GPR)), BOOL, b.let(
    'w', b.call('read_reg', b.var('rs')), _step(
        b.call('write_reg', b.var('rd'), b.var('w')))))

EXEC_LEA = FunctionDecl('exec_lea', (('rd', GPR), ('imm', INT)), BOOL, _with_cap(
    'rd', 'c', b.let('c2', _moved(b.var('c'), b.var('imm')), b.seq(
        b.assert_(b.ne(_perm(b.var('c')), 'E'), "lea: enter capabilities are opaque"),
        _step(b.lemma('move_cursor', b.var('c'), b.var('c2')),
              b.call('write_reg', b.var('rd'), _cap(b.var('c2')))))),
    "lea: register holds an integer"))

EXEC_RESTRICT = FunctionDecl('exec_restrict', (('rd', GPR), ('p', PERMISSION)), BOOL, _with_cap(
    'rd', 'c', b.seq(
        b.assert_(_subperm(b.var('p'), _perm(b.var('c'))), "restrict: permission would grow"),
        _step(b.lemma('restrict_safe', b.var('c'), b.var('p')),
              b.call('write_reg', b.var('rd'), _cap(b.set_field(b.var('c'), 'perm', b.var('p')))))),
    "restrict: register holds an integer"))

EXEC_SUBSEG = FunctionDecl('exec_subseg', (('rd', GPR), ('r1', GPR), ('r2', GPR)), BOOL, _with_cap(
    'rd', 'c', _with_int(
        'r1', 'lo', _with_int(
            'r2', 'hi', b.seq(
                b.assert_(b.ne(_perm(b.var('c')), 'E'), "subseg: enter capabilities are opaque"),
                b.assert_(b.le(b.get(b.var('c'), 'begin'), b.var('lo')), "subseg: range would grow"),
                b.assert_(b.le(b.var('hi'), b.get(b.var('c'), 'end')), "subseg: range would grow"),
                _step(b.lemma('subseg_safe', b.var('c'), b.var('lo'), b.var('hi')),
                      b.call('write_reg', b.var('rd'), _cap(b.new(
                          'Capability', _perm(b.var('c')), b.var('lo'), b.var('hi'),
                          b.get(b.var('c'), 'cursor')))))),
            "subseg: bound register holds a capability"),
        "subseg: bound register holds a capability"),
    "subseg: register holds an integer"))


def _arith(name, params, first, second):

    """Integer addition clause; `second` is a register name or an immediate statement"""

    def with_second(body):
        if isinstance(second, str):
            return _with_int(second, 'y', body, f"{name}: operand holds a capability")
        return b.let('y', second, body)

    return FunctionDecl(name, params, BOOL, _with_int(first, 'x', with_second(
        b.let('sum', b.add(b.var('x'), b.var('y')), _step(
            b.lemma('int_safe', b.var('sum')),
            b.call('write_reg', b.var('rd'), b.construct('Int', b.var('sum')))))),
        f"{name}: operand holds a capability"))


EXEC_ADD = _arith('exec_add', (('rd', GPR), ('r1', GPR), ('r2', GPR)), 'r1', 'r2')
EXEC_ADDI = _arith('exec_addi', (('rd', GPR), ('rs', GPR), ('imm', INT)), 'rs', b.var('imm'))

EXEC_BNEZ = FunctionDecl('exec_bnez', (('rs', GPR), ('imm', INT)), BOOL, _with_int(
    'rs', 'z', b.seq(
        b.if_(b.ne(b.var('z'), 0), b.call('jump_pc', b.var('imm')), b.call('update_pc')),
        True),
    "bnez: register holds a capability"))

EXEC_JALR = FunctionDecl('exec_jalr', (('rd', GPR), ('rs', GPR)), BOOL, b.match(
    b.read('pc'),
    (b.ctor('Cap', 'pcc'), b.let('link', _moved(b.var('pcc'), 1), b.seq(
        b.lemma('subperm_not_E', 'R', _perm(b.var('pcc'))),
        b.lemma('move_cursor', b.var('pcc'), b.var('link')),
        b.let('t', b.call('read_reg', b.var('rs')), b.seq(
            b.call('write_reg', b.var('rd'), _cap(b.var('link'))),
            b.match(b.var('t'),
                    (b.ctor('Cap', 'tc'), b.if_(
                        b.eq(_perm(b.var('tc')), 'E'),
                        b.seq(b.lemma('enter_cap_exec', b.var('tc')),
                              b.write('pc', _cap(b.set_field(b.var('tc'), 'perm', 'R')))),
                        b.write('pc', b.var('t')))),
                    (b.ctor('Int', None), b.write('pc', b.var('t')))),
            True))))),
    (b.ctor('Int', None), b.fail("pc is not a capability"))))

EXEC_INSTR = FunctionDecl('exec_instr', (('i', INSTRUCTION),), BOOL, b.match(
    b.var('i'),
    (b.ctor('Store', 'rs', 'rb', 'imm'), b.call('exec_store', b.var('rs'), b.var('rb'), b.var('imm'))),
    (b.ctor('Load', 'rd', 'rb', 'imm'), b.call('exec_load', b.var('rd'), b.var('rb'), b.var('imm'))),
    (b.ctor('Jalr', 'rd', 'rs'), b.call('exec_jalr', b.var('rd'), b.var('rs'))),
    (b.ctor('Move', 'rd', 'rs'), b.call('exec_move', b.var('rd'), b.var('rs'))),
    (b.ctor('Lea', 'rd', 'imm'), b.call('exec_lea', b.var('rd'), b.var('imm'))),
    (b.ctor('Restrict', 'rd', 'p'), b.call('exec_restrict', b.var('rd'), b.var('p'))),
    (b.ctor('Subseg', 'rd', 'r1', 'r2'), b.call('exec_subseg', b.var('rd'), b.var('r1'), b.var('r2'))),
    (b.ctor('Add', 'rd', 'r1', 'r2'), b.call('exec_add', b.var('rd'), b.var('r1'), b.var('r2'))),
    (b.ctor('AddI', 'rd', 'rs', 'imm'), b.call('exec_addi', b.var('rd'), b.var('rs'), b.var('imm'))),
    (b.ctor('Bnez', 'rs', 'imm'), b.call('exec_bnez', b.var('rs'), b.var('imm'))),
    (b.ctor('Fail'), b.fail("fail instruction")),
    (b.ctor('Halt'), False)))

FDE_STEP = FunctionDecl('fdeStep', (), BOOL, b.match(
    b.call('fetch'),
    (b.ctor('Int', 'z'), b.call('exec_instr', b.foreign('decode', b.var('z')))),
    (b.ctor('Cap', None), b.fail("fetched word is a capability"))))

FDE_CYCLE = FunctionDecl('fdeCycle', (), UNIT, b.seq(b.call('fdeStep'), b.call('fdeCycle')))

FOREIGN_FUNCTIONS = (
    FunctionDecl('read_mem', (('c', CAPABILITY),), WORD, FOREIGN),
    FunctionDecl('write_mem', (('c', CAPABILITY), ('w', WORD)), UNIT, FOREIGN),
    FunctionDecl('decode', (('z', INT),), INSTRUCTION, FOREIGN),
)

FUNCTIONS = (READ_REG, WRITE_REG, UPDATE_PC, JUMP_PC, FETCH, EXEC_STORE, EXEC_LOAD, EXEC_MOVE,
             EXEC_LEA, EXEC_RESTRICT, EXEC_SUBSEG, EXEC_ADD, EXEC_ADDI, EXEC_BNEZ, EXEC_JALR,
             EXEC_INSTR, FDE_STEP, FDE_CYCLE) + FOREIGN_FUNCTIONS

REGISTERS_TYPES = {'pc': WORD, **{r: WORD for r in REGISTERS}}


def build_program(lemmas):
    return Program('minimalcaps', FUNCTIONS, lemmas, REGISTERS_TYPES)
