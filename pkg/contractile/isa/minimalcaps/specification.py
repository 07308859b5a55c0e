"""
Contracts, predicates and ghost lemmas of MinimalCaps

V(w) says a word is safe to hand to untrusted code, E(w) that a capability is
safe to jump to, IH stands for the induction hypothesis over the step
function. All three are opaque and duplicable; only lemmas relate them.
GPRs packs the four general-purpose registers, each holding a V-safe word.
"""

# internal packages
from .semantics import build_program
from .types import CAPABILITY, GPR, INSTRUCTION, PERMISSION, REGISTERS, WORD, Capability, subperm
from ...core.types import INT
from ...logic.assertions import (EMP, Contract, LemmaDecl, Or, PointsToReg, Pred, Pure, exists,
                                 register_predicate, star)
from ...logic.terms import App, Lit, Var
from ...verifier.executor import Bundle


register_predicate('V', 1, duplicable=True)
register_predicate('E', 1, duplicable=True)
register_predicate('IH', 0, duplicable=True)
register_predicate('GPRs', 0)


def field(t, name):
    return App('field:' + name, (t,))


def cap(t):
    return App('ctor:Cap', (t,))


def int_word(t):
    return App('ctor:Int', (t,))


def capability(perm, begin, end, cursor):
    return App('record:Capability', (perm, begin, end, cursor))


def V(t):
    return Pred('V', (t,))


def E(t):
    return Pred('E', (t,))


IH = Pred('IH')
GPRS = Pred('GPRs')


def _eq(a, b):
    return App('eq', (a, b))


def _ne(a, b):
    return App('not', (_eq(a, b),))


def _subperm(p, q):
    return Pure(App('subperm', (p, q)))


C = Var('c', CAPABILITY)
C2 = Var('c2', CAPABILITY)
W = Var('w', WORD)
RESULT = Var('result')


# lemmas

def _opened_gprs():
    words = [Var(f'w{i}', WORD) for i in range(len(REGISTERS))]
    return exists(tuple((w.name, WORD) for w in words),
                  star(*(part for r, w in zip(REGISTERS, words)
                         for part in (PointsToReg(r, w), V(w)))))


def _same_authority(c, c2):
    return [Pure(_eq(field(c, f), field(c2, f))) for f in ('perm', 'begin', 'end')]


def grants_within(inner, outer):

    """True when every access capability `inner` authorizes, `outer` authorizes too"""

    if inner.perm == 'O' or inner.begin > inner.end:
        return True
    return (subperm(inner.perm, outer.perm)
            and outer.begin <= inner.begin and inner.end <= outer.end)


def _move_cursor_holds(c, c2):
    if c.perm == 'E' or (c.perm, c.begin, c.end) != (c2.perm, c2.begin, c2.end):
        return True
    return grants_within(c2, c)


def _restrict_holds(c, p):
    return not subperm(p, c.perm) or grants_within(Capability(p, c.begin, c.end, c.cursor), c)


def _subseg_holds(c, lo, hi):
    if c.perm == 'E' or not (c.begin <= lo and hi <= c.end):
        return True
    return grants_within(Capability(c.perm, lo, hi, c.cursor), c)


LEMMAS = {
    'open_GPRs': LemmaDecl('open_GPRs', (), GPRS, _opened_gprs()),
    'close_GPRs': LemmaDecl('close_GPRs', (), _opened_gprs(), GPRS),
    'move_cursor': LemmaDecl(
        'move_cursor', (('c', CAPABILITY), ('c2', CAPABILITY)),
        star(V(cap(C)), Pure(_ne(field(C, 'perm'), Lit('E'))), *_same_authority(C, C2)),
        V(cap(C2)),
        oracle=_move_cursor_holds),
    'subperm_not_E': LemmaDecl(
        'subperm_not_E', (('p', PERMISSION), ('q', PERMISSION)),
        star(Pure(App('or', (_eq(Var('p'), Lit('R')), _eq(Var('p'), Lit('RW'))))),
             _subperm(Var('p'), Var('q'))),
        Pure(_ne(Var('q'), Lit('E'))),
        oracle=lambda p, q: not (p in ('R', 'RW') and subperm(p, q)) or q != 'E'),
    'int_safe': LemmaDecl('int_safe', (('i', INT),), EMP, V(int_word(Var('i')))),
    'restrict_safe': LemmaDecl(
        'restrict_safe', (('c', CAPABILITY), ('p', PERMISSION)),
        star(V(cap(C)), _subperm(Var('p'), field(C, 'perm'))),
        V(cap(capability(Var('p'), field(C, 'begin'), field(C, 'end'), field(C, 'cursor')))),
        oracle=_restrict_holds),
    'subseg_safe': LemmaDecl(
        'subseg_safe', (('c', CAPABILITY), ('lo', INT), ('hi', INT)),
        star(V(cap(C)), Pure(_ne(field(C, 'perm'), Lit('E'))),
             Pure(App('le', (field(C, 'begin'), Var('lo')))),
             Pure(App('le', (Var('hi'), field(C, 'end'))))),
        V(cap(capability(field(C, 'perm'), Var('lo'), Var('hi'), field(C, 'cursor')))),
        oracle=_subseg_holds),
    # reconstructed: jumping to an enter capability hands over its range with read authority
    'enter_cap_exec': LemmaDecl(
        'enter_cap_exec', (('c', CAPABILITY),),
        star(V(cap(C)), Pure(_eq(field(C, 'perm'), Lit('E'))), IH),
        E(cap(capability(Lit('R'), field(C, 'begin'), field(C, 'end'), field(C, 'cursor'))))),
}


# contracts

def _pc_capability(c):
    return star(PointsToReg('pc', cap(c)), V(cap(c)), _subperm(Lit('R'), field(c, 'perm')))


STEP_POST = exists((('w', WORD),), star(PointsToReg('pc', W), Or(V(W), E(W)), GPRS))


def _clause(*params):
    return Contract(params + (('c', CAPABILITY),), star(_pc_capability(C), GPRS, IH), STEP_POST)


def _moves_pc(*params):
    return Contract(params + (('c', CAPABILITY),), _pc_capability(C),
                    exists((('c2', CAPABILITY),), star(PointsToReg('pc', cap(C2)), V(cap(C2)))))


CONTRACTS = {
    'read_reg': Contract((('r', GPR),), GPRS, star(GPRS, V(RESULT))),
    'write_reg': Contract((('r', GPR), ('w', WORD)), star(GPRS, V(W)), GPRS),
    'read_mem': Contract((('c', CAPABILITY),), star(V(cap(C)), _subperm(Lit('R'), field(C, 'perm'))),
                         V(RESULT)),
    'write_mem': Contract((('c', CAPABILITY), ('w', WORD)),
                          star(V(cap(C)), V(W), _subperm(Lit('RW'), field(C, 'perm'))), EMP),
    'decode': Contract((('z', INT),), EMP,
                       Pure(_eq(RESULT, App('decode_mc', (Var('z'),))))),
    'fetch': Contract((('w', WORD),), star(PointsToReg('pc', W), V(W)),
                      exists((('c', CAPABILITY),), star(_pc_capability(C), V(RESULT)))),
    'update_pc': _moves_pc(),
    'jump_pc': _moves_pc(('offset', INT)),
    'exec_store': _clause(('rs', GPR), ('rb', GPR), ('imm', INT)),
    'exec_load': _clause(('rd', GPR), ('rb', GPR), ('imm', INT)),
    'exec_move': _clause(('rd', GPR), ('rs', GPR)),
    'exec_lea': _clause(('rd', GPR), ('imm', INT)),
    'exec_restrict': _clause(('rd', GPR), ('p', PERMISSION)),
    'exec_subseg': _clause(('rd', GPR), ('r1', GPR), ('r2', GPR)),
    'exec_add': _clause(('rd', GPR), ('r1', GPR), ('r2', GPR)),
    'exec_addi': _clause(('rd', GPR), ('rs', GPR), ('imm', INT)),
    'exec_bnez': _clause(('rs', GPR), ('imm', INT)),
    'exec_jalr': _clause(('rd', GPR), ('rs', GPR)),
    'exec_instr': _clause(('i', INSTRUCTION)),
    'fdeStep': Contract((('w', WORD),), star(PointsToReg('pc', W), V(W), GPRS, IH), STEP_POST),
}


def universal_bundle(program=None, name='minimalcaps'):

    """Every function is called by contract; no ghost lemma is skipped"""

    return Bundle(name, program or build_program(LEMMAS), dict(CONTRACTS))
