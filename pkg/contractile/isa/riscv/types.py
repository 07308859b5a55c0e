"""
Values of the RV32I machine with physical memory protection
"""

# built-ins
from dataclasses import dataclass

# internal packages
from ...core.prims import MASK32, primitive, signed32
from ...core.types import BITS32, BOOL, INT, Ctor, EnumType, RecordType, TupleType, UnionType


PRIVILEGES = ('User', 'Machine')
ACCESS_TYPES = ('Read', 'Write', 'ReadWrite', 'Execute')
MATCH_TYPES = ('OFF', 'TOR')
CSRS = ('mstatus', 'mtvec', 'mepc', 'mcause', 'pmpcfg0', 'pmpaddr0', 'pmpaddr1')
XREGS = tuple(f'x{i}' for i in range(32))
ALU_OPS = ('ADD', 'SUB', 'SLL', 'SLT', 'SLTU', 'XOR', 'SRL', 'SRA', 'OR', 'AND')
BRANCH_OPS = ('BEQ', 'BNE', 'BLT', 'BGE', 'BLTU', 'BGEU')

PRIVILEGE = EnumType('Privilege', PRIVILEGES)
ACCESS_TYPE = EnumType('AccessType', ACCESS_TYPES)
MATCH_TYPE = EnumType('PmpAddrMatchType', MATCH_TYPES)
CSR = EnumType('CSR', CSRS)
XREG = EnumType('XReg', XREGS)
ALU_OP = EnumType('AluOp', ALU_OPS)
BRANCH_OP = EnumType('BranchOp', BRANCH_OPS)


@dataclass(frozen=True)
class PmpCfg:

    """One byte of pmpcfg0: lock bit, address-matching mode and R/W/X permissions"""

    L: bool = False
    A: str = 'OFF'
    X: bool = False
    W: bool = False
    R: bool = False

    def __str__(self):
        flags = ''.join(f if getattr(self, f) else '-' for f in ('R', 'W', 'X'))
        return f"{self.A} {flags}{' L' if self.L else ''}"


PMPCFG = RecordType('PmpCfg', (('L', BOOL), ('A', MATCH_TYPE), ('X', BOOL), ('W', BOOL),
                               ('R', BOOL)), PmpCfg)

PMP_ENTRY = TupleType((PMPCFG, BITS32))
PMP_ENTRIES = TupleType((PMP_ENTRY, PMP_ENTRY))

INSTRUCTION = UnionType('RvInstr', (
    ('LUI', (XREG, INT)),
    ('AUIPC', (XREG, INT)),
    ('JAL', (XREG, INT)),
    ('JALR', (XREG, XREG, INT)),
    ('BRANCH', (BRANCH_OP, XREG, XREG, INT)),
    ('LW', (XREG, XREG, INT)),
    ('SW', (XREG, XREG, INT)),
    ('OPIMM', (ALU_OP, XREG, XREG, INT)),
    ('OP', (ALU_OP, XREG, XREG, XREG)),
    ('CSRRW', (XREG, CSR, XREG)),
    ('ECALL', ()),
    ('MRET', ()),
    ('ILLEGAL', (BITS32,)),
))

MEM_RESULT = UnionType('MemResult', (('MemValue', (BITS32,)), ('MemException', (INT,))))
EXEC_RESULT = UnionType('ExecResult', (('Retired', ()), ('Fault', (INT,))))


def instr(tag, *args):
    return Ctor(tag, tuple(args))


# trap causes
INSTRUCTION_MISALIGNED = 0
INSTRUCTION_ACCESS_FAULT = 1
ILLEGAL_INSTRUCTION = 2
LOAD_MISALIGNED = 4
LOAD_ACCESS_FAULT = 5
STORE_MISALIGNED = 6
STORE_ACCESS_FAULT = 7
ECALL_FROM_USER = 8
ECALL_FROM_MACHINE = 11


@primitive('misaligned_cause', 1)
def misaligned_cause(acc):
    return {'Execute': INSTRUCTION_MISALIGNED, 'Read': LOAD_MISALIGNED}.get(acc, STORE_MISALIGNED)


@primitive('access_fault_cause', 1)
def access_fault_cause(acc):
    return {'Execute': INSTRUCTION_ACCESS_FAULT, 'Read': LOAD_ACCESS_FAULT}.get(acc, STORE_ACCESS_FAULT)


@primitive('rv_alu', 3)
def rv_alu(op, a, b):

    """
    Result of a register-register or register-immediate ALU operation

    `b` may be a negative immediate; shifts use its low five bits.
    """

    a &= MASK32
    b &= MASK32
    if op == 'ADD':
        return (a + b) & MASK32
    if op == 'SUB':
        return (a - b) & MASK32
    if op == 'SLL':
        return (a << (b & 31)) & MASK32
    if op == 'SLT':
        return int(signed32(a) < signed32(b))
    if op == 'SLTU':
        return int(a < b)
    if op == 'XOR':
        return a ^ b
    if op == 'SRL':
        return a >> (b & 31)
    if op == 'SRA':
        return (signed32(a) >> (b & 31)) & MASK32
    if op == 'OR':
        return a | b
    if op == 'AND':
        return a & b
    raise ValueError(f"unknown ALU operation {op!r}")


@primitive('rv_branch_taken', 3)
def rv_branch_taken(op, a, b):
    if op == 'BEQ':
        return a == b
    if op == 'BNE':
        return a != b
    if op == 'BLT':
        return signed32(a) < signed32(b)
    if op == 'BGE':
        return signed32(a) >= signed32(b)
    if op == 'BLTU':
        return a < b
    if op == 'BGEU':
        return a >= b
    raise ValueError(f"unknown branch condition {op!r}")


# mstatus keeps only MPP, in bits 11 and 12

MPP_SHIFT = 11


@primitive('mpp_of_bits', 1)
def mpp_of_bits(bits):
    return 'Machine' if (bits >> MPP_SHIFT) & 3 == 3 else 'User'


@primitive('bits_of_mpp', 1)
def bits_of_mpp(mpp):
    return 3 << MPP_SHIFT if mpp == 'Machine' else 0


@primitive('access_leq', 2)
def access_leq(a, b):

    """True when access type `a` is implied by `b` (Read and Write are below ReadWrite)"""

    return a == b or (b == 'ReadWrite' and a in ('Read', 'Write'))
