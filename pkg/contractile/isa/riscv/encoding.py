"""
RV32I instruction encoding

Only the subset the machine executes is decoded; every other word, and every
word of a known opcode with a reserved field value, decodes to ILLEGAL.
"""

# internal packages
from .types import XREGS, instr
from ...core.prims import MASK32, primitive
from ...errors import EncodingError


OPCODE_LUI = 0x37
OPCODE_AUIPC = 0x17
OPCODE_JAL = 0x6F
OPCODE_JALR = 0x67
OPCODE_BRANCH = 0x63
OPCODE_LOAD = 0x03
OPCODE_STORE = 0x23
OPCODE_OPIMM = 0x13
OPCODE_OP = 0x33
OPCODE_SYSTEM = 0x73

ECALL_WORD = 0x00000073
MRET_WORD = 0x30200073
NOP_WORD = 0x00000013

CSR_NUMBERS = {
    'mstatus': 0x300,
    'mtvec': 0x305,
    'mepc': 0x341,
    'mcause': 0x342,
    'pmpcfg0': 0x3A0,
    'pmpaddr0': 0x3B0,
    'pmpaddr1': 0x3B1,
}
CSR_NAMES = {number: name for name, number in CSR_NUMBERS.items()}

BRANCH_FUNCT3 = {'BEQ': 0, 'BNE': 1, 'BLT': 4, 'BGE': 5, 'BLTU': 6, 'BGEU': 7}

# (funct7, funct3) of register-register operations
OP_FUNCTS = {
    'ADD': (0x00, 0), 'SUB': (0x20, 0), 'SLL': (0x00, 1), 'SLT': (0x00, 2),
    'SLTU': (0x00, 3), 'XOR': (0x00, 4), 'SRL': (0x00, 5), 'SRA': (0x20, 5),
    'OR': (0x00, 6), 'AND': (0x00, 7),
}
OPIMM_FUNCT3 = {'ADD': 0, 'SLL': 1, 'SLT': 2, 'SLTU': 3, 'XOR': 4, 'SRL': 5, 'SRA': 5,
                'OR': 6, 'AND': 7}
SHIFTS = ('SLL', 'SRL', 'SRA')


def sign_extend(value, bits):
    value &= (1 << bits) - 1
    return value - (1 << bits) if value >> (bits - 1) else value


def _reg(name):
    try:
        return XREGS.index(name)
    except ValueError:
        raise EncodingError(f"not a register: {name!r}") from None


def _signed_field(value, bits, what, multiple=1):
    low, high = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    if not low <= value <= high or value % multiple:
        raise EncodingError(f"{what} {value} does not fit {bits} signed bits"
                            + (f" as a multiple of {multiple}" if multiple > 1 else ""))
    return value & ((1 << bits) - 1)


def _i_type(opcode, funct3, rd, rs1, imm):
    return opcode | _reg(rd) << 7 | funct3 << 12 | _reg(rs1) << 15 | _signed_field(imm, 12, 'immediate') << 20


def _s_type(funct3, rs2, rs1, imm):
    imm = _signed_field(imm, 12, 'offset')
    return (OPCODE_STORE | (imm & 0x1F) << 7 | funct3 << 12 | _reg(rs1) << 15 | _reg(rs2) << 20
            | (imm >> 5) << 25)


def _b_type(funct3, rs1, rs2, imm):
    imm = _signed_field(imm, 13, 'branch offset', 2)
    return (OPCODE_BRANCH | ((imm >> 11) & 1) << 7 | ((imm >> 1) & 0xF) << 8 | funct3 << 12
            | _reg(rs1) << 15 | _reg(rs2) << 20 | ((imm >> 5) & 0x3F) << 25 | ((imm >> 12) & 1) << 31)


def _j_type(rd, imm):
    imm = _signed_field(imm, 21, 'jump offset', 2)
    return (OPCODE_JAL | _reg(rd) << 7 | ((imm >> 12) & 0xFF) << 12 | ((imm >> 11) & 1) << 20
            | ((imm >> 1) & 0x3FF) << 21 | ((imm >> 20) & 1) << 31)


def _upper(opcode, rd, imm):
    if not 0 <= imm < 1 << 20:
        raise EncodingError(f"upper immediate {imm} does not fit 20 bits")
    return opcode | _reg(rd) << 7 | imm << 12


def encode_rv(instruction):

    """
    Parameters
    ----------
    instruction : Ctor
        An RvInstr value

    Returns
    -------
    int
        The 32-bit instruction word

    Raises
    ------
    EncodingError
        when an operand is out of range or the constructor is unknown
    """

    tag, args = instruction.tag, instruction.args
    if tag == 'LUI':
        return _upper(OPCODE_LUI, *args)
    if tag == 'AUIPC':
        return _upper(OPCODE_AUIPC, *args)
    if tag == 'JAL':
        return _j_type(*args)
    if tag == 'JALR':
        rd, rs1, imm = args
        return _i_type(OPCODE_JALR, 0, rd, rs1, imm)
    if tag == 'BRANCH':
        op, rs1, rs2, imm = args
        return _b_type(BRANCH_FUNCT3[op], rs1, rs2, imm)
    if tag == 'LW':
        rd, rs1, imm = args
        return _i_type(OPCODE_LOAD, 2, rd, rs1, imm)
    if tag == 'SW':
        rs2, rs1, imm = args
        return _s_type(2, rs2, rs1, imm)
    if tag == 'OPIMM':
        op, rd, rs1, imm = args
        if op == 'SUB' or op not in OPIMM_FUNCT3:
            raise EncodingError(f"no immediate form of {op}")
        if op in SHIFTS:
            if not 0 <= imm < 32:
                raise EncodingError(f"shift amount {imm} out of range")
            funct7 = 0x20 if op == 'SRA' else 0
            return (OPCODE_OPIMM | _reg(rd) << 7 | OPIMM_FUNCT3[op] << 12 | _reg(rs1) << 15
                    | imm << 20 | funct7 << 25)
        return _i_type(OPCODE_OPIMM, OPIMM_FUNCT3[op], rd, rs1, imm)
    if tag == 'OP':
        op, rd, rs1, rs2 = args
        funct7, funct3 = OP_FUNCTS[op]
        return (OPCODE_OP | _reg(rd) << 7 | funct3 << 12 | _reg(rs1) << 15 | _reg(rs2) << 20
                | funct7 << 25)
    if tag == 'CSRRW':
        rd, csr, rs1 = args
        if csr not in CSR_NUMBERS:
            raise EncodingError(f"unknown CSR {csr!r}")
        return OPCODE_SYSTEM | _reg(rd) << 7 | 1 << 12 | _reg(rs1) << 15 | CSR_NUMBERS[csr] << 20
    if tag == 'ECALL':
        return ECALL_WORD
    if tag == 'MRET':
        return MRET_WORD
    if tag == 'ILLEGAL':
        return args[0] & MASK32
    raise EncodingError(f"not an RV32I instruction: {instruction!r}")


@primitive('decode_rv', 1)
def decode_rv(word):
    word &= MASK32
    opcode = word & 0x7F
    rd = XREGS[(word >> 7) & 31]
    funct3 = (word >> 12) & 7
    rs1 = XREGS[(word >> 15) & 31]
    rs2 = XREGS[(word >> 20) & 31]
    funct7 = word >> 25
    illegal = instr('ILLEGAL', word)

    if opcode in (OPCODE_LUI, OPCODE_AUIPC):
        return instr('LUI' if opcode == OPCODE_LUI else 'AUIPC', rd, word >> 12)
    if opcode == OPCODE_JAL:
        imm = ((word >> 31) << 20 | ((word >> 12) & 0xFF) << 12 | ((word >> 20) & 1) << 11
               | ((word >> 21) & 0x3FF) << 1)
        return instr('JAL', rd, sign_extend(imm, 21))
    if opcode == OPCODE_JALR:
        return instr('JALR', rd, rs1, sign_extend(word >> 20, 12)) if funct3 == 0 else illegal
    if opcode == OPCODE_BRANCH:
        ops = {code: op for op, code in BRANCH_FUNCT3.items()}
        if funct3 not in ops:
            return illegal
        imm = ((word >> 31) << 12 | ((word >> 7) & 1) << 11 | ((word >> 25) & 0x3F) << 5
               | ((word >> 8) & 0xF) << 1)
        return instr('BRANCH', ops[funct3], rs1, rs2, sign_extend(imm, 13))
    if opcode == OPCODE_LOAD:
        return instr('LW', rd, rs1, sign_extend(word >> 20, 12)) if funct3 == 2 else illegal
    if opcode == OPCODE_STORE:
        if funct3 != 2:
            return illegal
        return instr('SW', rs2, rs1, sign_extend(funct7 << 5 | (word >> 7) & 0x1F, 12))
    if opcode == OPCODE_OPIMM:
        if funct3 == 1:
            return instr('OPIMM', 'SLL', rd, rs1, (word >> 20) & 31) if funct7 == 0 else illegal
        if funct3 == 5:
            shifts = {0x00: 'SRL', 0x20: 'SRA'}
            if funct7 not in shifts:
                return illegal
            return instr('OPIMM', shifts[funct7], rd, rs1, (word >> 20) & 31)
        op = {0: 'ADD', 2: 'SLT', 3: 'SLTU', 4: 'XOR', 6: 'OR', 7: 'AND'}[funct3]
        return instr('OPIMM', op, rd, rs1, sign_extend(word >> 20, 12))
    if opcode == OPCODE_OP:
        for op, functs in OP_FUNCTS.items():
            if functs == (funct7, funct3):
                return instr('OP', op, rd, rs1, rs2)
        return illegal
    if opcode == OPCODE_SYSTEM:
        if word == ECALL_WORD:
            return instr('ECALL')
        if word == MRET_WORD:
            return instr('MRET')
        if funct3 == 1 and (word >> 20) in CSR_NAMES:
            return instr('CSRRW', rd, CSR_NAMES[word >> 20], rs1)
        return illegal
    return illegal


_MNEMONICS = {'ADD': 'add', 'SUB': 'sub', 'SLL': 'sll', 'SLT': 'slt', 'SLTU': 'sltu',
              'XOR': 'xor', 'SRL': 'srl', 'SRA': 'sra', 'OR': 'or', 'AND': 'and'}
_IMMEDIATE_MNEMONICS = {'ADD': 'addi', 'SLL': 'slli', 'SLT': 'slti', 'SLTU': 'sltiu',
                        'XOR': 'xori', 'SRL': 'srli', 'SRA': 'srai', 'OR': 'ori', 'AND': 'andi'}


def show_rv(instruction):

    """Assembly syntax of a decoded instruction"""

    tag, args = instruction.tag, instruction.args
    if tag in ('LUI', 'AUIPC', 'JAL'):
        return f"{tag.lower()} {args[0]}, {args[1]}"
    if tag == 'JALR':
        return f"jalr {args[0]}, {args[2]}({args[1]})"
    if tag == 'BRANCH':
        return f"{args[0].lower()} {args[1]}, {args[2]}, {args[3]}"
    if tag == 'LW':
        return f"lw {args[0]}, {args[2]}({args[1]})"
    if tag == 'SW':
        return f"sw {args[0]}, {args[2]}({args[1]})"
    if tag == 'OPIMM':
        return f"{_IMMEDIATE_MNEMONICS[args[0]]} {args[1]}, {args[2]}, {args[3]}"
    if tag == 'OP':
        return f"{_MNEMONICS[args[0]]} {args[1]}, {args[2]}, {args[3]}"
    if tag == 'CSRRW':
        return f"csrrw {args[0]}, {args[1]}, {args[2]}"
    if tag == 'ILLEGAL':
        return f".word {args[0]:#010x}"
    return tag.lower()
