"""
Binary encoding of MinimalCaps instructions

Layout of a word: bits 0-3 opcode, bits 4-5 first register, bits 6-7 second
register, bits 8 and up an operand field. Immediates are stored zigzag
encoded; Restrict stores a permission code and Subseg its third register in
the operand field. Opcodes 12 to 15, words below zero and malformed operand
fields decode to Fail.
"""

# internal packages
from .types import PERMISSIONS, REGISTERS, instr
from ...core.prims import primitive
from ...errors import EncodingError


OPCODES = {
    'Fail': 0,
    'Store': 1,
    'Load': 2,
    'Jalr': 3,
    'Move': 4,
    'Lea': 5,
    'Restrict': 6,
    'Subseg': 7,
    'Add': 8,
    'AddI': 9,
    'Bnez': 10,
    'Halt': 11,
}
TAGS = {code: tag for tag, code in OPCODES.items()}


def zigzag(n):
    return 2 * n if n >= 0 else -2 * n - 1


def unzigzag(z):
    return z >> 1 if z % 2 == 0 else -((z + 1) >> 1)


def _reg(name):
    try:
        return REGISTERS.index(name)
    except ValueError:
        raise EncodingError(f"not a general-purpose register: {name!r}") from None


def _fields(tag, args):

    """(a, b, operand) fields of an instruction"""

    if tag in ('Store', 'Load', 'AddI'):
        a, b, imm = args
        return _reg(a), _reg(b), zigzag(imm)
    if tag in ('Jalr', 'Move'):
        a, b = args
        return _reg(a), _reg(b), 0
    if tag in ('Lea', 'Bnez'):
        a, imm = args
        return _reg(a), 0, zigzag(imm)
    if tag == 'Restrict':
        a, perm = args
        if perm not in PERMISSIONS:
            raise EncodingError(f"not a permission: {perm!r}")
        return _reg(a), 0, PERMISSIONS.index(perm)
    if tag in ('Subseg', 'Add'):
        a, b, c = args
        return _reg(a), _reg(b), _reg(c)
    return 0, 0, 0


def encode_mc(instruction):

    """
    Parameters
    ----------
    instruction : Ctor
        A McInstr value

    Returns
    -------
    int

    Raises
    ------
    EncodingError
        on an unknown constructor or an operand that is not a register or
        permission name
    """

    try:
        opcode = OPCODES[instruction.tag]
    except KeyError:
        raise EncodingError(f"not a MinimalCaps instruction: {instruction!r}") from None
    a, b, operand = _fields(instruction.tag, instruction.args)
    return opcode | a << 4 | b << 6 | operand << 8


@primitive('decode_mc', 1)
def decode_mc(word):
    if not isinstance(word, int) or isinstance(word, bool) or word < 0:
        return instr('Fail')
    tag = TAGS.get(word & 0xF, 'Fail')
    a = REGISTERS[(word >> 4) & 3]
    b = REGISTERS[(word >> 6) & 3]
    operand = word >> 8

    if tag in ('Store', 'Load', 'AddI'):
        return instr(tag, a, b, unzigzag(operand))
    if tag in ('Jalr', 'Move'):
        return instr(tag, a, b)
    if tag in ('Lea', 'Bnez'):
        return instr(tag, a, unzigzag(operand))
    if tag == 'Restrict':
        if operand >= len(PERMISSIONS):
            return instr('Fail')
        return instr(tag, a, PERMISSIONS[operand])
    if tag in ('Subseg', 'Add'):
        if operand >= len(REGISTERS):
            return instr('Fail')
        return instr(tag, a, b, REGISTERS[operand])
    return instr(tag)


def show_instr(instruction):
    if not instruction.args:
        return instruction.tag.lower()
    return f"{instruction.tag.lower()} " + ", ".join(str(a) for a in instruction.args)
