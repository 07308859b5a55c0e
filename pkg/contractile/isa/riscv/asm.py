"""
A two-pass assembler for the RV32I subset

Supports labels, the instructions the machine decodes, the pseudo
instructions nop, mv, j, li and la, and the directives .word and .org (which
pads with NOPs up to an address). Registers may be written x0-x31 or by
their ABI names.
"""

# built-ins
import re

# internal packages
from .encoding import CSR_NUMBERS, NOP_WORD, encode_rv, sign_extend
from .types import BRANCH_OPS, XREGS, instr
from ...core.prims import MASK32
from ...errors import EncodingError, ParseError


ABI_NAMES = {'zero': 'x0', 'ra': 'x1', 'sp': 'x2', 'gp': 'x3', 'tp': 'x4', 'fp': 'x8'}
ABI_NAMES.update({f't{i}': f'x{n}' for i, n in enumerate((5, 6, 7, 28, 29, 30, 31))})
ABI_NAMES.update({f's{i}': f'x{n}' for i, n in enumerate((8, 9, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27))})
ABI_NAMES.update({f'a{i}': f'x{10 + i}' for i in range(8)})

REGISTER_OPS = {'add': 'ADD', 'sub': 'SUB', 'sll': 'SLL', 'slt': 'SLT', 'sltu': 'SLTU',
                'xor': 'XOR', 'srl': 'SRL', 'sra': 'SRA', 'or': 'OR', 'and': 'AND'}
IMMEDIATE_OPS = {'addi': 'ADD', 'slli': 'SLL', 'slti': 'SLT', 'sltiu': 'SLTU', 'xori': 'XOR',
                 'srli': 'SRL', 'srai': 'SRA', 'ori': 'OR', 'andi': 'AND'}
BRANCHES = {op.lower(): op for op in BRANCH_OPS}

_OFFSET = re.compile(r'^(-?\w+)\((\w+)\)$')
_LABEL = re.compile(r'^[A-Za-z_.][\w.]*$')


def register(token):
    name = ABI_NAMES.get(token.lower(), token.lower())
    if name not in XREGS:
        raise ValueError(f"not a register: {token!r}")
    return name


def split_li(value):

    """(upper, lower) immediates of lui+addi loading `value`; upper is 0 when addi alone does"""

    value = sign_extend(value & MASK32, 32)
    if -2048 <= value < 2048:
        return 0, value
    upper = ((value + 0x800) >> 12) & 0xFFFFF
    return upper, value - sign_extend(upper << 12, 32)


def _li_size(value):
    upper, lower = split_li(value)
    return 1 if upper == 0 or lower == 0 else 2


class Assembler:

    """
    Parameters
    ----------
    base : int
        Address of the first instruction
    """

    def __init__(self, base=0):

        self.base = base
        self.labels = {}

    def _statements(self, text):
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            while True:
                head, colon, rest = line.partition(':')
                if not colon or not _LABEL.match(head.strip()):
                    break
                yield number, head.strip() + ':', []
                line = rest.strip()
            if line:
                mnemonic, _, operands = line.partition(' ')
                yield number, mnemonic.lower(), [o.strip() for o in operands.split(',') if o.strip()]

    def _size(self, mnemonic, operands, addr, number):

        """Bytes emitted by one statement"""

        if mnemonic == '.org':
            target = int(operands[0], 0)
            if target < addr:
                raise ParseError(number, f".org {target:#x} is behind the current address {addr:#x}")
            return target - addr
        if mnemonic == 'la':
            return 8
        if mnemonic == 'li':
            return 4 * _li_size(int(operands[1], 0))
        return 4

    def _value(self, token, number):
        if token in self.labels:
            return self.labels[token]
        try:
            return int(token, 0)
        except ValueError:
            raise ParseError(number, f"unknown label or number {token!r}") from None

    def _target(self, token, addr, number):

        """Pc-relative offset of a label, or a literal offset"""

        if token in self.labels:
            return self.labels[token] - addr
        return self._value(token, number)

    def _offset(self, token, number):
        m = _OFFSET.match(token.replace(' ', ''))
        if m is None:
            raise ParseError(number, f"expected offset(register), got {token!r}")
        return self._value(m.group(1), number), register(m.group(2))

    def _emit(self, mnemonic, ops, addr, number):

        """Instructions (Ctor values, or raw ints for .word) of one statement"""

        if mnemonic == 'nop':
            return [instr('OPIMM', 'ADD', 'x0', 'x0', 0)]
        if mnemonic == '.word':
            return [self._value(ops[0], number) & MASK32]
        if mnemonic == '.org':
            return [NOP_WORD] * ((int(ops[0], 0) - addr) // 4)
        if mnemonic in ('ecall', 'mret'):
            return [instr(mnemonic.upper())]
        if mnemonic in ('lui', 'auipc'):
            return [instr(mnemonic.upper(), register(ops[0]), self._value(ops[1], number))]
        if mnemonic == 'jal':
            rd, target = (register(ops[0]), ops[1]) if len(ops) == 2 else ('x1', ops[0])
            return [instr('JAL', rd, self._target(target, addr, number))]
        if mnemonic == 'j':
            return [instr('JAL', 'x0', self._target(ops[0], addr, number))]
        if mnemonic == 'jalr':
            imm, rs1 = self._offset(ops[1], number)
            return [instr('JALR', register(ops[0]), rs1, imm)]
        if mnemonic in BRANCHES:
            return [instr('BRANCH', BRANCHES[mnemonic], register(ops[0]), register(ops[1]),
                          self._target(ops[2], addr, number))]
        if mnemonic == 'lw':
            imm, rs1 = self._offset(ops[1], number)
            return [instr('LW', register(ops[0]), rs1, imm)]
        if mnemonic == 'sw':
            imm, rs1 = self._offset(ops[1], number)
            return [instr('SW', register(ops[0]), rs1, imm)]
        if mnemonic in IMMEDIATE_OPS:
            return [instr('OPIMM', IMMEDIATE_OPS[mnemonic], register(ops[0]), register(ops[1]),
                          self._value(ops[2], number))]
        if mnemonic in REGISTER_OPS:
            return [instr('OP', REGISTER_OPS[mnemonic], *(register(o) for o in ops))]
        if mnemonic == 'mv':
            return [instr('OPIMM', 'ADD', register(ops[0]), register(ops[1]), 0)]
        if mnemonic == 'csrrw':
            if ops[1] not in CSR_NUMBERS:
                raise ParseError(number, f"unknown CSR {ops[1]!r}")
            return [instr('CSRRW', register(ops[0]), ops[1], register(ops[2]))]
        if mnemonic == 'li':
            rd = register(ops[0])
            upper, lower = split_li(int(ops[1], 0))
            if upper == 0:
                return [instr('OPIMM', 'ADD', rd, 'x0', lower)]
            emitted = [instr('LUI', rd, upper)]
            if lower:
                emitted.append(instr('OPIMM', 'ADD', rd, rd, lower))
            return emitted
        if mnemonic == 'la':
            rd = register(ops[0])
            offset = self._target(ops[1], addr, number)
            upper = ((offset + 0x800) >> 12) & 0xFFFFF
            lower = offset - sign_extend(upper << 12, 32)
            return [instr('AUIPC', rd, upper), instr('OPIMM', 'ADD', rd, rd, lower)]
        raise ParseError(number, f"unknown mnemonic {mnemonic!r}")

    def assemble(self, text):

        """
        Returns
        -------
        list of (int, int)
            (address, word) pairs in address order

        Raises
        ------
        ParseError
            on unknown mnemonics, registers, labels or operands out of range
        """

        statements = list(self._statements(text))

        self.labels = {}
        addr = self.base
        for number, mnemonic, operands in statements:
            if mnemonic.endswith(':'):
                label = mnemonic[:-1]
                if label in self.labels:
                    raise ParseError(number, f"duplicate label {label!r}")
                self.labels[label] = addr
                continue
            try:
                addr += self._size(mnemonic, operands, addr, number)
            except (IndexError, ValueError) as e:
                raise ParseError(number, f"bad operands for {mnemonic}: {e}") from None

        words = []
        addr = self.base
        for number, mnemonic, operands in statements:
            if mnemonic.endswith(':'):
                continue
            try:
                emitted = self._emit(mnemonic, operands, addr, number)
                for item in emitted:
                    words.append((addr, item if isinstance(item, int) else encode_rv(item)))
                    addr += 4
            except (IndexError, ValueError, EncodingError) as e:
                raise ParseError(number, f"bad operands for {mnemonic}: {e}") from None
        return words


def assemble(text, base=0):
    return Assembler(base).assemble(text)


def image_text(words, show_word):
    return '\n'.join(f"{addr:x} {show_word(word)}" for addr, word in words) + '\n'
