"""
Random instructions, words and machine states for fuzzing

All generators draw from a numpy Generator and return plain Python values;
numpy scalars never reach the machines, whose pattern matching compares
literal types exactly.
"""

# internal packages
from ..isa.minimalcaps.encoding import encode_mc
from ..isa.minimalcaps.types import PERMISSIONS, REGISTERS, Cap, Int
from ..isa.minimalcaps.types import instr as mc_instr
from ..isa.riscv.encoding import encode_rv
from ..isa.riscv.pmp import pmpcfg_of_byte
from ..isa.riscv.types import ALU_OPS, BRANCH_OPS, CSRS, PRIVILEGES, XREGS, instr


RV_KINDS = ('SW', 'LW', 'OPIMM', 'OP', 'LUI', 'AUIPC', 'JAL', 'JALR', 'BRANCH', 'CSRRW',
            'ECALL', 'MRET')
RV_WEIGHTS = (0.22, 0.12, 0.16, 0.08, 0.05, 0.05, 0.06, 0.05, 0.07, 0.06, 0.04, 0.04)

# the private word of the femtokernel and the rest of low memory
HOT_ADDRESSES = (84, 80, 72, 88, 0)

RAW_WORD_RATE = 0.1


def _pick(rng, items):
    return items[int(rng.integers(len(items)))]


def _chance(rng, p):
    return bool(rng.random() < p)


def _xreg(rng):
    return _pick(rng, XREGS[:4]) if _chance(rng, 0.6) else _pick(rng, XREGS)


def _low_address(rng):
    if _chance(rng, 0.3):
        return _pick(rng, HOT_ADDRESSES)
    return 4 * int(rng.integers(0, 25))


def _small_offset(rng):
    return 4 * int(rng.integers(-8, 9))


def random_rv_instruction(rng):

    """
    A well-formed RV32I instruction

    Stores and loads favour `x0` as base with a small word-aligned offset, so
    that many of them aim at low memory where the kernel lives.
    """

    kind = str(rng.choice(RV_KINDS, p=RV_WEIGHTS))
    if kind in ('SW', 'LW'):
        if _chance(rng, 0.6):
            return instr(kind, _xreg(rng), 'x0', _low_address(rng))
        return instr(kind, _xreg(rng), _xreg(rng), _small_offset(rng))
    if kind == 'OPIMM':
        op = _pick(rng, ALU_OPS[:1] + ALU_OPS[2:])
        if op in ('SLL', 'SRL', 'SRA'):
            imm = int(rng.integers(0, 32))
        elif _chance(rng, 0.5):
            imm = _low_address(rng)
        else:
            imm = int(rng.integers(-2048, 2048))
        return instr('OPIMM', op, _xreg(rng), _xreg(rng), imm)
    if kind == 'OP':
        return instr('OP', _pick(rng, ALU_OPS), _xreg(rng), _xreg(rng), _xreg(rng))
    if kind in ('LUI', 'AUIPC'):
        imm = int(rng.integers(0, 4)) if _chance(rng, 0.7) else int(rng.integers(0, 1 << 20))
        return instr(kind, _xreg(rng), imm)
    if kind == 'JAL':
        return instr('JAL', _xreg(rng), _small_offset(rng))
    if kind == 'JALR':
        return instr('JALR', _xreg(rng), _xreg(rng), _small_offset(rng))
    if kind == 'BRANCH':
        return instr('BRANCH', _pick(rng, BRANCH_OPS), _xreg(rng), _xreg(rng), _small_offset(rng))
    if kind == 'CSRRW':
        return instr('CSRRW', _xreg(rng), _pick(rng, CSRS), _xreg(rng))
    return instr(kind)


def random_rv_word(rng):

    """An encoded random instruction, or now and then a uniformly random word"""

    if _chance(rng, RAW_WORD_RATE):
        return int(rng.integers(0, 1 << 32))
    return encode_rv(random_rv_instruction(rng))


def random_rv_words(rng, count):
    return [random_rv_word(rng) for _ in range(count)]


def _register_value(rng, memsize):
    if _chance(rng, 0.6):
        return 4 * int(rng.integers(0, memsize // 4 + 4))
    return int(rng.integers(0, 1 << 32))


def random_rv_state(rng, memsize, make_state, words=8):

    """
    A random RISC-V machine whose pc points at a random word

    PMP entries take random configuration bytes and addresses; the state is
    meant for differential runs of single steps, not for the femtokernel.
    """

    span = min(memsize, 256)
    pc = 4 * int(rng.integers(0, span // 4))
    registers = {
        'pc': pc,
        'cur_privilege': _pick(rng, PRIVILEGES),
        'mstatus': _pick(rng, PRIVILEGES),
        'mtvec': 4 * int(rng.integers(0, span // 4)),
        'mcause': int(rng.integers(0, 12)),
        'mepc': 4 * int(rng.integers(0, span // 4)),
        'pmp0cfg': pmpcfg_of_byte(int(rng.integers(0, 256))),
        'pmp1cfg': pmpcfg_of_byte(int(rng.integers(0, 256))),
        'pmpaddr0': 4 * int(rng.integers(0, span // 4 + 1)),
        'pmpaddr1': memsize if _chance(rng, 0.5) else 4 * int(rng.integers(0, span // 4 + 1)),
    }
    registers.update({x: _register_value(rng, memsize) for x in XREGS[1:]})
    memory = {4 * int(rng.integers(0, span // 4)): random_rv_word(rng) for _ in range(words)}
    memory[pc] = random_rv_word(rng)
    return make_state(memsize, registers=registers, memory=memory)


# MinimalCaps

MC_KINDS = ('Store', 'Load', 'Jalr', 'Move', 'Lea', 'Restrict', 'Subseg', 'Add', 'AddI', 'Bnez',
            'Fail', 'Halt')
MC_WEIGHTS = (0.16, 0.14, 0.08, 0.1, 0.1, 0.07, 0.07, 0.06, 0.1, 0.08, 0.02, 0.02)


def _mc_reg(rng):
    return _pick(rng, REGISTERS)


def _mc_imm(rng):
    return int(rng.integers(-4, 9))


def random_mc_instruction(rng):
    tag = str(rng.choice(MC_KINDS, p=MC_WEIGHTS))
    if tag in ('Store', 'Load', 'AddI'):
        return mc_instr(tag, _mc_reg(rng), _mc_reg(rng), _mc_imm(rng))
    if tag in ('Jalr', 'Move'):
        return mc_instr(tag, _mc_reg(rng), _mc_reg(rng))
    if tag in ('Lea', 'Bnez'):
        return mc_instr(tag, _mc_reg(rng), _mc_imm(rng))
    if tag == 'Restrict':
        return mc_instr(tag, _mc_reg(rng), _pick(rng, PERMISSIONS))
    if tag in ('Subseg', 'Add'):
        return mc_instr(tag, _mc_reg(rng), _mc_reg(rng), _mc_reg(rng))
    return mc_instr(tag)


def random_mc_program(rng, length):
    return [encode_mc(random_mc_instruction(rng)) for _ in range(length)]


def random_capability(rng, memsize, perms=PERMISSIONS):
    begin = int(rng.integers(0, memsize))
    end = int(rng.integers(begin, min(memsize, begin + 32)))
    cursor = int(rng.integers(max(0, begin - 2), end + 3))
    return Cap(_pick(rng, perms), begin, end, cursor)


def random_mc_word(rng, memsize):
    if _chance(rng, 0.5):
        return random_capability(rng, memsize)
    return Int(int(rng.integers(-4, memsize)))


def random_mc_state(rng, memsize, make_state, length=8):

    """
    A MinimalCaps machine running a random program of `length` words

    The program sits at a random base under an R or RW pc capability; the
    general-purpose registers hold random words.
    """

    base = int(rng.integers(0, max(1, memsize - length)))
    pc = Cap(_pick(rng, ('R', 'RW')), base, base + length - 1, base)
    memory = {base + i: Int(w) for i, w in enumerate(random_mc_program(rng, length))}
    registers = {'pc': pc, **{r: random_mc_word(rng, memsize) for r in REGISTERS}}
    return make_state(memsize, registers=registers, memory=memory)
