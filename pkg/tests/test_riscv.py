
# built-ins
import itertools

# internal packages
from contractile.errors import EncodingError, ParseError
from contractile.isa.riscv import (ALLOW, DENY, PmpCfg, assemble, byte_oracle, decode_rv,
                                   encode_rv, entries_of, instr, interpreter, make_state, parse_word,
                                   pmp_access, pmp_check, pmp_check_decl, pmpcfg_of_byte, show_rv)
from contractile.isa.riscv.asm import split_li
from contractile.isa.riscv.encoding import CSR_NUMBERS, ECALL_WORD, MRET_WORD, NOP_WORD
from contractile.isa.riscv.pmp import byte_of_pmpcfg
from contractile.isa.riscv.types import ALU_OPS, BRANCH_OPS, XREGS
from contractile.machine import OutOfFuel, Value

# external packages
import pytest
from hypothesis import given, strategies as st


xregs = st.sampled_from(XREGS)
imm12 = st.integers(-2048, 2047)

instructions = st.one_of(
    st.tuples(st.sampled_from(['LUI', 'AUIPC']), xregs, st.integers(0, (1 << 20) - 1)),
    st.tuples(st.just('JAL'), xregs, st.integers(-(1 << 19), (1 << 19) - 1).map(lambda n: 2 * n)),
    st.tuples(st.sampled_from(['JALR', 'LW', 'SW']), xregs, xregs, imm12),
    st.tuples(st.just('BRANCH'), st.sampled_from(BRANCH_OPS), xregs, xregs,
              st.integers(-2048, 2047).map(lambda n: 2 * n)),
    st.tuples(st.just('OPIMM'), st.sampled_from(['ADD', 'SLT', 'SLTU', 'XOR', 'OR', 'AND']),
              xregs, xregs, imm12),
    st.tuples(st.just('OPIMM'), st.sampled_from(['SLL', 'SRL', 'SRA']), xregs, xregs,
              st.integers(0, 31)),
    st.tuples(st.just('OP'), st.sampled_from(ALU_OPS), xregs, xregs, xregs),
    st.tuples(st.just('CSRRW'), xregs, st.sampled_from(sorted(CSR_NUMBERS)), xregs),
    st.sampled_from([('ECALL',), ('MRET',)]),
).map(lambda p: instr(*p))


class TestEncoding:

    @given(instructions)
    def test_round_trip(self, i):
        """decoding an encoded instruction gives it back"""
        assert decode_rv(encode_rv(i)) == i

    @given(st.integers(0, 0xFFFFFFFF))
    def test_every_word_decodes(self, word):
        i = decode_rv(word)
        if i.tag == 'ILLEGAL':
            assert i.args == (word,)
        else:
            assert encode_rv(i) == word

    def test_known_words(self):
        assert encode_rv(instr('OPIMM', 'ADD', 'x1', 'x0', 5)) == 0x00500093
        assert encode_rv(instr('OPIMM', 'ADD', 'x0', 'x0', 0)) == NOP_WORD == 0x13
        assert encode_rv(instr('ECALL')) == ECALL_WORD == 0x73
        assert encode_rv(instr('MRET')) == MRET_WORD == 0x30200073
        assert decode_rv(0x3b009073) == instr('CSRRW', 'x0', 'pmpaddr0', 'x1')
        assert decode_rv(0x00c0a083) == instr('LW', 'x1', 'x1', 12)
        assert decode_rv(0x000010b7) == instr('LUI', 'x1', 1)

    @pytest.mark.parametrize('word', [0, 0xFFFFFFFF, 0x00001073 | 0x123 << 20])
    def test_illegal(self, word):
        assert decode_rv(word) == instr('ILLEGAL', word)

    @pytest.mark.parametrize('bad', [
        instr('OPIMM', 'SUB', 'x1', 'x1', 1),
        instr('OPIMM', 'ADD', 'x1', 'x1', 2048),
        instr('OPIMM', 'SLL', 'x1', 'x1', 32),
        instr('JAL', 'x1', 3),
        instr('BRANCH', 'BEQ', 'x1', 'x2', 4096),
        instr('LUI', 'x1', 1 << 20),
        instr('CSRRW', 'x0', 'satp', 'x1'),
        instr('ADDI', 'x1', 'x0', 1),
        instr('OPIMM', 'ADD', 'x32', 'x0', 1),
    ])
    def test_unencodable(self, bad):
        with pytest.raises(EncodingError):
            encode_rv(bad)

    def test_show(self):
        assert show_rv(decode_rv(0x00500093)) == "addi x1, x0, 5"
        assert show_rv(decode_rv(0x00c0a083)) == "lw x1, 12(x1)"
        assert show_rv(decode_rv(MRET_WORD)) == "mret"
        assert show_rv(decode_rv(0)) == ".word 0x00000000"


class TestAssembler:

    def test_li(self):
        assert split_li(0xf00) == (1, -256)
        assert [w for _, w in assemble("li ra, 4096")] == [0x000010b7]
        assert len(assemble("li ra, 0xf00")) == 2
        assert len(assemble("li t0, -5")) == 1

    def test_li_value(self, rv_interp):
        words = assemble("li ra, 0x12345fff\nli t0, 0xf00")
        state = make_state(memory=dict(words))
        final, _ = rv_interp.run_fde_cycle(state, len(words))
        assert final.registers['x1'] == 0x12345fff
        assert final.registers['x5'] == 0xf00

    def test_labels(self):
        assert assemble("loop:\n  j loop\n") == [(0, 0x0000006f)]
        words = assemble("start: nop\nla ra, data\n.org 0x20\ndata: .word 42\n")
        assert words[-1] == (0x20, 42)
        assert [a for a, _ in words[:3]] == [0, 4, 8]

    def test_image_words(self):
        assert parse_word(['42']) == 0x42
        assert parse_word(['0000002A']) == parse_word(['0x2a']) == 42
        for bad in (['2a', '2b'], ['-1'], ['100000000'], ['0xzz']):
            with pytest.raises(ValueError):
                parse_word(bad)

    def test_base(self):
        assert [a for a, _ in assemble("nop\nnop", base=0x48)] == [0x48, 0x4c]

    @pytest.mark.parametrize('text', ["frobnicate x1", "j nowhere", "addi x1, x99, 1",
                                      "csrrw x0, satp, x1", "a:\na:\n"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            assemble(text)


class TestPmp:

    femto = ((pmpcfg_of_byte(0x00), 88), (pmpcfg_of_byte(0x0f), 4096))

    def test_configuration_bytes(self):
        assert pmpcfg_of_byte(0x8f) == PmpCfg(L=True, A='TOR', X=True, W=True, R=True)
        assert pmpcfg_of_byte(0x09) == PmpCfg(L=False, A='TOR', X=False, W=False, R=True)
        assert pmpcfg_of_byte(0x18).A == 'OFF'
        assert byte_of_pmpcfg(pmpcfg_of_byte(0x8f)) == 0x8f

    def test_femtokernel_configuration(self):
        assert pmp_check(84, 4, 'Read', 'User', self.femto) == DENY
        assert pmp_check(88, 4, 'Read', 'User', self.femto) == ALLOW
        assert pmp_check(88, 4, 'Execute', 'User', self.femto) == ALLOW
        assert pmp_check(84, 4, 'Write', 'Machine', self.femto) == ALLOW
        assert pmp_check(4092, 4, 'Write', 'User', self.femto) == ALLOW
        assert pmp_check(4096, 4, 'Read', 'User', self.femto) == DENY

    def test_partial_overlap_falls_through(self):
        # straddling both entries: neither matches, so the mode decides
        assert pmp_check(86, 4, 'Read', 'User', self.femto) == DENY
        assert pmp_check(86, 4, 'Read', 'Machine', self.femto) == ALLOW
        assert pmp_check(4094, 4, 'Read', 'Machine', self.femto) == ALLOW
        assert pmp_check(4094, 4, 'Read', 'User', self.femto) == DENY

    def test_partial_entry_does_not_shadow_the_next(self):
        entries = ((pmpcfg_of_byte(0x08), 2), (pmpcfg_of_byte(0x0F), 64))
        assert pmp_check(0, 4, 'Read', 'Machine', entries) == ALLOW
        assert pmp_check(0, 4, 'Read', 'User', entries) == DENY
        assert pmp_check(0, 2, 'Read', 'User', entries) == DENY
        assert pmp_check(2, 2, 'Read', 'User', entries) == ALLOW
        for acc, priv in itertools.product(('Read', 'Write', 'Execute'), ('User', 'Machine')):
            assert byte_oracle(0, 4, acc, priv, entries) == pmp_check(0, 4, acc, priv, entries)

    def test_first_entry_wins(self):
        entries = ((pmpcfg_of_byte(0x08), 64), (pmpcfg_of_byte(0x0f), 128))
        assert pmp_check(0, 4, 'Read', 'User', entries) == DENY
        assert pmp_check(64, 4, 'Read', 'User', entries) == ALLOW

    def test_locked_entry_binds_machine_mode(self):
        entries = ((pmpcfg_of_byte(0x89), 64), (pmpcfg_of_byte(0), 0))
        assert pmp_check(0, 4, 'Read', 'Machine', entries) == ALLOW
        assert pmp_check(0, 4, 'Write', 'Machine', entries) == DENY

    def test_state_entries(self):
        state = make_state(registers={'pmp0cfg': pmpcfg_of_byte(0x0f), 'pmpaddr0': 64})
        assert entries_of(state) == ((pmpcfg_of_byte(0x0f), 64), (pmpcfg_of_byte(0), 0))

    def test_program_decision(self, rv_program, rv_interp):
        args = (84, 4, 'Read', 'User', self.femto)
        assert rv_interp.run_function(make_state(), 'pmp_check', args)[1] == Value(False)
        # entry 1 checked first reaches down to 0 and opens the kernel
        inverted = interpreter(rv_program.replace(pmp_check_decl(order=(1, 0))))
        assert inverted.run_function(make_state(), 'pmp_check', args)[1] == Value(True)

    @given(st.integers(0, 160), st.sampled_from([1, 2, 4]),
           st.sampled_from(['Read', 'Write', 'ReadWrite', 'Execute']),
           st.sampled_from(['User', 'Machine']),
           st.integers(0, 255), st.integers(0, 160), st.integers(0, 255), st.integers(0, 160))
    def test_agrees_with_byte_oracle(self, addr, width, acc, priv, byte0, addr0, byte1, addr1):
        entries = ((pmpcfg_of_byte(byte0), addr0), (pmpcfg_of_byte(byte1), addr1))
        assert pmp_check(addr, width, acc, priv, entries) == byte_oracle(addr, width, acc, priv,
                                                                         entries)

    @pytest.mark.slow
    def test_agrees_with_byte_oracle_exhaustively(self):
        bytes_ = (0x00, 0x08, 0x09, 0x0b, 0x0c, 0x0f, 0x88, 0x8f)
        for byte0, byte1, addr0, addr1 in itertools.product(bytes_, bytes_, (0, 8, 16), (8, 16, 24)):
            entries = ((pmpcfg_of_byte(byte0), addr0), (pmpcfg_of_byte(byte1), addr1))
            for addr, width, acc, priv in itertools.product(
                    range(25), (1, 2, 4), ('Read', 'Write', 'ReadWrite', 'Execute'),
                    ('User', 'Machine')):
                expected = byte_oracle(addr, width, acc, priv, entries)
                assert pmp_access(addr, width, entries, priv, acc) == (expected == ALLOW)


def _state(*lines, registers=None):
    return make_state(registers=registers, memory=dict(assemble('\n'.join(lines))))


USER_RWX = {'pmp0cfg': pmpcfg_of_byte(0x0f), 'pmpaddr0': 4096}


class TestExecution:

    def _run(self, rv_interp, state, steps):
        final, outcome = rv_interp.run_fde_cycle(state, steps)
        assert outcome == OutOfFuel(steps)
        return final.registers, final

    def test_arithmetic_and_store(self, rv_interp):
        regs, final = self._run(rv_interp, _state("addi x1, x0, 5", "sw x1, 100(x0)"), 2)
        assert regs['x1'] == 5
        assert regs['pc'] == 8
        assert final.read_word(100) == 5
        assert final.touched('write') == {100}

    def test_x0_is_hardwired(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("addi x0, x0, 5", "addi x1, x0, 1"), 2)
        assert 'x0' not in regs
        assert regs['x1'] == 1

    def test_negative_immediate_wraps(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("addi x1, x0, -1"), 1)
        assert regs['x1'] == 0xFFFFFFFF

    def test_jal_and_branch(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("jal x1, 8"), 1)
        assert (regs['pc'], regs['x1']) == (8, 4)
        regs, _ = self._run(rv_interp, _state("nop", "beq x0, x0, -4"), 2)
        assert regs['pc'] == 0

    def test_misaligned_load_traps(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("lw x1, 2(x0)", registers={'mtvec': 0x40}), 1)
        assert regs['mcause'] == 4
        assert (regs['pc'], regs['mepc']) == (0x40, 0)
        assert regs['cur_privilege'] == 'Machine'
        assert regs['mstatus'] == 'Machine'

    def test_user_fetch_without_pmp_traps(self, rv_interp):
        registers = {'cur_privilege': 'User', 'mtvec': 0x40}
        regs, _ = self._run(rv_interp, _state("nop", registers=registers), 1)
        assert regs['mcause'] == 1
        assert regs['mstatus'] == 'User'
        assert regs['cur_privilege'] == 'Machine'
        assert regs['pc'] == 0x40

    def test_ecall(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("ecall"), 1)
        assert regs['mcause'] == 11
        regs, _ = self._run(rv_interp, _state("ecall", registers={'cur_privilege': 'User', **USER_RWX}), 1)
        assert regs['mcause'] == 8

    @pytest.mark.parametrize('line', ["csrrw x0, mtvec, x1", "mret"])
    def test_machine_only_instructions_trap_in_user_mode(self, rv_interp, line):
        regs, _ = self._run(rv_interp, _state(line, registers={'cur_privilege': 'User', **USER_RWX}), 1)
        assert regs['mcause'] == 2
        assert regs['cur_privilege'] == 'Machine'

    def test_mret(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("mret", registers={'mepc': 0x20, 'mstatus': 'User'}), 1)
        assert (regs['pc'], regs['cur_privilege'], regs['mstatus']) == (0x20, 'User', 'User')

    def test_csr_swap(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("csrrw x5, mcause, x0", registers={'mcause': 7}), 1)
        assert (regs['x5'], regs['mcause']) == (7, 0)

    def test_mstatus_holds_previous_privilege(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("csrrw x2, mstatus, x1",
                                              registers={'mstatus': 'User', 'x1': 0x1800}), 1)
        assert regs['mstatus'] == 'Machine'
        assert regs['x2'] == 0

    def test_pmpcfg_write(self, rv_interp):
        regs, _ = self._run(rv_interp, _state("csrrw x0, pmpcfg0, x1",
                                              registers={'x1': 0x0f0f}), 1)
        assert regs['pmp0cfg'] == regs['pmp1cfg'] == pmpcfg_of_byte(0x0f)

    def test_locked_entry_ignores_writes(self, rv_interp):
        registers = {'pmp0cfg': pmpcfg_of_byte(0x8f), 'pmpaddr0': 0x100,
                     'pmp1cfg': pmpcfg_of_byte(0x0f), 'x1': 0x200}
        regs, _ = self._run(rv_interp, _state("csrrw x0, pmpcfg0, x0", "csrrw x0, pmpaddr0, x1",
                                              registers=registers), 2)
        assert regs['pmp0cfg'] == pmpcfg_of_byte(0x8f)
        assert regs['pmp1cfg'] == pmpcfg_of_byte(0)
        assert regs['pmpaddr0'] == 0x100
