
# internal packages
from contractile.errors import EncodingError
from contractile.isa.minimalcaps import (LEMMAS, PERMISSIONS, REGISTERS, Cap, Capability, Int,
                                         authority, decode_mc, encode_mc, grants_within, instr,
                                         make_state, show_instr, subperm, within_bounds)
from contractile.machine import Failure, OutOfFuel, Value

# external packages
import pytest
from hypothesis import given, strategies as st


registers = st.sampled_from(REGISTERS)
permissions = st.sampled_from(PERMISSIONS)
immediates = st.integers(-10 ** 6, 10 ** 6)

instructions = st.one_of(
    st.tuples(st.sampled_from(['Store', 'Load', 'AddI']), registers, registers, immediates).map(
        lambda p: instr(*p)),
    st.tuples(st.sampled_from(['Jalr', 'Move']), registers, registers).map(lambda p: instr(*p)),
    st.tuples(st.sampled_from(['Lea', 'Bnez']), registers, immediates).map(lambda p: instr(*p)),
    st.tuples(st.just('Restrict'), registers, permissions).map(lambda p: instr(*p)),
    st.tuples(st.sampled_from(['Subseg', 'Add']), registers, registers, registers).map(
        lambda p: instr(*p)),
    st.sampled_from([instr('Fail'), instr('Halt')]),
)

capabilities = st.builds(Capability, permissions, st.integers(-4, 40), st.integers(-4, 40),
                         st.integers(-4, 40))


class TestEncoding:

    @given(instructions)
    def test_round_trip(self, i):
        """decoding an encoded instruction gives it back"""
        assert decode_mc(encode_mc(i)) == i

    @pytest.mark.parametrize('word', [-1, 12, 13, 15, 6 | 4 << 8, 7 | 4 << 8, 8 | 9 << 8])
    def test_malformed_words_decode_to_fail(self, word):
        assert decode_mc(word) == instr('Fail')

    @pytest.mark.parametrize('bad', [
        instr('Store', 'R9', 'R0', 0),
        instr('Restrict', 'R0', 'X'),
        instr('Nope'),
    ])
    def test_unencodable(self, bad):
        with pytest.raises(EncodingError):
            encode_mc(bad)

    def test_show(self):
        assert show_instr(instr('Lea', 'R0', 10)) == "lea R0, 10"
        assert show_instr(instr('Halt')) == "halt"


class TestPermissions:

    def test_order(self):
        assert subperm('O', 'E')
        assert subperm('R', 'RW')
        assert not subperm('RW', 'R')
        assert not subperm('R', 'E')
        assert not subperm('E', 'RW')

    @given(permissions)
    def test_reflexive(self, p):
        assert subperm(p, p)

    @given(permissions, permissions)
    def test_antisymmetric(self, p, q):
        if subperm(p, q) and subperm(q, p):
            assert p == q

    @given(permissions, permissions, permissions)
    def test_transitive(self, p, q, r):
        if subperm(p, q) and subperm(q, r):
            assert subperm(p, r)


class TestCapabilities:

    def test_bounds(self):
        assert within_bounds(Capability('R', 0, 9, 9))
        assert not within_bounds(Capability('R', 0, 9, 10))

    def test_authority(self):
        assert authority(Int(3)) is None
        assert authority(Cap('RW', 1, 4, 2)) == ('RW', 1, 4)

    @given(capabilities)
    def test_grants_within_is_reflexive(self, c):
        assert grants_within(c, c)

    def test_grants_within(self):
        outer = Capability('RW', 0, 9, 0)
        assert grants_within(Capability('R', 2, 5, 0), outer)
        assert not grants_within(Capability('RW', 2, 12, 0), outer)
        assert not grants_within(Capability('E', 2, 5, 0), outer)
        assert grants_within(Capability('O', -5, 50, 0), outer)

    @given(capabilities, capabilities, permissions, st.integers(-4, 40), st.integers(-4, 40))
    def test_lemma_oracles(self, c, c2, p, lo, hi):
        """every lemma with an oracle holds on concrete values"""
        assert LEMMAS['move_cursor'].oracle(c, c2)
        assert LEMMAS['restrict_safe'].oracle(c, p)
        assert LEMMAS['subseg_safe'].oracle(c, lo, hi)
        assert LEMMAS['subperm_not_E'].oracle(c.perm, p)


def _program(*instructions, base=0):
    return {base + i: Int(encode_mc(x)) for i, x in enumerate(instructions)}


class TestExecution:

    def _run(self, mc_interp, memory, registers=None, fuel=50):
        return mc_interp.run_fde_cycle(make_state(registers=registers, memory=memory), fuel)

    def test_store(self, mc_interp):
        final, outcome = self._run(mc_interp, _program(
            instr('AddI', 'R1', 'R1', 7), instr('Lea', 'R0', 10), instr('Store', 'R1', 'R0', 0),
            instr('Halt')))
        assert outcome == Value(None)
        assert final.read_word(10) == Int(7)
        assert final.registers['R0'] == Cap('RW', 0, 1023, 10)
        assert final.touched('write') == {10}

    def test_load(self, mc_interp):
        memory = _program(instr('Load', 'R2', 'R0', 20), instr('Halt'))
        memory[20] = Cap('R', 3, 4, 3)
        final, outcome = self._run(mc_interp, memory)
        assert outcome == Value(None)
        assert final.registers['R2'] == Cap('R', 3, 4, 3)

    def test_store_through_read_only_capability(self, mc_interp):
        _, outcome = self._run(mc_interp, _program(
            instr('Restrict', 'R0', 'R'), instr('Store', 'R1', 'R0', 5), instr('Halt')))
        assert outcome == Failure("store: no write permission")

    def test_restrict_cannot_grow(self, mc_interp):
        _, outcome = self._run(mc_interp, _program(instr('Restrict', 'R0', 'E')))
        assert outcome == Failure("restrict: permission would grow")

    def test_load_out_of_bounds(self, mc_interp):
        _, outcome = self._run(mc_interp, _program(instr('Lea', 'R0', 2000), instr('Load', 'R1', 'R0', 0)))
        assert outcome == Failure("bounds")

    def test_subseg(self, mc_interp):
        final, outcome = self._run(mc_interp, _program(
            instr('AddI', 'R1', 'R1', 5), instr('AddI', 'R2', 'R2', 9),
            instr('Subseg', 'R0', 'R1', 'R2'), instr('Halt')))
        assert outcome == Value(None)
        assert final.registers['R0'] == Cap('RW', 5, 9, 0)

    def test_subseg_cannot_grow(self, mc_interp):
        _, outcome = self._run(mc_interp, _program(
            instr('AddI', 'R2', 'R2', 5000), instr('Subseg', 'R0', 'R1', 'R2')))
        assert outcome == Failure("subseg: range would grow")

    def test_jump_to_enter_capability(self, mc_interp):
        memory = _program(instr('Jalr', 'R2', 'R1'))
        memory.update(_program(instr('Halt'), base=20))
        final, outcome = self._run(mc_interp, memory, registers={'R1': Cap('E', 20, 21, 20)})
        assert outcome == Value(None)
        assert final.registers['pc'] == Cap('R', 20, 21, 20)
        assert final.registers['R2'] == Cap('RW', 0, 1023, 1)

    def test_lea_on_enter_capability(self, mc_interp):
        _, outcome = self._run(mc_interp, _program(instr('Lea', 'R1', 1)),
                               registers={'R1': Cap('E', 20, 21, 20)})
        assert outcome == Failure("lea: enter capabilities are opaque")

    def test_fail_instruction(self, mc_interp):
        _, outcome = self._run(mc_interp, _program(instr('Fail')))
        assert outcome == Failure("fail instruction")

    def test_capability_in_code(self, mc_interp):
        _, outcome = self._run(mc_interp, {0: Cap('R', 0, 0, 0)})
        assert outcome == Failure("fetched word is a capability")

    def test_branch_loops_until_fuel(self, mc_interp):
        _, outcome = self._run(mc_interp, _program(instr('AddI', 'R1', 'R1', 1), instr('Bnez', 'R1', 0)),
                               fuel=20)
        assert outcome == OutOfFuel(20)
